#include <doctest.h>

#include <filesystem>

#include "nbl/errors.hpp"
#include "nbl/io.hpp"

using namespace nbl;

TEST_CASE("component records round-trip") {
  const PermGroup s3 = parse_group_spec("S3");
  EnumerationSpec s;
  s.cover = CoverMode::galois();
  const auto d = decompose_components(s3, 4, s);
  for (const Component& c : d.components) {
    const json j = component_to_json("S3", c);
    CHECK(j.at("id").get<std::string>().size() == 16);
    CHECK(j.at("orbit_size") == c.orbit_size);
    const Component back = component_from_json(s3, j);
    CHECK(back.same_component(c));
    CHECK(back.orbit_size == c.orbit_size);
    // the id ignores whitespace in the spec but not the group
    CHECK(component_id(" S3 ", c) == component_id("S3", c));
    CHECK(component_id("perm(3; (1 2 3), (1 2))", c) != component_id("S3", c));
    json tampered = j;
    tampered["id"] = "0000000000000000";
    CHECK_THROWS_AS(component_from_json(s3, tampered), PreconditionError);
  }
}

TEST_CASE("tuple and profile JSON") {
  const PermGroup a4 = parse_group_spec("A4");
  const NielsenTuple t = NielsenTuple::from_cycles(a4, {"(1 2 3)", "(1 3 2)", "(1 2)(3 4)"});
  const json j = tuple_to_json(a4, t.entries());
  CHECK(j == json::array({"(1 2 3)", "(1 3 2)", "(1 2)(3 4)"}));
  CHECK(tuple_from_json(a4, j) == t.entry_vector());
  const ICIProfile p = ici(t);
  CHECK(ici_from_json(a4, ici_to_json(a4, p)) == p);
}

TEST_CASE("series CSV") {
  CountSeries s;
  s.points = {{3, 0}, {4, 1}, {5, 0}, {6, 1}, {7, 0}, {8, 1}};
  s.period = PeriodInfo{2, 3};
  const std::string csv = series_to_csv(s);
  CHECK(csv.rfind("r,count\n3,0\n4,1\n", 0) == 0);
  CHECK(csv.find("# period 2 from r = 3") != std::string::npos);
  s.period.reset();
  s.truncated = true;
  s.truncated_at = 9;
  s.reason = "tuple budget";
  CHECK(series_to_csv(s).find("# truncated at r = 9") != std::string::npos);
}

TEST_CASE("extension files") {
  const PermGroup a4 = parse_group_spec("A4");
  const json j = json::parse(R"J({
    "cover": "perm(8; (1 6 2 3)(4 7 8 5), (1 4 7)(2 8 5))",
    "projection": [["(1 6 2 3)(4 7 8 5)", "(1 2)(3 4)"], ["(1 4 7)(2 8 5)", "(1 3 4)"]],
    "classes": ["(2 3 4)"]
  })J");
  const CentralExtension e = extension_from_json(a4, j);
  CHECK(e.kernel().size() == 2);
  CHECK(e.classes().size() == 1);
  CHECK_THROWS_AS(extension_from_json(a4, json::parse(R"({"cover": "C2"})")), ParseError);
}

TEST_CASE("result cache") {
  const auto root = std::filesystem::temp_directory_path() / "nbl-unit-cache";
  std::filesystem::remove_all(root);
  ResultCache cache(root);
  const std::string digest = sha256_hex("request");
  CHECK(digest.size() == 64);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_FALSE(cache.get(digest));
  cache.put(digest, "payload\n");
  CHECK(cache.get(digest) == std::string("payload\n"));
  CHECK(cache.path_for(digest).parent_path().filename() == digest.substr(0, 2));
  cache.put(digest, "second\n");
  CHECK(cache.get(digest) == std::string("second\n"));
  // no temporaries left behind
  std::size_t files = 0;
  for (const auto& f : std::filesystem::recursive_directory_iterator(root)) files += f.is_regular_file();
  CHECK(files == 1);
  std::filesystem::remove_all(root);
}
