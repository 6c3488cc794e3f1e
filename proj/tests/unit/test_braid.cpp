#include <doctest.h>

#include "nbl/braid.hpp"
#include "nbl/errors.hpp"
#include "nbl/oracle.hpp"

using namespace nbl;

namespace {

ClassId cls(const PermGroup& g, const char* cycles) {
  return g.classes().class_of(g.index_of(Perm::from_cycles(cycles, g.degree())));
}

std::vector<std::string> q(const PermGroup& g, std::vector<std::string> t, std::size_t i,
                           Direction d = Direction::Forward) {
  return apply_braid(NielsenTuple::from_cycles(g, t), i, d).cycles();
}

}  // namespace

TEST_CASE("braid moves") {
  const PermGroup s3 = parse_group_spec("S3");
  using V = std::vector<std::string>;
  CHECK(q(s3, {"(1 2)", "(1 2)"}, 1) == V{"(1 2)", "(1 2)"});
  CHECK(q(s3, {"(1 2 3)", "(1 3 2)"}, 1) == V{"(1 3 2)", "(1 2 3)"});
  CHECK(q(s3, {"(1 2)", "(1 3)", "(2 3)", "(1 3)"}, 2) == V{"(1 2)", "(1 2)", "(1 3)", "(1 3)"});
  CHECK(q(s3, {"(1 2)", "(1 2)", "(1 3)", "(1 3)"}, 2, Direction::Inverse) == V{"(1 2)", "(1 3)", "(2 3)", "(1 3)"});
  const NielsenTuple t = NielsenTuple::from_cycles(s3, {"(1 2)", "(1 3)"});
  CHECK_THROWS_AS(apply_braid(t, 0), PreconditionError);
  CHECK_THROWS_AS(apply_braid(t, 2), PreconditionError);
}

TEST_CASE("orbit examples") {
  const PermGroup s3 = parse_group_spec("S3");
  EnumerationSpec s;
  CHECK(orbit_of(NielsenTuple::from_cycles(s3, {"(1 2)", "(1 2)"}), s).orbit_size == 1);
  CHECK(orbit_of(NielsenTuple::from_cycles(s3, {"(1 2 3)", "(1 3 2)"}), s).orbit_size == 2);
  s.classes = std::vector<ClassId>{cls(s3, "(1 2)")};
  const Component c = orbit_of(NielsenTuple::from_cycles(s3, {"(1 2)", "(1 3)", "(2 3)", "(1 3)"}), s);
  CHECK(c.orbit_size == 24);
  CHECK(c.group_order == 6);
  CHECK(c.group_class_id.has_value());
  // the representative is the orbit minimum and reproduces the orbit
  const auto members = orbit_elements(c.canonical_rep, s);
  CHECK(members.size() == 24);
  CHECK(members.front() == c.canonical_rep);
  for (const auto& m : members) CHECK(orbit_of(m, s).same_component(c));
}

TEST_CASE("decompositions") {
  const PermGroup s3 = parse_group_spec("S3");
  EnumerationSpec s;
  const Decomposition d = decompose_components(s3, 2, s);
  REQUIRE(d.components.size() == 4);
  std::vector<std::uint64_t> sizes;
  for (const auto& c : d.components) sizes.push_back(c.orbit_size);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::uint64_t>{1, 1, 1, 2});

  s.cover = CoverMode::galois();
  CHECK(decompose_components(s3, 2, s).components.empty());
  s.classes = std::vector<ClassId>{cls(s3, "(1 2)")};
  const Decomposition one = decompose_components(s3, 4, s);
  REQUIRE(one.components.size() == 1);
  CHECK(one.components.front().orbit_size == 24);
}

TEST_CASE("thread count does not change results") {
  for (const char* spec : {"A4", "S4"}) {
    const PermGroup g = parse_group_spec(spec);
    EnumerationSpec s;
    s.cover = CoverMode::galois();
    for (Equivalence eq : {Equivalence::Marked, Equivalence::Unmarked}) {
      s.equivalence = eq;
      OrbitOptions one, four;
      four.threads = 4;
      const auto a = decompose_components(g, 4, s, one);
      const auto b = decompose_components(g, 4, s, four);
      REQUIRE(a.components.size() == b.components.size());
      for (std::size_t i = 0; i < a.components.size(); ++i) {
        CHECK(a.components[i].same_component(b.components[i]));
        CHECK(a.components[i].orbit_size == b.components[i].orbit_size);
      }
    }
  }
}

TEST_CASE("orbit budget") {
  const PermGroup s4 = parse_group_spec("S4");
  OrbitOptions o;
  o.budget.max_orbit = 10;
  EnumerationSpec s;
  const NielsenTuple t = NielsenTuple::from_cycles(s4, {"(1 2)", "(2 3)", "(3 4)", "(3 4)", "(2 3)", "(1 2)"});
  CHECK_THROWS_AS(orbit_of(t, s, o), BudgetExceeded);
  const Decomposition d = decompose_components(s4, 6, s, o);
  CHECK_FALSE(d.complete);
  CHECK(d.phase == "orbit");
}

TEST_CASE("invariant checking during BFS") {
  const PermGroup a4 = parse_group_spec("A4");
  OrbitOptions o;
  o.check_invariants = true;
  EnumerationSpec s;
  const auto d = decompose_components(a4, 4, s, o);
  CHECK(d.complete);
  for (const auto& c : d.components) {
    const Component again = orbit_of(c.canonical_rep, s);
    CHECK(again.orbit_size == c.orbit_size);
    CHECK(again.ici == c.ici);
  }
}

TEST_CASE("period detection") {
  auto series = [](std::vector<std::uint64_t> v, long long from = 0) {
    std::map<long long, std::uint64_t> m;
    for (std::size_t i = 0; i < v.size(); ++i) m[from + static_cast<long long>(i)] = v[i];
    return detect_period(m);
  };
  auto p = series({4, 4, 4, 4});
  REQUIRE(p);
  CHECK(p->period == 1);
  CHECK(p->onset == 0);
  p = series({0, 1, 0, 1, 0, 1});
  REQUIRE(p);
  CHECK(p->period == 2);
  p = series({5, 7, 1, 2, 3, 1, 2, 3, 1, 2, 3}, 10);
  REQUIRE(p);
  CHECK(p->period == 3);
  CHECK(p->onset == 12);
  CHECK_FALSE(series({1, 2, 3, 4, 5, 6}));
  CHECK_FALSE(series({1, 2}));
}

TEST_CASE("S3 transposition series") {
  const PermGroup s3 = parse_group_spec("S3");
  EnumerationSpec s;
  s.cover = CoverMode::galois();
  s.classes = std::vector<ClassId>{cls(s3, "(1 2)")};
  const CountSeries cs = count_series(s3, s, 3, 10);
  std::vector<std::uint64_t> counts;
  for (const auto& [r, n] : cs.points) counts.push_back(n);
  CHECK(counts == std::vector<std::uint64_t>{0, 1, 0, 1, 0, 1, 0, 1});
  REQUIRE(cs.period);
  CHECK(cs.period->period == 2);
  for (const auto& [r, n] : cs.points) {
    CHECK(decompose_components(s3, static_cast<std::size_t>(r), s).components.size() == n);
  }
}

TEST_CASE("component counts against the dense oracle") {
  const PermGroup d5 = parse_group_spec("D5");
  const oracle::Group og = oracle::make_group(d5.degree(), d5.generators());
  const ClassId inv = cls(d5, "(2 5)(3 4)");
  std::vector<std::size_t> alphabet(d5.classes()[inv].members.begin(), d5.classes()[inv].members.end());
  EnumerationSpec s;
  s.cover = CoverMode::galois();
  s.classes = std::vector<ClassId>{inv};
  for (std::size_t r = 2; r <= 8; ++r) {
    CAPTURE(r);
    CHECK(decompose_components(d5, r, s).components.size() == oracle::dense_component_count(og, alphabet, r));
  }
}
