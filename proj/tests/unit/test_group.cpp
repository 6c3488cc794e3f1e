#include <doctest.h>

#include <algorithm>
#include <set>

#include "nbl/errors.hpp"
#include "nbl/group.hpp"
#include "nbl/oracle.hpp"
#include "nbl/subgroups.hpp"

using namespace nbl;

namespace {

std::vector<std::size_t> class_sizes(const PermGroup& g) {
  std::vector<std::size_t> out;
  for (const auto& c : g.classes().classes()) out.push_back(c.members.size());
  return out;
}

Elem el(const PermGroup& g, const char* cycles) { return g.index_of(Perm::from_cycles(cycles, g.degree())); }

}  // namespace

TEST_CASE("perm products apply left to right") {
  const Perm a = Perm::from_cycles("(1 2)", 3);
  const Perm b = Perm::from_cycles("(1 3)", 3);
  // 1 -> 2 -> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
  CHECK((a * b).cycles() == "(1 2 3)");
  CHECK((b * a).cycles() == "(1 3 2)");
  CHECK(Perm::from_cycles("( 1 , 2 )( 3 4 )", 4).cycles() == "(1 2)(3 4)");
  CHECK(Perm::identity(4).cycles() == "()");
  CHECK_THROWS_AS(Perm::from_cycles("(1 5)", 4), DegenerateInput);
  CHECK_THROWS_AS(Perm::from_cycles("(1 2 1)", 4), ParseError);
}

TEST_CASE("group specs") {
  CHECK(parse_group_spec("S3").order() == 6);
  CHECK(parse_group_spec("S3").degree() == 3);
  CHECK(parse_group_spec("D5").order() == 10);
  CHECK(parse_group_spec("perm(4; (1 2 3), (1 2)(3 4))").order() == 12);
  CHECK(parse_group_spec("A5").order() == 60);
  CHECK(parse_group_spec("C7").order() == 7);
  CHECK(parse_group_spec("GDih(3,3)").order() == 18);
  CHECK(parse_group_spec(" perm( 3 ; (1 2) ) ").order() == 2);
  CHECK(normalize_group_spec(" perm( 3 ; (1 2) ) ") == "perm(3;(1 2))");
  CHECK(same_group(parse_group_spec("A4"), parse_group_spec("perm(4; (1 2 3), (1 2)(3 4))")));

  CHECK_THROWS_AS(parse_group_spec("Q3"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("perm(4; (1 2"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("perm(3; (1 4))"), DegenerateInput);
  CHECK_THROWS_AS(parse_group_spec("S8"), CapExceeded);
  CHECK(parse_group_spec("S8", 50000).order() == 40320);
}

TEST_CASE("conjugacy classes") {
  CHECK(class_sizes(parse_group_spec("S3")) == std::vector<std::size_t>{1, 3, 2});
  CHECK(class_sizes(parse_group_spec("C4")) == std::vector<std::size_t>{1, 1, 1, 1});
  auto a4 = class_sizes(parse_group_spec("A4"));
  std::sort(a4.begin(), a4.end());
  CHECK(a4 == std::vector<std::size_t>{1, 3, 4, 4});
}

TEST_CASE("class tables agree with brute-force conjugation") {
  for (const char* spec : {"S3", "C4", "A4", "D5", "S4", "GDih(3,3)", "A5"}) {
    CAPTURE(spec);
    const PermGroup g = parse_group_spec(spec);
    const oracle::Group og = oracle::make_group(g.degree(), g.generators());
    REQUIRE(og.order() == g.order());
    const ClassTable& t = g.classes();
    std::size_t covered = 0;
    Elem prev = 0;
    for (ClassId c = 0; c < t.size(); ++c) {
      const auto& members = t[c].members;
      covered += members.size();
      CHECK(t.representative(c) == members.front());
      if (c) CHECK(t.representative(c) > prev);
      prev = t.representative(c);
      // same element order, so og's index equals ours
      std::vector<std::size_t> want = og.classes[og.class_of[members.front()]];
      CHECK(std::vector<std::size_t>(members.begin(), members.end()) == want);
    }
    CHECK(covered == g.order());
    // closure of the cached element set
    for (Elem a = 0; a < g.order(); ++a) {
      for (Elem b = 0; b < g.order(); ++b) {
        CHECK_MESSAGE(g.contains(g.element(a) * g.element(b)), "closure");
        CHECK(t.class_of(g.conj(a, b)) == t.class_of(a));
      }
    }
  }
}

TEST_CASE("class powers") {
  const PermGroup s3 = parse_group_spec("S3");
  const ClassId c3 = s3.classes().class_of(el(s3, "(1 2 3)"));
  CHECK(class_power(s3, c3, 5) == c3);
  CHECK(class_power(s3, c3, 3) == 0);
  const PermGroup c3g = parse_group_spec("C3");
  const ClassId sigma = c3g.classes().class_of(el(c3g, "(1 2 3)"));
  const ClassId sigma2 = c3g.classes().class_of(el(c3g, "(1 3 2)"));
  CHECK(class_power(c3g, sigma, 2) == sigma2);
  for (const char* spec : {"S4", "A4", "D5", "C6"}) {
    const PermGroup g = parse_group_spec(spec);
    for (ClassId c = 0; c < g.classes().size(); ++c) {
      CHECK(class_power(g, c, 1) == c);
      for (long long m = 2; m <= static_cast<long long>(g.exponent()); ++m) {
        for (Elem x : g.classes()[c].members) {
          CHECK(g.classes().class_of(g.pow(x, m)) == class_power(g, c, m));
        }
      }
    }
  }
}

TEST_CASE("generated subgroups") {
  const PermGroup s3 = parse_group_spec("S3");
  CHECK(subgroup_generated(s3, {Perm::from_cycles("(1 2)", 3)}).order() == 2);
  CHECK(subgroup_generated(s3, {Perm::from_cycles("(1 2 3)", 3), Perm::from_cycles("(1 2)", 3)}).order() == 6);
  CHECK(subgroup_generated(s3, {}).order() == 1);
  const PermGroup c3 = parse_group_spec("C3");
  CHECK_THROWS_AS(subgroup_generated(c3, {Perm::from_cycles("(1 2)", 3)}), ForeignElement);
  // idempotence
  const std::vector<Elem> gens{el(s3, "(1 2 3)")};
  const ElementSet h = closure(s3, gens);
  CHECK(closure(s3, h.elements()) == h);
}

TEST_CASE("subgroup catalog sizes") {
  auto orders = [](const char* spec) {
    const PermGroup g = parse_group_spec(spec);
    std::vector<std::size_t> out;
    for (const auto& s : g.subgroup_catalog().classes()) out.push_back(s.order);
    return out;
  };
  CHECK(orders("S3") == std::vector<std::size_t>{1, 2, 3, 6});
  CHECK(parse_group_spec("S3").subgroup_catalog().total_subgroups() == 6);
  CHECK(orders("C4") == std::vector<std::size_t>{1, 2, 4});
  CHECK(orders("A4") == std::vector<std::size_t>{1, 2, 3, 4, 12});
  CHECK(orders("S4").size() == 11);
  CHECK(parse_group_spec("S4").subgroup_catalog().total_subgroups() == 30);
  CHECK(orders("A5").size() == 9);
  CHECK(parse_group_spec("A5").subgroup_catalog().total_subgroups() == 59);
}

TEST_CASE("every two-generated subgroup is conjugate to exactly one catalog entry") {
  for (const char* spec : {"S3", "A4", "D5", "S4", "GDih(3,3)", "A5"}) {
    CAPTURE(spec);
    const PermGroup g = parse_group_spec(spec);
    const oracle::Group og = oracle::make_group(g.degree(), g.generators());
    const auto& catalog = g.subgroup_catalog();
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t a = 0; a < og.order(); ++a) {
      for (std::size_t b = a; b < og.order(); ++b) {
        auto members = oracle::generated(og, {a, b});
        if (!seen.insert(members).second) continue;
        std::size_t matches = 0, which = 0;
        for (const SubgroupClass& s : catalog.classes()) {
          if (s.order != members.size()) continue;
          for (std::size_t x = 0; x < og.order(); ++x) {
            std::vector<std::size_t> conj;
            for (std::size_t m : members) conj.push_back(og.conj(m, x));
            std::sort(conj.begin(), conj.end());
            bool same = true;
            for (std::size_t i = 0; i < conj.size() && same; ++i) same = s.members.contains(static_cast<Elem>(conj[i]));
            if (same) {
              ++matches;
              which = s.id;
              break;
            }
          }
        }
        CHECK(matches == 1);
        ElementSet set(g.order());
        for (std::size_t m : members) set.insert(static_cast<Elem>(m));
        CHECK(catalog.class_of(set) == which);
      }
    }
  }
}
