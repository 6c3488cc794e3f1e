#include <doctest.h>

#include <functional>
#include <set>

#include "nbl/errors.hpp"
#include "nbl/io.hpp"
#include "nbl/lifting.hpp"
#include "nbl/monoid.hpp"

using namespace nbl;

namespace {

ClassId cls(const PermGroup& g, const char* cycles) {
  return g.classes().class_of(g.index_of(Perm::from_cycles(cycles, g.degree())));
}

std::string rejection(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ExtensionRejected& e) {
    return e.invariant();
  }
  return "accepted";
}

}  // namespace

TEST_CASE("identity extension") {
  const PermGroup s3 = parse_group_spec("S3");
  const ClassId c2 = cls(s3, "(1 2)");
  const CentralExtension e = CentralExtension::identity(s3, {c2});
  CHECK(e.kernel().size() == 1);
  for (Elem g : s3.classes()[c2].members) CHECK(e.lift(g) == g);
  const NielsenTuple t = NielsenTuple::from_cycles(s3, {"(1 2)", "(1 3)", "(2 3)", "(1 3)"});
  CHECK(lifting_invariant(t, e).element == PermGroup::identity());
  CHECK(lifting_invariant(t, e).degree == 4);
  const NielsenTuple u = NielsenTuple::from_cycles(s3, {"(1 2 3)", "(1 3 2)"});
  CHECK_THROWS_AS(lifting_invariant(u, e), PreconditionError);
  const NielsenTuple other = NielsenTuple::from_cycles(parse_group_spec("A4"), {"(1 2 3)", "(1 3 2)"});
  CHECK_THROWS_AS(lifting_invariant(other, e), PreconditionError);
}

TEST_CASE("Q8 over the Klein group is not admissible") {
  const PermGroup v4 = parse_group_spec("perm(4; (1 2)(3 4), (1 3)(2 4))");
  // Q8 regular on 8 points: i, j
  const std::string q8 = "perm(8; (1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6))";
  const std::vector<std::pair<std::string, std::string>> proj{{"(1 2 3 4)(5 6 7 8)", "(1 2)(3 4)"},
                                                              {"(1 5 3 7)(2 8 4 6)", "(1 3)(2 4)"}};
  CHECK(parse_group_spec(q8).order() == 8);
  CHECK(rejection([&] {
          load_central_extension(v4, q8, proj, {"(1 2)(3 4)", "(1 3)(2 4)"},
                                 {{"(1 2)(3 4)", "(1 2 3 4)(5 6 7 8)"}, {"(1 3)(2 4)", "(1 5 3 7)(2 8 4 6)"}});
        }) == "not-c-admissible");
}

TEST_CASE("other rejections") {
  const PermGroup c2 = parse_group_spec("C2");
  const PermGroup s3 = parse_group_spec("S3");
  // C4 -> C2 is fine; C2 -> C4 cannot be onto
  CHECK(rejection([&] {
          load_central_extension(parse_group_spec("C4"), "C2", {{"(1 2)", "(1 3)(2 4)"}}, {"(1 3)(2 4)"});
        }) == "not-surjective");
  CHECK(rejection([&] { load_central_extension(c2, "C4", {{"(1 2 3 4)", "(1 2)"}}, {"(1 2)"}); }) == "accepted");
  // S3 -> C2 by sign is onto with kernel A3, which is not central
  CHECK(rejection([&] {
          load_central_extension(c2, "S3", {{"(1 2)", "(1 2)"}, {"(1 2 3)", "()"}}, {"(1 2)"});
        }) == "kernel-not-central");
  // images that do not respect relations
  CHECK(rejection([&] {
          load_central_extension(c2, "C3", {{"(1 2 3)", "(1 2)"}}, {"(1 2)"});
        }) == "not-homomorphism");
  // a lift that projects elsewhere
  CHECK(rejection([&] {
          load_central_extension(c2, "C4", {{"(1 2 3 4)", "(1 2)"}}, {"(1 2)"}, {{"(1 2)", "(1 3)(2 4)"}});
        }) == "bad-lift");
  (void)s3;
}

TEST_CASE("binary tetrahedral cover of A4") {
  const CentralExtension e = builtin_a4_extension();
  CHECK(e.cover().order() == 24);
  CHECK(e.kernel().size() == 2);
  const PermGroup& a4 = e.base();
  CHECK(e.classes().size() == 2);
  // lifts of one class: one-class scope is accepted too
  const CentralExtension one = builtin_a4_extension(std::vector<ClassId>{cls(a4, "(2 3 4)")});
  CHECK(one.classes().size() == 1);

  // a lift of each 3-cycle projects back to it
  for (ClassId c : e.classes()) {
    for (Elem g : a4.classes()[c].members) {
      REQUIRE(e.lift(g));
      CHECK(e.project(*e.lift(g)) == g);
    }
  }
  CHECK_FALSE(e.lift(a4.index_of(Perm::from_cycles("(1 2)(3 4)", 4))));

  EnumerationSpec s;
  s.classes = e.classes();
  for (std::size_t r = 3; r <= 5; ++r) {
    for (const Component& c : decompose_components(a4, r, s).components) {
      const LiftValue v = lifting_invariant(c.canonical_rep, e);
      CHECK(e.project(v.element) == PermGroup::identity());
      for (const NielsenTuple& m : orbit_elements(c.canonical_rep, s)) CHECK(lifting_invariant(m, e) == v);
    }
  }
}

TEST_CASE("components with the same group and profile separated by the lift") {
  const CentralExtension e = builtin_a4_extension();
  const PermGroup& a4 = e.base();
  EnumerationSpec s;
  s.classes = e.classes();
  s.cover = CoverMode::galois();
  const auto d = decompose_components(a4, 6, s);
  std::map<ICIProfile, std::set<Elem>> values;
  std::map<ICIProfile, std::size_t> count;
  for (const auto& c : d.components) {
    values[c.ici].insert(lifting_invariant(c.canonical_rep, e).element);
    ++count[c.ici];
  }
  bool separated = false;
  for (const auto& [p, vs] : values) {
    CHECK(vs.size() <= count[p]);
    if (count[p] > 1 && vs.size() == count[p]) separated = true;
  }
  CHECK(separated);
}

TEST_CASE("cpfv probe") {
  const PermGroup s3 = parse_group_spec("S3");
  const ClassId c2 = cls(s3, "(1 2)");
  const CentralExtension id = CentralExtension::identity(s3, {c2});
  EnumerationSpec s;
  s.cover = CoverMode::galois();
  const CpfvReport rep = cpfv_probe(s3, id, s, 4, 8);
  CHECK(rep.complete);
  for (const auto& [r, n] : rep.collisions) CHECK(n == 0);
  for (const auto& row : rep.rows) CHECK(row.components.size() == 1);
  REQUIRE(rep.threshold);
  CHECK(*rep.threshold == 4);

  const CentralExtension e = builtin_a4_extension();
  OrbitOptions one, two;
  two.threads = 2;
  const std::string a = cpfv_to_json("A4", e, cpfv_probe(e.base(), e, EnumerationSpec{}, 4, 6, one)).dump();
  const std::string b = cpfv_to_json("A4", e, cpfv_probe(e.base(), e, EnumerationSpec{}, 4, 6, two)).dump();
  CHECK(a == b);
}

TEST_CASE("lift choice shifts each profile by one central constant") {
  const CentralExtension e = builtin_a4_extension();
  const PermGroup& a4 = e.base();
  const PermGroup& cover = e.cover();
  const ClassId c0 = e.classes().front();
  const std::string rep = a4.element(a4.classes().representative(c0)).cycles();
  const Elem other = cover.mul(e.representative_lift(c0), e.kernel().back());
  std::vector<std::string> reps;
  for (ClassId c : e.classes()) reps.push_back(a4.element(a4.classes().representative(c)).cycles());
  const CentralExtension alt =
      load_central_extension(a4, "perm(8; (1 6 2 3)(4 7 8 5), (1 4 7)(2 8 5))",
                             {{"(1 6 2 3)(4 7 8 5)", "(1 2)(3 4)"}, {"(1 4 7)(2 8 5)", "(1 3 4)"}}, reps,
                             {{rep, cover.element(other).cycles()}});
  EnumerationSpec s;
  s.classes = e.classes();
  std::map<ICIProfile, std::set<Elem>> ratios;
  for (std::size_t r = 3; r <= 6; ++r) {
    for (const auto& c : decompose_components(a4, r, s).components) {
      const Elem v = lifting_invariant(c.canonical_rep, e).element;
      const Elem w = lifting_invariant(c.canonical_rep, alt).element;
      ratios[c.ici].insert(cover.mul(w, cover.inv(v)));
    }
  }
  for (const auto& [p, rs] : ratios) CHECK(rs.size() == 1);
}

TEST_CASE("rationality") {
  const PermGroup s3 = parse_group_spec("S3");
  const PermGroup c3 = parse_group_spec("C3");
  ICIProfile p;
  p.counts[cls(s3, "(1 2 3)")] = 2;
  CHECK(is_globally_rational(s3, p).rational);
  ICIProfile q;
  q.counts[cls(c3, "(1 2 3)")] = 2;
  const RationalityResult r = is_globally_rational(c3, q);
  CHECK_FALSE(r.rational);
  CHECK(r.witness_m == 2LL);
  CHECK(r.moved_class == cls(c3, "(1 2 3)"));
  CHECK(is_globally_rational(c3, ICIProfile{}).rational);
  // both classes of C3 together are rational
  q.counts[cls(c3, "(1 3 2)")] = 2;
  CHECK(is_globally_rational(c3, q).rational);
}
