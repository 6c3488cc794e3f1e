#include <doctest.h>

#include "nbl/errors.hpp"
#include "nbl/monoid.hpp"

using namespace nbl;

namespace {

ClassId cls(const PermGroup& g, const char* cycles) {
  return g.classes().class_of(g.index_of(Perm::from_cycles(cycles, g.degree())));
}

Component comp(const PermGroup& g, std::vector<std::string> t, Base base = Base::Projective,
               Equivalence eq = Equivalence::Marked) {
  EnumerationSpec s;
  s.base = base;
  s.equivalence = eq;
  return orbit_of(canonicalize(NielsenTuple::from_cycles(g, t), eq), s);
}

}  // namespace

TEST_CASE("concatenation examples") {
  const PermGroup s3 = parse_group_spec("S3");
  const Component x = comp(s3, {"(1 2)", "(1 2)"});
  const Component y = comp(s3, {"(1 3)", "(1 3)"});
  CHECK(concat(x, y).same_component(comp(s3, {"(1 2)", "(1 2)", "(1 3)", "(1 3)"})));
  const Component unit = unit_component(s3, Base::Projective, Equivalence::Marked);
  CHECK(unit.r == 0);
  CHECK(concat(unit, x).same_component(x));
  CHECK(concat(x, unit).same_component(x));

  const Component a = comp(s3, {"(1 2)"}, Base::Affine);
  const Component b = comp(s3, {"(1 3)"}, Base::Affine);
  CHECK(concat(a, b).same_component(comp(s3, {"(2 3)", "(1 2)"}, Base::Affine)));
  CHECK(commutation_check(a, b).holds);
  CHECK(commutation_check(unit_component(s3, Base::Affine, Equivalence::Marked), b).holds);
}

TEST_CASE("concatenation preconditions") {
  const PermGroup s3 = parse_group_spec("S3");
  const PermGroup a4 = parse_group_spec("A4");
  const Component x = comp(s3, {"(1 2)", "(1 2)"});
  CHECK_THROWS_AS(concat(x, comp(s3, {"(1 2)"}, Base::Affine)), PreconditionError);
  CHECK_THROWS_AS(concat(x, comp(a4, {"(1 2 3)", "(1 3 2)"})), PreconditionError);
  // unmarked needs connected inputs
  const Component u = comp(s3, {"(1 2)", "(1 2)"}, Base::Projective, Equivalence::Unmarked);
  CHECK_THROWS_AS(concat(u, u), PreconditionError);
  const Component v = comp(s3, {"(1 2)", "(1 3)", "(2 3)", "(1 3)"}, Base::Projective, Equivalence::Unmarked);
  const Component vv = concat(v, v);
  CHECK(vv.r == 8);
  CHECK(vv.equivalence == Equivalence::Unmarked);
}

TEST_CASE("conjugate components") {
  const PermGroup s3 = parse_group_spec("S3");
  const Component x = comp(s3, {"(1 2)", "(1 2)"});
  const Elem t13 = s3.index_of(Perm::from_cycles("(1 3)", 3));
  CHECK(conjugate_component(x, PermGroup::identity()).same_component(x));
  const Component y = conjugate_component(x, t13);
  CHECK(y.same_component(comp(s3, {"(2 3)", "(2 3)"})));
  CHECK(y.orbit_size == x.orbit_size);
  CHECK(y.ici == x.ici);
  const Component conn = comp(s3, {"(1 2)", "(1 3)", "(2 3)", "(1 3)"});
  for (Elem g = 0; g < s3.order(); ++g) CHECK(conjugate_component(conn, g).same_component(conn));
  const Component un = comp(s3, {"(1 2)", "(1 2)"}, Base::Projective, Equivalence::Unmarked);
  CHECK(conjugate_component(un, t13).same_component(un));
}

TEST_CASE("projective commutation over S3 at r = 2") {
  const PermGroup s3 = parse_group_spec("S3");
  const auto d = decompose_components(s3, 2, EnumerationSpec{});
  ComponentResolver resolver(s3, Base::Projective, Equivalence::Marked);
  for (const auto& x : d.components) {
    for (const auto& y : d.components) {
      const CommutationReport rep = commutation_check(x, y, resolver);
      CHECK(rep.holds);
      CHECK(rep.lhs.same_component(concat(y, x, resolver)));
    }
  }
}

TEST_CASE("twist sets") {
  const PermGroup s3 = parse_group_spec("S3");
  const Component x = comp(s3, {"(1 2 3)", "(1 3 2)"});
  const Component y = comp(s3, {"(1 2)", "(1 2)"});
  TwistReport rep = hm_twist_set(x, y);
  CHECK(rep.h_order == 3);
  CHECK(rep.k_order == 2);
  CHECK(rep.join_is_product);
  CHECK(rep.singleton);
  CHECK(rep.twists.size() == 1);
  CHECK(rep.product.same_component(concat(x, y)));

  const Component conn = comp(s3, {"(1 2)", "(1 3)", "(2 3)", "(1 3)"});
  CHECK(hm_twist_set(conn, conn).singleton);
  const Component unit = unit_component(s3, Base::Projective, Equivalence::Marked);
  rep = hm_twist_set(unit, y);
  CHECK(rep.singleton);
  CHECK(rep.twists.front().same_component(y));

  // two C2's: <H,K> = S3 but HK has 4 elements
  const Component z = comp(s3, {"(1 3)", "(1 3)"});
  rep = hm_twist_set(y, z);
  CHECK_FALSE(rep.join_is_product);
  CHECK(rep.join_order == 6);
}

TEST_CASE("splitting numbers") {
  const PermGroup s3 = parse_group_spec("S3");
  const ClassId c2 = cls(s3, "(1 2)");
  const ClassId c3 = cls(s3, "(1 2 3)");
  const std::vector<Elem> t12{s3.index_of(Perm::from_cycles("(1 2)", 3))};
  const std::vector<Elem> r123{s3.index_of(Perm::from_cycles("(1 2 3)", 3))};
  CHECK(splitting_number(s3, closure(s3, t12), {c2}).omega == 0);
  const SplittingDatum a3 = splitting_number(s3, closure(s3, r123), {c3});
  CHECK(a3.omega == 1);
  REQUIRE(a3.breakdown.size() == 1);
  CHECK(a3.breakdown.front().pieces.size() == 2);
  for (const char* spec : {"S3", "A4", "D5", "S4"}) {
    const PermGroup g = parse_group_spec(spec);
    std::vector<ClassId> all;
    for (ClassId c = 1; c < g.classes().size(); ++c) all.push_back(c);
    const std::size_t top = g.subgroup_catalog().classes().size() - 1;
    CHECK(splitting_number(g, top, all).omega == 0);
  }

  CHECK(is_nonsplitting(s3, {c2}).holds);
  const NonSplitReport bad = is_nonsplitting(s3, {c3});
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness);
  CHECK(bad.witness->subgroup_order == 3);
  const PermGroup d5 = parse_group_spec("D5");
  CHECK(is_nonsplitting(d5, {cls(d5, "(2 5)(3 4)")}).holds);
}

TEST_CASE("hf counts") {
  const PermGroup s3 = parse_group_spec("S3");
  const ClassId c3 = cls(s3, "(1 2 3)");
  const ClassId c2 = cls(s3, "(1 2)");
  const std::vector<Elem> rho{s3.index_of(Perm::from_cycles("(1 2 3)", 3))};
  const std::vector<Elem> tau{s3.index_of(Perm::from_cycles("(1 2)", 3))};
  CHECK(hf_count(s3, rho, {{c3, 1}}, 6).count == 3);
  CHECK(hf_count(s3, rho, {{c3, 1}}, 9).count == 4);
  for (std::size_t r = 2; r <= 12; r += 2) CHECK(hf_count(s3, tau, {{c2, 1}}, r).count == 1);
  CHECK(hf_count(s3, rho, {{c3, 1}}, 6).tuple_length == 6);
  CHECK(hf_count(s3, rho, {{c3, 2}}, 3).tuple_length == 6);
  CHECK_THROWS_AS(hf_count(s3, rho, {{c3, 0}}, 3), PreconditionError);
  // the strict reading gives each H-class r*xi entries: bounded for A3
  const HfResult strict = hf_count(s3, rho, {{c3, 1}}, 3, true);
  CHECK(strict.tuple_length == 6);
  CHECK(strict.count == 1);
}
