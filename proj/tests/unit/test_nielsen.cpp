#include <doctest.h>

#include <cmath>
#include <random>

#include "nbl/errors.hpp"
#include "nbl/nielsen.hpp"
#include "nbl/oracle.hpp"

using namespace nbl;

namespace {

ClassId cls(const PermGroup& g, const char* cycles) {
  return g.classes().class_of(g.index_of(Perm::from_cycles(cycles, g.degree())));
}

std::vector<std::vector<Elem>> enumerate(const PermGroup& g, std::size_t r, const EnumerationSpec& s) {
  std::vector<std::vector<Elem>> out;
  enumerate_nielsen(g, r, s, [&](std::span<const Elem> t) { out.emplace_back(t.begin(), t.end()); });
  return out;
}

std::vector<std::vector<Elem>> to_lib(const std::vector<oracle::Tuple>& ts) {
  std::vector<std::vector<Elem>> out;
  for (const auto& t : ts) out.emplace_back(t.begin(), t.end());
  return out;
}

}  // namespace

TEST_CASE("Nielsen set examples") {
  const PermGroup s3 = parse_group_spec("S3");
  EnumerationSpec s;
  CHECK(enumerate(s3, 2, s).size() == 5);
  s.classes = std::vector<ClassId>{cls(s3, "(1 2)")};
  CHECK(enumerate(s3, 3, s).empty());
  s.equivalence = Equivalence::Unmarked;
  CHECK(enumerate(s3, 3, s).empty());
  s.equivalence = Equivalence::Marked;
  s.cover = CoverMode::galois();
  CHECK(enumerate(s3, 4, s).size() == 24);
  // r = 0: the empty tuple
  CHECK(enumerate(s3, 0, EnumerationSpec{}).size() == 1);
  EnumerationSpec affine;
  affine.base = Base::Affine;
  CHECK(enumerate(s3, 0, affine).size() == 1);
  CHECK(enumerate(s3, 2, affine).size() == 25);
}

TEST_CASE("tuples reject the identity") {
  const PermGroup s3 = parse_group_spec("S3");
  CHECK_THROWS_AS(NielsenTuple(s3, {0, 1}), PreconditionError);
  CHECK_THROWS_AS(NielsenTuple(s3, {1, 99}), PreconditionError);
}

TEST_CASE("enumeration matches a naive filter over G^r") {
  std::size_t configs = 0;
  for (const char* spec : {"S3", "C4", "A4", "D5", "S4", "C3"}) {
    const PermGroup g = parse_group_spec(spec);
    const oracle::Group og = oracle::make_group(g.degree(), g.generators());
    for (std::size_t r = 0; std::pow(double(g.order()), double(r)) <= 1e6; ++r) {
      for (Base base : {Base::Projective, Base::Affine}) {
        for (Equivalence eq : {Equivalence::Marked, Equivalence::Unmarked}) {
          for (int cover = 0; cover < 3; ++cover) {
            for (int classes = 0; classes < 3; ++classes) {
              EnumerationSpec s;
              s.base = base;
              s.equivalence = eq;
              oracle::Filter f;
              f.projective = base == Base::Projective;
              f.unmarked = eq == Equivalence::Unmarked;
              if (cover == 1) {
                s.cover = CoverMode::galois();
                f.cover = oracle::Filter::Cover::Galois;
              } else if (cover == 2) {
                s.cover = CoverMode::transitive();
                f.cover = oracle::Filter::Cover::Transitive;
              }
              const ClassId last = static_cast<ClassId>(g.classes().size() - 1);
              if (classes == 1) {
                s.classes = std::vector<ClassId>{1, last};
                f.classes = std::vector<std::size_t>{1, last};
              } else if (classes == 2 && r > 0) {
                // exact profile: r - 1 entries from class 1, one from the last
                ICIProfile p;
                p.counts[1] = r - 1;
                p.counts[last] += 1;
                s.classes = p;
                f.profile = std::map<std::size_t, std::size_t>(p.counts.begin(), p.counts.end());
              }
              CAPTURE(spec);
              CAPTURE(r);
              CAPTURE(configs);
              const auto got = enumerate(g, r, s);
              CHECK(got == to_lib(oracle::naive_nielsen(og, r, f)));
              for (const auto& t : got) {
                CHECK(satisfies(g, t, s));
                if (base == Base::Projective) CHECK(g.product(t) == PermGroup::identity());
                CHECK(std::find(t.begin(), t.end(), PermGroup::identity()) == t.end());
              }
              ++configs;
            }
          }
        }
      }
    }
  }
  MESSAGE(configs << " configurations");
}

TEST_CASE("galois cover for a proper subgroup") {
  const PermGroup s3 = parse_group_spec("S3");
  const Elem rho = s3.index_of(Perm::from_cycles("(1 2 3)", 3));
  EnumerationSpec s;
  s.cover = CoverMode::galois({rho});
  // (rho, rho, rho), (rho^2, rho^2, rho^2), and (rho, rho^2) style pairs at r=2
  for (const auto& t : enumerate(s3, 3, s)) CHECK(closure(s3, t).size() == 3);
  CHECK(enumerate(s3, 2, s).size() == 2);
  CHECK(enumerate(s3, 3, s).size() == 2);
}

TEST_CASE("budgets stop enumeration") {
  const PermGroup s4 = parse_group_spec("S4");
  Budget b;
  b.max_tuples = 100;
  std::size_t seen = 0;
  const EnumerationStats st = enumerate_nielsen(s4, 6, EnumerationSpec{}, [&](auto) { ++seen; }, b);
  CHECK_FALSE(st.complete);
  CHECK(seen <= 100);
  CHECK_THROWS_AS(collect_nielsen(s4, 6, EnumerationSpec{}, b), BudgetExceeded);
}

TEST_CASE("canonical forms") {
  const PermGroup s3 = parse_group_spec("S3");
  const NielsenTuple t = NielsenTuple::from_cycles(s3, {"(1 3 2)", "(1 2 3)"});
  CHECK(canonicalize(t, Equivalence::Marked) == t);
  CHECK(canonicalize(t, Equivalence::Unmarked).cycles() == std::vector<std::string>{"(1 2 3)", "(1 3 2)"});
  const NielsenTuple u = NielsenTuple::from_cycles(s3, {"(1 2)", "(1 2)"});
  CHECK(canonicalize(u, Equivalence::Unmarked).cycles() == std::vector<std::string>{"(2 3)", "(2 3)"});

  std::mt19937_64 rng(7);
  for (const char* spec : {"S3", "A4", "D5", "S4"}) {
    const PermGroup g = parse_group_spec(spec);
    std::uniform_int_distribution<int> pick(1, static_cast<int>(g.order()) - 1);
    for (int n = 0; n < 300; ++n) {
      std::vector<Elem> e(5);
      for (auto& x : e) x = static_cast<Elem>(pick(rng));
      const NielsenTuple x(g, e);
      const NielsenTuple c = canonicalize(x, Equivalence::Unmarked);
      CHECK(canonicalize(c, Equivalence::Unmarked) == c);
      CHECK(c <= x);
      for (Elem gamma = 0; gamma < g.order(); ++gamma) {
        CHECK(canonicalize(x.conjugated(gamma), Equivalence::Unmarked) == c);
      }
    }
  }
}

TEST_CASE("inertia profiles") {
  const PermGroup s3 = parse_group_spec("S3");
  const NielsenTuple t = NielsenTuple::from_cycles(s3, {"(1 2)", "(1 3)", "(2 3)", "(1 3)"});
  CHECK(ici(t).counts == std::map<ClassId, std::size_t>{{cls(s3, "(1 2)"), 4}});
  CHECK(ici(t).total() == 4);
  const NielsenTuple u = NielsenTuple::from_cycles(s3, {"(1 2 3)", "(1 3 2)"});
  CHECK(ici(u).counts == std::map<ClassId, std::size_t>{{cls(s3, "(1 2 3)"), 2}});
  const PermGroup a3 = subgroup_generated(s3, {Perm::from_cycles("(1 2 3)", 3)});
  const ICIProfile refined = ici(u, a3);
  CHECK(refined.counts.size() == 2);
  CHECK(refined.total() == 2);
  CHECK_THROWS_AS(ici(t, a3), PreconditionError);
  CHECK(ici(s3, std::span<const Elem>{}).counts.empty());

  // permutation and conjugation invariance
  const PermGroup a4 = parse_group_spec("A4");
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(1, 11);
  for (int n = 0; n < 200; ++n) {
    std::vector<Elem> e(6);
    for (auto& x : e) x = static_cast<Elem>(pick(rng));
    const ICIProfile p = ici(a4, e);
    auto shuffled = e;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(ici(a4, shuffled) == p);
    CHECK(ici(NielsenTuple(a4, e).conjugated(static_cast<Elem>(pick(rng)))) == p);
  }
}
