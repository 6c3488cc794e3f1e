#include "nbl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "nbl/errors.hpp"
#include "nbl/io.hpp"
#include "nbl/lifting.hpp"
#include "nbl/monoid.hpp"
#include "nbl/oracle.hpp"

namespace nbl {

void SuiteResult::expect(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++failures;
  passed = false;
  if (failed.size() < 20) failed.push_back(what);
}

namespace {

ClassId class_of_cycles(const PermGroup& g, std::string_view c) {
  return g.classes().class_of(g.index_of(Perm::from_cycles(c, g.degree())));
}

std::string show(const PermGroup& g, std::span<const Elem> t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += g.element(t[i]).cycles();
  }
  return out + ")";
}

OrbitOptions big_options(const VerifyOptions& o) {
  OrbitOptions opt;
  opt.threads = o.threads;
  opt.budget.max_tuples = 400'000'000;
  opt.budget.max_orbit = 400'000'000;
  opt.budget.timeout = o.timeout;
  return opt;
}

oracle::Group oracle_group(const PermGroup& g) {
  oracle::Group og = oracle::make_group(g.degree(), g.generators());
  if (og.order() != g.order()) throw Error("oracle and library disagree on the order of " + g.name());
  for (std::size_t i = 0; i < og.order(); ++i) {
    if (og.elems[i] != g.element(static_cast<Elem>(i))) {
      throw Error("oracle and library order the elements of " + g.name() + " differently");
    }
  }
  return og;
}

oracle::Tuple to_oracle(std::span<const Elem> t) { return {t.begin(), t.end()}; }

std::vector<Elem> from_oracle(const oracle::Tuple& t) {
  std::vector<Elem> out;
  for (std::size_t e : t) out.push_back(static_cast<Elem>(e));
  return out;
}

std::vector<std::size_t> class_alphabet(const PermGroup& g, const std::vector<ClassId>& classes) {
  std::vector<std::size_t> out;
  for (ClassId c : classes) {
    for (Elem e : g.classes()[c].members) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string spec_label(const EnumerationSpec& s) {
  std::string out = to_string(s.base) + "/" + to_string(s.equivalence) + "/";
  switch (s.cover.kind) {
    case CoverMode::Kind::Any: out += "any"; break;
    case CoverMode::Kind::Galois: out += "galois"; break;
    case CoverMode::Kind::Transitive: out += "transitive"; break;
  }
  return out;
}

// Library partition (atlas) against the oracle's tuple list and labels.
void compare_partition(const PermGroup& g, const ComponentAtlas& atlas,
                       const std::vector<oracle::Tuple>& tuples, const std::vector<std::size_t>& labels,
                       SuiteResult& res, const std::string& ctx) {
  const auto& lib = atlas.labels();
  res.expect(lib.size() == tuples.size(), ctx + ": library has " + std::to_string(lib.size()) +
                                              " tuples, oracle " + std::to_string(tuples.size()));
  if (lib.size() != tuples.size()) return;
  std::map<std::size_t, std::size_t> lib_to_oracle, oracle_to_lib;
  std::map<std::size_t, std::uint64_t> block_size;
  bool same_set = true, consistent = true;
  std::size_t i = 0;
  for (const auto& [t, k] : lib) {
    if (from_oracle(tuples[i]) != t) same_set = false;
    const std::size_t lab = labels[i];
    ++block_size[lab];
    auto [a, fresh_a] = lib_to_oracle.emplace(k, lab);
    auto [b, fresh_b] = oracle_to_lib.emplace(lab, k);
    if (a->second != lab || b->second != k) consistent = false;
    ++i;
  }
  res.expect(same_set, ctx + ": tuple sets differ");
  res.expect(consistent, ctx + ": partitions differ");
  res.expect(atlas.components().size() == oracle::block_count(labels),
             ctx + ": " + std::to_string(atlas.components().size()) + " components vs " +
                 std::to_string(oracle::block_count(labels)) + " oracle blocks");
  if (!consistent) return;
  for (std::size_t k = 0; k < atlas.components().size(); ++k) {
    const Component& c = atlas.components()[k];
    const std::size_t lab = lib_to_oracle.at(k);
    res.expect(c.canonical_rep.entry_vector() == from_oracle(tuples[lab]),
               ctx + ": representative " + show(g, c.canonical_rep.entries()) + " is not the block minimum");
    res.expect(c.orbit_size == block_size.at(lab), ctx + ": orbit size of " +
                                                       show(g, c.canonical_rep.entries()));
  }
}

// ---------------------------------------------------------------------------

void suite_braid_relations(const VerifyOptions& o, SuiteResult& res) {
  const std::vector<std::string> groups =
      o.groups.empty() ? std::vector<std::string>{"S3", "A4", "D5"} : o.groups;
  const std::size_t r = o.r.value_or(5);
  const std::size_t per = o.samples ? o.samples : 4000;
  std::mt19937_64 rng(o.seed);
  std::uint64_t sampled = 0;
  for (const std::string& spec : groups) {
    const PermGroup g = parse_group_spec(spec);
    if (g.order() < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(1, g.order() - 1);
    for (std::size_t n = 0; n < per; ++n) {
      std::vector<Elem> entries(r);
      for (Elem& e : entries) e = static_cast<Elem>(pick(rng));
      const NielsenTuple t(g, entries);
      ++sampled;
      const ElementSet h = closure(g, t.entries());
      const ICIProfile prof = ici(t);
      for (std::size_t i = 1; i < r; ++i) {
        const NielsenTuple f = apply_braid(t, i, Direction::Forward);
        const NielsenTuple b = apply_braid(t, i, Direction::Inverse);
        res.expect(apply_braid(f, i, Direction::Inverse) == t, spec + ": Q_i^-1 Q_i != 1 on " + show(g, t.entries()));
        res.expect(apply_braid(b, i, Direction::Forward) == t, spec + ": Q_i Q_i^-1 != 1 on " + show(g, t.entries()));
        res.expect(f.product() == t.product(), spec + ": product changed");
        res.expect(ici(f) == prof, spec + ": inertia profile changed");
        res.expect(closure(g, f.entries()) == h, spec + ": generated subgroup changed");
      }
      for (std::size_t i = 1; i + 2 <= r; ++i) {
        const auto q = [&](const NielsenTuple& x, std::size_t k) { return apply_braid(x, k, Direction::Forward); };
        res.expect(q(q(q(t, i), i + 1), i) == q(q(q(t, i + 1), i), i + 1),
                   spec + ": braid relation fails at i=" + std::to_string(i) + " on " + show(g, t.entries()));
      }
      for (std::size_t i = 1; i < r; ++i) {
        for (std::size_t j = i + 2; j < r; ++j) {
          const NielsenTuple a = apply_braid(apply_braid(t, i), j);
          const NielsenTuple b = apply_braid(apply_braid(t, j), i);
          res.expect(a == b, spec + ": far commutation fails for " + std::to_string(i) + "," + std::to_string(j));
        }
      }
    }
  }
  res.note("sampled " + std::to_string(sampled) + " tuples of length " + std::to_string(r));
}

void suite_orbit_oracle(const VerifyOptions& o, SuiteResult& res) {
  const std::vector<std::string> groups =
      o.groups.empty() ? std::vector<std::string>{"S3", "C4", "A4", "D5", "S4"} : o.groups;
  constexpr double kSpace = 2.0e5;          // naive pass over G^r
  constexpr std::size_t kMaxTuples = 100000;
  const OrbitOptions opts = big_options(o);
  std::size_t configs = 0;
  for (const std::string& spec : groups) {
    const PermGroup g = parse_group_spec(spec);
    const oracle::Group og = oracle_group(g);
    const ClassId first = g.classes().class_of(1);  // class of the smallest nontrivial element
    for (std::size_t r = 0; r <= o.r.value_or(64); ++r) {
      if (std::pow(static_cast<double>(g.order()), static_cast<double>(r)) > kSpace) break;
      for (Base base : {Base::Projective, Base::Affine}) {
        oracle::Filter pre;
        pre.projective = base == Base::Projective;
        const auto candidates = oracle::naive_nielsen(og, r, pre);
        for (Equivalence eq : {Equivalence::Marked, Equivalence::Unmarked}) {
          for (auto kind : {CoverMode::Kind::Any, CoverMode::Kind::Galois, CoverMode::Kind::Transitive}) {
            for (bool restrict : {false, true}) {
              oracle::Filter f = pre;
              f.unmarked = eq == Equivalence::Unmarked;
              EnumerationSpec s;
              s.base = base;
              s.equivalence = eq;
              s.cover.kind = kind;
              f.cover = kind == CoverMode::Kind::Any      ? oracle::Filter::Cover::Any
                        : kind == CoverMode::Kind::Galois ? oracle::Filter::Cover::Galois
                                                          : oracle::Filter::Cover::Transitive;
              if (restrict) {
                s.classes = std::vector<ClassId>{first};
                f.classes = std::vector<std::size_t>{first};
              }
              const auto tuples = oracle::filter_tuples(og, candidates, f);
              if (tuples.size() > kMaxTuples) continue;
              const std::string ctx = spec + " r=" + std::to_string(r) + " " + spec_label(s) +
                                      (restrict ? " one class" : " all classes");
              const ComponentAtlas atlas = ComponentAtlas::build(g, r, s, opts);
              compare_partition(g, atlas, tuples, oracle::union_find_labels(og, tuples, f.unmarked), res, ctx);
              for (const Component& c : atlas.components()) {
                const Component again = orbit_of(c.canonical_rep, s, opts);
                res.expect(again.same_component(c) && again.orbit_size == c.orbit_size,
                           ctx + ": orbit_of does not reproduce " + show(g, c.canonical_rep.entries()));
              }
              ++configs;
            }
          }
        }
      }
    }
  }
  res.note(std::to_string(configs) + " configurations compared");
}

void suite_inner_braids(const VerifyOptions& o, SuiteResult& res) {
  std::vector<std::pair<std::string, std::size_t>> cases{{"S3", 6}, {"A4", 4}};
  if (!o.groups.empty()) {
    cases.clear();
    for (const auto& s : o.groups) cases.emplace_back(s, o.r.value_or(4));
  } else if (o.r) {
    for (auto& c : cases) c.second = std::min(c.second, *o.r);
  }
  const OrbitOptions opts = big_options(o);
  std::uint64_t tuples = 0;
  for (const auto& [spec, rmax] : cases) {
    const PermGroup g = parse_group_spec(spec);
    // covers of the line: in the affine setting conjugation moves the
    // product, which braids preserve
    for (std::size_t r = 1; r <= rmax; ++r) {
      for (Base base : {Base::Projective}) {
        EnumerationSpec s;
        s.base = base;
        s.cover = CoverMode::galois();
        const ComponentAtlas atlas = ComponentAtlas::build(g, r, s, opts);
        std::vector<Elem> buf(r);
        for (const auto& [t, k] : atlas.labels()) {
          ++tuples;
          for (std::size_t gamma = 0; gamma < g.order(); ++gamma) {
            for (std::size_t i = 0; i < r; ++i) buf[i] = g.conj(t[i], static_cast<Elem>(gamma));
            const auto where = atlas.component_of(buf);
            res.expect(where && *where == k, spec + " " + to_string(base) + ": conjugate of " + show(g, t) +
                                                 " by " + g.element(static_cast<Elem>(gamma)).cycles() +
                                                 " left its orbit");
          }
        }
      }
    }
  }
  res.note(std::to_string(tuples) + " connected tuples, every conjugate checked");
}

std::vector<Component> components_up_to(const PermGroup& g, Base base, std::size_t rmax,
                                        const ClassConstraint& classes, const OrbitOptions& opts) {
  std::vector<Component> out{unit_component(g, base, Equivalence::Marked)};
  EnumerationSpec s;
  s.base = base;
  s.classes = classes;
  for (std::size_t r = 1; r <= rmax; ++r) {
    Decomposition d = decompose_components(g, r, s, opts);
    if (!d.complete) throw BudgetExceeded(d.phase, d.reason, d.tuples);
    for (Component& c : d.components) out.push_back(std::move(c));
  }
  return out;
}

void suite_monoid(const VerifyOptions& o, SuiteResult& res) {
  const std::string spec = o.groups.empty() ? "S3" : o.groups.front();
  const PermGroup g = parse_group_spec(spec);
  const OrbitOptions opts = big_options(o);
  const std::size_t proj_max = o.r.value_or(4);
  for (auto [base, rmax] : {std::pair{Base::Affine, std::size_t{2}}, std::pair{Base::Projective, proj_max}}) {
    ComponentResolver resolver(g, base, Equivalence::Marked, opts);
    const auto comps = components_up_to(g, base, rmax, AnyClass{}, opts);
    const Component unit = comps.front();
    const std::string mode = spec + " " + to_string(base);
    for (const Component& x : comps) {
      res.expect(concat(unit, x, resolver).same_component(x), mode + ": unit . x != x");
      res.expect(concat(x, unit, resolver).same_component(x), mode + ": x . unit != x");
    }
    for (const Component& x : comps) {
      for (const Component& y : comps) {
        const std::string ctx = mode + ": " + show(g, x.canonical_rep.entries()) + " . " +
                                show(g, y.canonical_rep.entries());
        const Component xy = concat(x, y, resolver);
        res.expect(xy.r == x.r + y.r, ctx + " degree");
        ICIProfile sum = x.ici;
        sum += y.ici;
        res.expect(xy.ici == sum, ctx + " inertia profile");
        std::vector<Elem> both = x.canonical_rep.entry_vector();
        both.insert(both.end(), y.canonical_rep.entries().begin(), y.canonical_rep.entries().end());
        res.expect(closure(g, xy.canonical_rep.entries()) == closure(g, both), ctx + " group");
        res.expect(commutation_check(x, y, resolver).holds, ctx + " commutation");
      }
    }
    std::vector<const Component*> small;
    for (const Component& c : comps) {
      if (c.r <= 2) small.push_back(&c);
    }
    for (const Component* x : small) {
      for (const Component* y : small) {
        for (const Component* z : small) {
          const Component left = concat(concat(*x, *y, resolver), *z, resolver);
          const Component right = concat(*x, concat(*y, *z, resolver), resolver);
          res.expect(left.same_component(right), mode + ": associativity fails");
        }
      }
    }
    res.note(mode + ": " + std::to_string(comps.size()) + " components, " +
             std::to_string(comps.size() * comps.size()) + " pairs, " +
             std::to_string(small.size() * small.size() * small.size()) + " triples");
  }

  if (o.groups.empty()) {
    // sampled commutation over A4
    const PermGroup a4 = parse_group_spec("A4");
    ComponentResolver resolver(a4, Base::Projective, Equivalence::Marked, opts);
    const auto comps = components_up_to(a4, Base::Projective, 3, AnyClass{}, opts);
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::size_t> pick(0, comps.size() - 1);
    const std::size_t n = o.samples ? o.samples : 60;
    for (std::size_t k = 0; k < n; ++k) {
      const Component& x = comps[pick(rng)];
      const Component& y = comps[pick(rng)];
      res.expect(commutation_check(x, y, resolver).holds, "A4 p1: commutation fails for " +
                                                              show(a4, x.canonical_rep.entries()) + " . " +
                                                              show(a4, y.canonical_rep.entries()));
    }
    res.note("A4 p1: " + std::to_string(n) + " sampled pairs among " + std::to_string(comps.size()) + " components");
  }
}

void suite_twist(const VerifyOptions& o, SuiteResult& res) {
  const std::string spec = o.groups.empty() ? "S3" : o.groups.front();
  const PermGroup g = parse_group_spec(spec);
  const OrbitOptions opts = big_options(o);
  if (o.groups.empty()) {
    ComponentResolver resolver(g, Base::Projective, Equivalence::Marked, opts);
    EnumerationSpec s;
    const Component x = orbit_of(NielsenTuple::from_cycles(g, {"(1 2 3)", "(1 3 2)"}), s, opts);
    const Component y = orbit_of(NielsenTuple::from_cycles(g, {"(1 2)", "(1 2)"}), s, opts);
    const TwistReport rep = hm_twist_set(x, y, resolver);
    res.expect(rep.h_order == 3 && rep.k_order == 2 && rep.join_order == 6, "S3 instance: wrong group orders");
    res.expect(rep.join_is_product, "S3 instance: <H,K> = HK should hold");
    res.expect(rep.singleton, "S3 instance: twist set has " + std::to_string(rep.twists.size()) + " members");
  }
  std::size_t pairs = 0, hypothesis = 0, larger = 0;
  // projective only, as above: affine conjugates differ by their product
  for (auto [base, rmax] : {std::pair{Base::Projective, o.r.value_or(4)}}) {
    ComponentResolver resolver(g, base, Equivalence::Marked, opts);
    const auto comps = components_up_to(g, base, rmax, AnyClass{}, opts);
    for (const Component& x : comps) {
      for (const Component& y : comps) {
        const TwistReport rep = hm_twist_set(x, y, resolver);
        ++pairs;
        if (rep.join_is_product) {
          ++hypothesis;
          res.expect(rep.singleton, spec + " " + to_string(base) + ": <H,K> = HK but " +
                                        std::to_string(rep.twists.size()) + " twists for " +
                                        show(g, x.canonical_rep.entries()) + " . " +
                                        show(g, y.canonical_rep.entries()));
        } else if (rep.twists.size() > 1) {
          ++larger;
        }
      }
    }
  }
  res.note(std::to_string(pairs) + " pairs swept, " + std::to_string(hypothesis) +
           " with <H,K> = HK; " + std::to_string(larger) + " pairs outside the hypothesis have several twists");
}

void suite_clebsch(const VerifyOptions& o, SuiteResult& res) {
  std::vector<std::pair<std::size_t, std::size_t>> cases{{3, 4}, {3, 6}, {4, 6}, {5, 6}};
  if (!o.groups.empty()) {
    cases.clear();
    for (const auto& s : o.groups) {
      const PermGroup g = parse_group_spec(s);
      cases.emplace_back(g.degree(), o.r.value_or(6));
    }
  }
  const OrbitOptions opts = big_options(o);
  for (auto [d, r] : cases) {
    const PermGroup g = parse_group_spec("S" + std::to_string(d));
    const ClassId trans = class_of_cycles(g, "(1 2)");
    for (Equivalence eq : {Equivalence::Marked, Equivalence::Unmarked}) {
      EnumerationSpec s;
      s.equivalence = eq;
      s.cover = CoverMode::transitive();
      s.classes = std::vector<ClassId>{trans};
      const Decomposition dec = decompose_components(g, r, s, opts);
      res.expect(dec.complete && dec.components.size() == 1,
                 "(d,r)=(" + std::to_string(d) + "," + std::to_string(r) + ") " + to_string(eq) + ": " +
                     std::to_string(dec.components.size()) + " components");
      if (eq == Equivalence::Marked) {
        const oracle::Group og = oracle_group(g);
        oracle::Filter f;
        f.cover = oracle::Filter::Cover::Transitive;
        const auto tuples = oracle::filter_tuples(og, oracle::alphabet_tuples(class_alphabet(g, {trans}), r), f);
        const auto blocks = oracle::block_count(oracle::union_find_labels(og, tuples, false));
        res.expect(blocks == 1 && tuples.size() == dec.tuples,
                   "(d,r)=(" + std::to_string(d) + "," + std::to_string(r) + "): oracle finds " +
                       std::to_string(blocks) + " blocks over " + std::to_string(tuples.size()) + " tuples");
        std::string line = "S" + std::to_string(d) + " r=" + std::to_string(r) + ": " +
                           std::to_string(dec.tuples) + " transitive tuples, " +
                           std::to_string(dec.components.size()) + " orbit(s)";
        if (r < 2 * d - 2) line += "; r < 2d-2, so no connected cover exists (genus would be negative)";
        res.note(line);
      }
    }
  }
}

void suite_generating_tail(const VerifyOptions& o, SuiteResult& res) {
  const PermGroup g = parse_group_spec(o.groups.empty() ? "S3" : o.groups.front());
  const std::size_t r = o.r.value_or(8);
  const ClassId trans = class_of_cycles(g, "(1 2)");
  const Elem g0 = g.index_of(Perm::from_cycles("(1 2)", g.degree()));
  EnumerationSpec s;
  s.base = Base::Affine;
  s.cover = CoverMode::galois();
  s.classes = std::vector<ClassId>{trans};
  const OrbitOptions opts = big_options(o);
  const ComponentAtlas atlas = ComponentAtlas::build(g, r, s, opts);

  std::vector<bool> witnessed(atlas.components().size(), false);
  for (const auto& [t, k] : atlas.labels()) {
    if (witnessed[k] || t.front() != g0) continue;
    if (closure(g, std::span<const Elem>(t).subspan(1)).size() == g.order()) witnessed[k] = true;
  }
  for (std::size_t k = 0; k < witnessed.size(); ++k) {
    res.expect(witnessed[k], "orbit of " + show(g, atlas.components()[k].canonical_rep.entries()) +
                                 " has no member (g, g'_2, ...) with the tail generating");
  }

  const oracle::Group og = oracle_group(g);
  oracle::Filter f;
  f.projective = false;
  f.cover = oracle::Filter::Cover::Galois;
  const auto all = oracle::alphabet_tuples(class_alphabet(g, {trans}), r);
  const auto tuples = oracle::filter_tuples(og, all, f);
  compare_partition(g, atlas, tuples, oracle::union_find_labels(og, tuples, false), res, "generating-tail");
  res.note(std::to_string(all.size()) + " tuples, " + std::to_string(tuples.size()) + " generating, " +
           std::to_string(atlas.components().size()) + " orbits, each with a witness");
}

void suite_stabilization(const VerifyOptions& o, SuiteResult& res) {
  std::vector<std::pair<std::string, std::string>> cases{{"D5", "(2 5)(3 4)"}, {"S3", "(1 2)"}};
  if (!o.groups.empty()) {
    cases.clear();
    for (const auto& s : o.groups) {
      const PermGroup g = parse_group_spec(s);
      // the class of the smallest involution
      for (Elem e = 1; e < g.order(); ++e) {
        if (g.element_order(e) == 2) {
          cases.emplace_back(s, g.element(e).cycles());
          break;
        }
      }
    }
  }
  const std::size_t r_max = o.r.value_or(12);
  const OrbitOptions opts = big_options(o);
  for (const auto& [spec, rep] : cases) {
    const PermGroup g = parse_group_spec(spec);
    const ClassId c = class_of_cycles(g, rep);
    const NonSplitReport ns = is_nonsplitting(g, {c});
    res.expect(ns.holds, spec + ": class of " + rep + " splits in a subgroup");
    EnumerationSpec s;
    s.cover = CoverMode::galois();
    s.classes = std::vector<ClassId>{c};
    const CountSeries series = count_series(g, s, 4, static_cast<long long>(r_max), opts);
    res.expect(!series.truncated, spec + ": series truncated: " + series.reason);
    const oracle::Group og = oracle_group(g);
    const auto alphabet = class_alphabet(g, {c});
    std::string counts;
    for (const auto& [r, n] : series.points) {
      const std::uint64_t want = oracle::dense_component_count(og, alphabet, static_cast<std::size_t>(r));
      res.expect(n == want, spec + " r=" + std::to_string(r) + ": " + std::to_string(n) + " components, oracle " +
                                std::to_string(want));
      counts += (counts.empty() ? "" : ",") + std::to_string(n);
    }
    res.expect(series.period.has_value(), spec + ": no period observed in range");
    std::string per = series.period ? "period " + std::to_string(series.period->period) + " from r = " +
                                          std::to_string(series.period->onset) + " (observed within range)"
                                    : "no period";
    res.note(spec + " r=4.." + std::to_string(r_max) + ": " + counts + "; " + per);
  }
}

void suite_hf(const VerifyOptions& o, SuiteResult& res) {
  const PermGroup g = parse_group_spec("S3");
  const OrbitOptions opts = big_options(o);
  const std::size_t r_max = o.r.value_or(12);
  const Elem rho = g.index_of(Perm::from_cycles("(1 2 3)", 3));
  const Elem tau = g.index_of(Perm::from_cycles("(1 2)", 3));
  const ClassId c3 = g.classes().class_of(rho);
  const ClassId c2 = g.classes().class_of(tau);

  const std::vector<Elem> a3_gens{rho};
  const std::vector<Elem> c2_gens{tau};
  res.expect(splitting_number(g, closure(g, a3_gens), {c3}).omega == 1, "Omega(A3, 3-cycles) != 1");
  res.expect(splitting_number(g, closure(g, c2_gens), {c2}).omega == 0, "Omega(C2, transpositions) != 0");
  const NonSplitReport ns = is_nonsplitting(g, {c3});
  res.expect(!ns.holds && ns.witness && ns.witness->subgroup_order == 3, "3-cycles of S3 should split in A3");

  // A3 itself, for the independent count
  const oracle::Group a3 = oracle::make_group(3, {Perm::from_cycles("(1 2 3)", 3)});
  std::string values, strict_values;
  std::map<std::size_t, std::uint64_t> got;
  for (std::size_t r = 2; r <= r_max; ++r) {
    const HfResult v = hf_count(g, a3_gens, {{c3, 1}}, r, false, opts);
    got[r] = v.count;
    res.expect(v.complete && v.count == oracle::a3_orbit_count(r),
               "A3 r=" + std::to_string(r) + ": " + std::to_string(v.count) + ", closed form " +
                   std::to_string(oracle::a3_orbit_count(r)));
    if (r <= 10) {
      oracle::Filter f;
      f.cover = oracle::Filter::Cover::Galois;
      const auto tuples = oracle::naive_nielsen(a3, r, f);
      const auto blocks = oracle::block_count(oracle::union_find_labels(a3, tuples, false));
      res.expect(blocks == v.count, "A3 r=" + std::to_string(r) + ": union-find finds " + std::to_string(blocks));
    }
    values += (values.empty() ? "" : ",") + std::to_string(v.count);
    if (r <= 8) {
      const HfResult strict = hf_count(g, a3_gens, {{c3, 1}}, r, true, opts);
      strict_values += (strict_values.empty() ? "" : ",") + std::to_string(strict.count);
    }
  }
  if (r_max >= 9) {
    res.expect(got[6] == 3 && got[9] == 4, "A3: expected 3 at r=6 and 4 at r=9");
  }
  for (std::size_t r = 2; r + 3 <= r_max; ++r) {
    res.expect(got[r + 3] == got[r] + 1, "A3: count does not grow by one every three steps at r=" + std::to_string(r));
  }

  std::string control1, control2;
  for (std::size_t r = 2; r <= r_max; ++r) {
    const HfResult one = hf_count(g, c2_gens, {{c2, 1}}, r, false, opts);
    res.expect(one.count == (r % 2 == 0 ? 1U : 0U), "C2 weight 1 r=" + std::to_string(r) + ": " + std::to_string(one.count));
    const HfResult two = hf_count(g, c2_gens, {{c2, 2}}, r, false, opts);
    res.expect(two.count == 1, "C2 weight 2 r=" + std::to_string(r) + ": " + std::to_string(two.count));
    control1 += (control1.empty() ? "" : ",") + std::to_string(one.count);
    control2 += (control2.empty() ? "" : ",") + std::to_string(two.count);
  }
  res.note("A3 collective r=2.." + std::to_string(r_max) + ": " + values);
  res.note("A3 strict per-class r=2..8: " + strict_values);
  res.note("C2 weight 1: " + control1 + "  (odd r is empty by parity)");
  res.note("C2 weight 2: " + control2);
}

void suite_lifting(const VerifyOptions& o, SuiteResult& res) {
  const CentralExtension e = builtin_a4_extension();
  const PermGroup& a4 = e.base();
  const PermGroup& cover = e.cover();
  const OrbitOptions opts = big_options(o);
  const std::size_t r_max = o.r.value_or(6);
  res.note("cover order " + std::to_string(cover.order()) + ", kernel order " + std::to_string(e.kernel().size()));

  auto central = [&](Elem x) {
    if (e.project(x) != PermGroup::identity()) return false;
    for (const Perm& p : cover.generators()) {
      const Elem s = cover.index_of(p);
      if (cover.mul(x, s) != cover.mul(s, x)) return false;
    }
    return true;
  };

  EnumerationSpec s;
  s.classes = e.classes();
  std::uint64_t orbit_members = 0;
  std::map<std::pair<std::size_t, ICIProfile>, std::vector<std::pair<std::vector<Elem>, Elem>>> by_profile;
  for (std::size_t r = 3; r <= r_max; ++r) {
    const Decomposition d = decompose_components(a4, r, s, opts);
    for (const Component& c : d.components) {
      const LiftValue v = lifting_invariant(c.canonical_rep, e);
      by_profile[{r, c.ici}].emplace_back(c.canonical_rep.entry_vector(), v.element);
      res.expect(central(v.element), "lift of " + show(a4, c.canonical_rep.entries()) + " is not central");
      for (std::size_t i = 1; i < r; ++i) {
        for (Direction dir : {Direction::Forward, Direction::Inverse}) {
          res.expect(lifting_invariant(apply_braid(c.canonical_rep, i, dir), e) == v, "braid move changes the lift");
        }
      }
      if (c.orbit_size <= 10000) {
        for (const NielsenTuple& m : orbit_elements(c.canonical_rep, s, opts)) {
          ++orbit_members;
          res.expect(lifting_invariant(m, e) == v, "lift not constant on orbit of " + show(a4, c.canonical_rep.entries()));
        }
      }
    }
  }
  res.note(std::to_string(orbit_members) + " orbit members checked for braid invariance");

  // multiplicativity
  std::size_t products = 0;
  for (Base base : {Base::Affine, Base::Projective}) {
    ComponentResolver resolver(a4, base, Equivalence::Marked, opts);
    const auto comps = components_up_to(a4, base, base == Base::Affine ? 2 : 3, e.classes(), opts);
    for (const Component& x : comps) {
      for (const Component& y : comps) {
        const Component xy = concat(x, y, resolver, 0);
        const Elem want = cover.mul(lifting_invariant(x.canonical_rep, e).element,
                                    lifting_invariant(y.canonical_rep, e).element);
        res.expect(lifting_invariant(xy.canonical_rep, e).element == want, "lift is not multiplicative on " +
                                                                              show(a4, x.canonical_rep.entries()) + " . " +
                                                                              show(a4, y.canonical_rep.entries()));
        ++products;
      }
    }
  }
  res.note(std::to_string(products) + " products checked for multiplicativity");

  // another lift for the first class: values of one profile move together
  const ClassId c0 = e.classes().front();
  const Elem other = cover.mul(e.representative_lift(c0), e.kernel().back());
  std::vector<std::pair<std::string, std::string>> proj{{"(1 6 2 3)(4 7 8 5)", "(1 2)(3 4)"},
                                                        {"(1 4 7)(2 8 5)", "(1 3 4)"}};
  std::vector<std::string> reps;
  for (ClassId c : e.classes()) reps.push_back(a4.element(a4.classes().representative(c)).cycles());
  const CentralExtension alt = load_central_extension(
      a4, "perm(8; (1 6 2 3)(4 7 8 5), (1 4 7)(2 8 5))", proj, reps,
      {{a4.element(a4.classes().representative(c0)).cycles(), cover.element(other).cycles()}});
  for (const auto& [key, items] : by_profile) {
    std::optional<Elem> shift;
    for (const auto& [t, v] : items) {
      const Elem w = lifting_invariant(NielsenTuple(a4, t), alt).element;
      const Elem ratio = cover.mul(w, cover.inv(v));
      if (!shift) shift = ratio;
      res.expect(*shift == ratio, "changing a lift does not shift a whole profile uniformly");
    }
  }

  // the probe, twice, with different thread counts
  OrbitOptions one = opts, two = opts;
  one.threads = 1;
  two.threads = 2;
  const CpfvReport first = cpfv_probe(a4, e, s, 4, r_max, one);
  const CpfvReport second = cpfv_probe(a4, e, s, 4, r_max, two);
  const std::string a = cpfv_to_json("A4", e, first).dump();
  const std::string b = cpfv_to_json("A4", e, second).dump();
  res.expect(a == b, "cpfv table differs between runs");
  res.expect(first.complete, "cpfv probe incomplete: " + first.reason);
  for (const auto& [r, n] : first.collisions) {
    res.expect(n == 0, "r=" + std::to_string(r) + ": " + std::to_string(n) + " keys name several components");
  }
  std::size_t separated = 0;
  std::map<std::tuple<std::size_t, std::vector<Elem>, ICIProfile>, std::size_t> lifts_per_key;
  for (const CpfvRow& row : first.rows) ++lifts_per_key[{row.r, row.group, row.ici}];
  for (const auto& [k, n] : lifts_per_key) {
    if (n > 1) ++separated;
  }
  res.note("cpfv r=4.." + std::to_string(r_max) + ": " + std::to_string(first.rows.size()) + " rows; " +
           std::to_string(separated) + " (group, profile) pairs split by the lift; sha256 " +
           sha256_hex(a).substr(0, 16));
}

void suite_rationality(const VerifyOptions& o, SuiteResult& res) {
  (void)o;
  const PermGroup s3 = parse_group_spec("S3");
  const PermGroup c3 = parse_group_spec("C3");
  ICIProfile p;
  p.counts[class_of_cycles(s3, "(1 2 3)")] = 2;
  res.expect(is_globally_rational(s3, p).rational, "S3 {3-cycles: 2} should be rational");

  ICIProfile q;
  const ClassId sigma = class_of_cycles(c3, "(1 2 3)");
  q.counts[sigma] = 2;
  const RationalityResult rq = is_globally_rational(c3, q);
  res.expect(!rq.rational && rq.witness_m == 2LL && rq.moved_class == sigma,
             "C3 {sigma: 2} should fail with witness m = 2");
  res.expect(is_globally_rational(s3, ICIProfile{}).rational, "empty profile should be rational");
  res.expect(is_globally_rational(c3, ICIProfile{}).rational, "empty profile should be rational");

  // union of rational profiles stays rational
  std::size_t pairs = 0;
  for (const char* spec : {"S3", "A4", "C5", "D5", "C4"}) {
    const PermGroup g = parse_group_spec(spec);
    std::vector<ICIProfile> profiles;
    std::function<void(ClassId, ICIProfile, std::size_t)> grow = [&](ClassId from, ICIProfile cur, std::size_t left) {
      profiles.push_back(cur);
      if (left == 0) return;
      for (ClassId c = from; c < g.classes().size(); ++c) {
        if (c == 0) continue;
        ICIProfile next = cur;
        ++next.counts[c];
        grow(c, next, left - 1);
      }
    };
    grow(1, ICIProfile{}, 3);
    std::vector<ICIProfile> rational;
    for (const auto& pr : profiles) {
      if (is_globally_rational(g, pr).rational) rational.push_back(pr);
    }
    for (const auto& a : rational) {
      for (const auto& b : rational) {
        ICIProfile u = a;
        u += b;
        res.expect(is_globally_rational(g, u).rational, std::string(spec) + ": union of rational profiles is not rational");
        ++pairs;
      }
    }
  }
  res.note(std::to_string(pairs) + " unions of rational profiles checked");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"braid-relations", "orbit-oracle",    "inner-braids",  "monoid",
                                              "twist",           "clebsch",         "generating-tail", "stabilization",
                                              "hf",              "lifting",         "rationality"};
  return names;
}

SuiteResult run_suite(std::string_view name, const VerifyOptions& options) {
  static const std::map<std::string, std::function<void(const VerifyOptions&, SuiteResult&)>, std::less<>> suites{
      {"braid-relations", suite_braid_relations},
      {"orbit-oracle", suite_orbit_oracle},
      {"inner-braids", suite_inner_braids},
      {"monoid", suite_monoid},
      {"twist", suite_twist},
      {"clebsch", suite_clebsch},
      {"generating-tail", suite_generating_tail},
      {"stabilization", suite_stabilization},
      {"hf", suite_hf},
      {"lifting", suite_lifting},
      {"rationality", suite_rationality},
  };
  auto it = suites.find(name);
  if (it == suites.end()) throw PreconditionError("unknown verify suite '" + std::string(name) + "'");
  SuiteResult res;
  res.suite = std::string(name);
  const auto start = std::chrono::steady_clock::now();
  it->second(options, res);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace nbl
