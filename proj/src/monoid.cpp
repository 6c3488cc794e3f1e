#include "nbl/monoid.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "nbl/errors.hpp"

namespace nbl {

Component unit_component(const PermGroup& g, Base base, Equivalence equivalence) {
  Component c;
  c.canonical_rep = NielsenTuple(g, {});
  c.orbit_size = 1;
  c.r = 0;
  c.group_order = 1;
  if (g.order() <= kDefaultSubgroupCap) c.group_class_id = 0;  // the trivial class sorts first
  c.base = base;
  c.equivalence = equivalence;
  return c;
}

ComponentResolver::ComponentResolver(PermGroup g, Base base, Equivalence equivalence,
                                     OrbitOptions options)
    : g_(std::move(g)), options_(options) {
  spec_.base = base;
  spec_.equivalence = equivalence;
}

const Component& ComponentResolver::resolve(std::span<const Elem> entries) {
  std::vector<Elem> key(entries.begin(), entries.end());
  if (spec_.equivalence == Equivalence::Unmarked) canonical_form(g_, entries, key);
  if (auto it = members_.find(key); it != members_.end()) return components_[it->second];

  OrbitResult res = orbit_members(NielsenTuple(g_, key), spec_, options_);
  const std::size_t index = components_.size();
  components_.push_back(std::move(res.component));
  for (auto& m : res.members) members_.emplace(std::move(m), index);
  return components_.back();
}

namespace {

void check_compatible(const Component& x, const Component& y, const ComponentResolver& res,
                      bool need_connected = true) {
  for (const Component* c : {&x, &y}) {
    if (!same_group(c->canonical_rep.group(), res.group())) {
      throw PreconditionError("mixed-mode: components live over different groups");
    }
    if (c->base != res.base() || c->equivalence != res.equivalence()) {
      throw PreconditionError("mixed-mode: components differ in base or equivalence");
    }
    if (need_connected && res.equivalence() == Equivalence::Unmarked && c->r > 0 &&
        c->group_order != res.group().order()) {
      throw PreconditionError(
          "unmarked concatenation needs components whose group is the whole group");
    }
  }
}

std::vector<Elem> joined(std::span<const Elem> a, std::span<const Elem> b) {
  std::vector<Elem> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Random walk of 2r braid moves; stays inside the orbit.
std::vector<Elem> braid_walk(const PermGroup& g, std::span<const Elem> t, std::mt19937_64& rng) {
  std::vector<Elem> out(t.begin(), t.end());
  if (out.size() < 2) return out;
  std::uniform_int_distribution<std::size_t> pos(0, out.size() - 2);
  for (std::size_t step = 0; step < 2 * out.size(); ++step) {
    braid_in_place(g, out, pos(rng), (rng() & 1U) ? Direction::Forward : Direction::Inverse);
  }
  return out;
}

}  // namespace

Component concat(const Component& x, const Component& y, ComponentResolver& resolver,
                 std::size_t samples) {
  check_compatible(x, y, resolver);
  const PermGroup& g = resolver.group();
  const Component result =
      resolver.resolve(joined(x.canonical_rep.entries(), y.canonical_rep.entries()));

  std::mt19937_64 rng(0x5eedULL + 131 * x.r + y.r);
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<Elem> xs = braid_walk(g, x.canonical_rep.entries(), rng);
    std::vector<Elem> ys = braid_walk(g, y.canonical_rep.entries(), rng);
    if (resolver.equivalence() == Equivalence::Unmarked) {
      // any conjugate of x is another representative
      const auto gamma = static_cast<Elem>(pick(rng));
      for (Elem& e : xs) e = g.conj(e, gamma);
    }
    if (!resolver.resolve(joined(xs, ys)).same_component(result)) {
      throw Error("concatenation depends on the chosen representatives");
    }
  }
  return result;
}

Component concat(const Component& x, const Component& y, const OrbitOptions& options) {
  ComponentResolver resolver(x.canonical_rep.group(), x.base, x.equivalence, options);
  return concat(x, y, resolver, 1);
}

Component conjugate_component(const Component& y, Elem gamma, ComponentResolver& resolver) {
  const PermGroup& g = resolver.group();
  if (gamma >= g.order()) throw ForeignElement("conjugating element outside the group");
  check_compatible(y, y, resolver, false);
  if (y.equivalence == Equivalence::Unmarked) return y;
  std::vector<Elem> entries = y.canonical_rep.entry_vector();
  for (Elem& e : entries) e = g.conj(e, gamma);
  return resolver.resolve(entries);
}

Component conjugate_component(const Component& y, Elem gamma, const OrbitOptions& options) {
  ComponentResolver resolver(y.canonical_rep.group(), y.base, y.equivalence, options);
  return conjugate_component(y, gamma, resolver);
}

CommutationReport commutation_check(const Component& x, const Component& y,
                                    ComponentResolver& resolver) {
  CommutationReport rep;
  rep.lhs = concat(x, y, resolver);
  const Elem px = x.canonical_rep.product();
  rep.rhs = concat(conjugate_component(y, px, resolver), x, resolver);
  rep.holds = rep.lhs.same_component(rep.rhs);
  return rep;
}

CommutationReport commutation_check(const Component& x, const Component& y,
                                    const OrbitOptions& options) {
  ComponentResolver resolver(x.canonical_rep.group(), x.base, x.equivalence, options);
  return commutation_check(x, y, resolver);
}

TwistReport hm_twist_set(const Component& x, const Component& y, ComponentResolver& resolver) {
  if (resolver.equivalence() != Equivalence::Marked) {
    throw PreconditionError("twisted concatenation is defined for marked components only");
  }
  check_compatible(x, y, resolver);
  const PermGroup& g = resolver.group();
  const ElementSet h = closure(g, x.canonical_rep.entries());
  const ElementSet k = closure(g, y.canonical_rep.entries());
  const std::vector<Elem> both = joined(x.canonical_rep.entries(), y.canonical_rep.entries());
  const ElementSet join = closure(g, both);

  TwistReport rep;
  rep.h_order = h.size();
  rep.k_order = k.size();
  rep.join_order = join.size();
  ElementSet hk(g.order());
  for (Elem a : h.elements()) {
    for (Elem b : k.elements()) hk.insert(g.mul(a, b));
  }
  rep.join_is_product = hk.size() == join.size();
  rep.product = concat(x, y, resolver);

  const std::vector<Elem> twisters = join.elements();
  std::vector<Component> xs, ys;
  std::vector<std::vector<Elem>> x_entries, y_entries;
  for (Elem gamma : twisters) {
    xs.push_back(conjugate_component(x, gamma, resolver));
    ys.push_back(conjugate_component(y, gamma, resolver));
    x_entries.push_back(xs.back().canonical_rep.entry_vector());
    y_entries.push_back(ys.back().canonical_rep.entry_vector());
  }
  std::set<std::vector<Elem>> seen;
  for (std::size_t i = 0; i < twisters.size(); ++i) {
    for (std::size_t j = 0; j < twisters.size(); ++j) {
      // <H^gamma, K^delta> is generated by the two conjugated representatives
      if (!(closure(g, joined(x_entries[i], y_entries[j])) == join)) continue;
      Component c = concat(xs[i], ys[j], resolver, 0);
      if (seen.insert(c.canonical_rep.entry_vector()).second) rep.twists.push_back(std::move(c));
    }
  }
  std::sort(rep.twists.begin(), rep.twists.end(),
            [](const Component& a, const Component& b) { return a.canonical_rep < b.canonical_rep; });
  rep.singleton = rep.twists.size() == 1 && rep.twists.front().same_component(rep.product);
  return rep;
}

TwistReport hm_twist_set(const Component& x, const Component& y, const OrbitOptions& options) {
  ComponentResolver resolver(x.canonical_rep.group(), x.base, x.equivalence, options);
  return hm_twist_set(x, y, resolver);
}

SplittingDatum splitting_number(const PermGroup& g, const ElementSet& h,
                                const std::vector<ClassId>& c) {
  const ClassTable& table = g.classes();
  for (ClassId id : c) {
    if (id >= table.size()) throw PreconditionError("class id " + std::to_string(id) + " out of range");
  }
  SplittingDatum d;
  d.classes = c;
  d.subgroup_order = h.size();
  if (g.order() <= kDefaultSubgroupCap) d.subgroup_id = g.subgroup_catalog().class_of(h);
  const auto pieces = subgroup_classes(g, h);
  for (ClassId id : c) {
    ClassSplit split{id, {}};
    for (const auto& piece : pieces) {
      if (table.class_of(piece.front()) == id) split.pieces.push_back(piece);
    }
    if (!split.pieces.empty()) d.omega += split.pieces.size() - 1;
    d.breakdown.push_back(std::move(split));
  }
  return d;
}

SplittingDatum splitting_number(const PermGroup& g, std::size_t subgroup_class_id,
                                const std::vector<ClassId>& c) {
  const auto& classes = g.subgroup_catalog().classes();
  if (subgroup_class_id >= classes.size()) {
    throw PreconditionError("subgroup class id " + std::to_string(subgroup_class_id) +
                            " out of range");
  }
  return splitting_number(g, classes[subgroup_class_id].members, c);
}

NonSplitReport is_nonsplitting(const PermGroup& g, const std::vector<ClassId>& c) {
  NonSplitReport rep;
  for (const SubgroupClass& cls : g.subgroup_catalog().classes()) {
    SplittingDatum d = splitting_number(g, cls.members, c);
    const bool splits = std::any_of(d.breakdown.begin(), d.breakdown.end(),
                                    [](const ClassSplit& s) { return s.pieces.size() > 1; });
    if (splits) {
      rep.holds = false;
      rep.witness = std::move(d);
      return rep;
    }
  }
  return rep;
}

HfResult hf_count(const PermGroup& g, const std::vector<Elem>& h_generators,
                  const std::map<ClassId, std::size_t>& xi, std::size_t r, bool strict_per_class,
                  const OrbitOptions& options) {
  const ClassTable& table = g.classes();
  for (const auto& [cls, weight] : xi) {
    if (cls >= table.size()) throw PreconditionError("class id " + std::to_string(cls) + " out of range");
    if (weight == 0) throw PreconditionError("multiplicity weights must be positive");
  }
  for (Elem e : h_generators) {
    if (e >= g.order()) throw ForeignElement("subgroup generator outside the group");
  }

  OrbitOptions opts = options;
  opts.classify_groups = false;
  HfResult out;
  EnumerationSpec spec;
  spec.base = Base::Projective;
  spec.equivalence = Equivalence::Marked;

  Decomposition d;
  if (!strict_per_class) {
    for (const auto& [cls, weight] : xi) out.profile.counts[cls] = r * weight;
    spec.cover = CoverMode::galois(h_generators);
    spec.classes = out.profile;
    out.tuple_length = out.profile.total();
    d = decompose_components(g, out.tuple_length, spec, opts);
  } else {
    std::vector<Perm> perms;
    for (Elem e : h_generators) perms.push_back(g.element(e));
    const PermGroup hg = subgroup_generated(g, perms);
    const ClassTable& h_table = hg.classes();
    for (ClassId hc = 0; hc < h_table.size(); ++hc) {
      const ClassId ambient = table.class_of(g.index_of(hg.element(h_table.representative(hc))));
      if (auto it = xi.find(ambient); it != xi.end()) out.profile.counts[hc] = r * it->second;
    }
    spec.cover = CoverMode::galois();
    spec.classes = out.profile;
    out.tuple_length = out.profile.total();
    d = decompose_components(hg, out.tuple_length, spec, opts);
  }
  out.count = d.components.size();
  out.complete = d.complete;
  if (!d.complete) out.reason = d.phase + ": " + d.reason;
  return out;
}

}  // namespace nbl
