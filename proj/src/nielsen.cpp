#include "nbl/nielsen.hpp"

#include <algorithm>

#include "nbl/errors.hpp"

namespace nbl {

std::size_t ICIProfile::total() const noexcept {
  std::size_t n = 0;
  for (const auto& [cls, count] : counts) n += count;
  return n;
}

ICIProfile& ICIProfile::operator+=(const ICIProfile& other) {
  for (const auto& [cls, count] : other.counts) counts[cls] += count;
  return *this;
}

NielsenTuple::NielsenTuple(PermGroup group, std::vector<Elem> entries)
    : group_(std::move(group)), entries_(std::move(entries)) {
  for (Elem e : entries_) {
    if (e >= group_.order()) throw PreconditionError("tuple entry index out of range");
    if (e == PermGroup::identity()) throw PreconditionError("tuple entries must be nontrivial");
  }
}

NielsenTuple NielsenTuple::from_cycles(const PermGroup& group,
                                       const std::vector<std::string>& cycles) {
  std::vector<Elem> entries;
  for (const std::string& c : cycles) {
    entries.push_back(group.index_of(Perm::from_cycles(c, group.degree())));
  }
  return NielsenTuple(group, std::move(entries));
}

std::vector<std::string> NielsenTuple::cycles() const {
  std::vector<std::string> out;
  for (Elem e : entries_) out.push_back(group_.element(e).cycles());
  return out;
}

NielsenTuple NielsenTuple::conjugated(Elem g) const {
  std::vector<Elem> out;
  out.reserve(entries_.size());
  for (Elem e : entries_) out.push_back(group_.conj(e, g));
  return NielsenTuple(group_, std::move(out));
}

NielsenTuple NielsenTuple::concatenated(const NielsenTuple& other) const {
  if (!group_.same_as(other.group_) && (group_.valid() && other.group_.valid())) {
    throw PreconditionError("cannot concatenate tuples over different groups");
  }
  std::vector<Elem> out = entries_;
  out.insert(out.end(), other.entries_.begin(), other.entries_.end());
  return NielsenTuple(group_.valid() ? group_ : other.group_, std::move(out));
}

std::vector<Elem> allowed_elements(const PermGroup& g, const ClassConstraint& classes) {
  const ClassTable& table = g.classes();
  std::vector<ClassId> ids;
  if (std::holds_alternative<AnyClass>(classes)) {
    for (ClassId c = 0; c < table.size(); ++c) ids.push_back(c);
  } else if (const auto* set = std::get_if<std::vector<ClassId>>(&classes)) {
    ids = *set;
  } else {
    for (const auto& [c, n] : std::get<ICIProfile>(classes).counts) {
      if (n > 0) ids.push_back(c);
    }
  }
  std::vector<Elem> out;
  for (ClassId c : ids) {
    if (c >= table.size()) throw PreconditionError("class id " + std::to_string(c) + " out of range");
    for (Elem e : table[c].members) {
      if (e != PermGroup::identity()) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Some x with x A x^{-1} = B, tested on A's generators.
bool conjugate_subgroups(const PermGroup& g, const ElementSet& a, std::span<const Elem> a_gens,
                         const ElementSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem s : a_gens) {
      if (!b.contains(g.conj(s, static_cast<Elem>(x)))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

SubgroupId required_subgroup(SubgroupLattice& lattice, const CoverMode& cover) {
  const PermGroup& g = lattice.group();
  if (cover.subgroup.empty()) {
    std::vector<Elem> all(g.order());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
    return lattice.generated(all);
  }
  for (Elem e : cover.subgroup) {
    if (e >= g.order()) throw ForeignElement("required subgroup generator out of range");
  }
  return lattice.generated(cover.subgroup);
}

// Galois covers: marked tuples must generate H exactly; unmarked ones only
// up to conjugacy, since conjugating a tuple conjugates its group.
bool galois_ok(SubgroupLattice& lattice, SubgroupId h, SubgroupId required, bool unmarked) {
  if (h == required) return true;
  if (!unmarked) return false;
  return conjugate_subgroups(lattice.group(), lattice.members(required),
                             lattice.generators(required), lattice.members(h));
}

struct Enumerator {
  const PermGroup& g;
  std::size_t r;
  const EnumerationSpec& spec;
  const TupleSink& sink;
  const Budget& budget;

  SubgroupLattice lattice{g};
  std::vector<Elem> candidates;
  std::vector<bool> allowed;
  bool track_subgroup = false;
  SubgroupId required = 0;
  const ICIProfile* profile = nullptr;
  std::vector<std::size_t> remaining;  // per class, profile mode only
  bool unmarked = false;
  std::vector<std::int8_t> galois_memo;  // per lattice id, unmarked mode

  std::vector<Elem> tuple;
  std::vector<Elem> prefix_product;      // prefix_product[d] = product of first d entries
  std::vector<SubgroupId> prefix_group;  // prefix_group[d] = <first d entries>
  // alive[d]: conjugators g with (first d entries)^g == first d entries
  std::vector<std::vector<Elem>> alive;

  Deadline deadline{budget.timeout};
  std::uint64_t steps = 0;
  EnumerationStats stats;
  bool stop = false;

  Enumerator(const PermGroup& g_, std::size_t r_, const EnumerationSpec& s, const TupleSink& k,
             const Budget& b)
      : g(g_), r(r_), spec(s), sink(k), budget(b) {}

  void setup() {
    candidates = allowed_elements(g, spec.classes);
    if (spec.cover.kind == CoverMode::Kind::Galois) {
      track_subgroup = true;
      required = required_subgroup(lattice, spec.cover);
      if (spec.equivalence == Equivalence::Marked) {
        const ElementSet& h = lattice.members(required);
        std::erase_if(candidates, [&](Elem e) { return !h.contains(e); });
      } else {
        galois_memo.assign(1, -1);
      }
    } else if (spec.cover.kind == CoverMode::Kind::Transitive) {
      track_subgroup = true;
    }
    allowed.assign(g.order(), false);
    for (Elem e : candidates) allowed[e] = true;
    if (const auto* p = std::get_if<ICIProfile>(&spec.classes)) {
      profile = p;
      remaining.assign(g.classes().size(), 0);
      for (const auto& [c, n] : p->counts) remaining.at(c) = n;
    }
    unmarked = spec.equivalence == Equivalence::Unmarked;

    tuple.resize(r);
    prefix_product.assign(r + 1, PermGroup::identity());
    prefix_group.assign(r + 1, lattice.trivial());
    alive.resize(r + 1);
    if (unmarked) {
      alive[0].resize(g.order());
      for (std::size_t i = 0; i < g.order(); ++i) alive[0][i] = static_cast<Elem>(i);
    }
  }

  bool cover_ok(SubgroupId h) {
    switch (spec.cover.kind) {
      case CoverMode::Kind::Any:
        return true;
      case CoverMode::Kind::Galois:
        if (!unmarked) return h == required;
        if (galois_memo.size() <= h) galois_memo.resize(lattice.size(), -1);
        if (galois_memo[h] < 0) galois_memo[h] = galois_ok(lattice, h, required, true) ? 1 : 0;
        return galois_memo[h] == 1;
      case CoverMode::Kind::Transitive:
        return lattice.is_transitive(h);
    }
    return true;
  }

  // Places entry e at depth d; returns false if the branch is pruned.
  bool place(std::size_t d, Elem e) {
    if (unmarked) {
      alive[d + 1].clear();
      for (Elem x : alive[d]) {
        const Elem c = g.conj(e, x);
        if (c < e) return false;
        if (c == e) alive[d + 1].push_back(x);
      }
    }
    tuple[d] = e;
    prefix_product[d + 1] = g.mul(prefix_product[d], e);
    if (track_subgroup) prefix_group[d + 1] = lattice.join(prefix_group[d], e);
    return true;
  }

  void emit() {
    if (!cover_ok(prefix_group[r])) return;
    if (stats.emitted >= budget.max_tuples) {
      stats.complete = false;
      stats.stop_reason = "tuple budget of " + std::to_string(budget.max_tuples) + " reached";
      stop = true;
      return;
    }
    ++stats.emitted;
    sink(std::span<const Elem>(tuple.data(), r));
  }

  bool take_class(Elem e) {
    if (!profile) return true;
    auto& left = remaining[g.classes().class_of(e)];
    if (left == 0) return false;
    --left;
    return true;
  }
  void give_class(Elem e) {
    if (profile) ++remaining[g.classes().class_of(e)];
  }

  void descend(std::size_t d) {
    if (stop) return;
    if ((++steps & 0xFFF) == 0 && deadline.expired()) {
      stats.complete = false;
      stats.stop_reason = "time budget of " + std::to_string(budget.timeout.count()) + " s reached";
      stop = true;
      return;
    }
    if (d == r) {
      if (spec.base == Base::Projective && prefix_product[r] != PermGroup::identity()) return;
      emit();
      return;
    }
    if (spec.base == Base::Projective && d + 1 == r) {
      const Elem last = g.inv(prefix_product[d]);
      if (last == PermGroup::identity() || !allowed[last]) return;
      if (!take_class(last)) return;
      if (place(d, last)) descend(d + 1);
      give_class(last);
      return;
    }
    for (Elem e : candidates) {
      if (!take_class(e)) continue;
      if (place(d, e)) descend(d + 1);
      give_class(e);
      if (stop) return;
    }
  }
};

}  // namespace

EnumerationStats enumerate_nielsen(const PermGroup& g, std::size_t r, const EnumerationSpec& spec,
                                   const TupleSink& sink, const Budget& budget) {
  Enumerator en(g, r, spec, sink, budget);
  en.setup();
  if (en.profile && en.profile->total() != r) return en.stats;
  en.descend(0);
  return en.stats;
}

std::vector<NielsenTuple> collect_nielsen(const PermGroup& g, std::size_t r,
                                          const EnumerationSpec& spec, const Budget& budget) {
  std::vector<NielsenTuple> out;
  auto stats = enumerate_nielsen(
      g, r, spec,
      [&](std::span<const Elem> t) { out.emplace_back(g, std::vector<Elem>(t.begin(), t.end())); },
      budget);
  if (!stats.complete) throw BudgetExceeded("enumeration", stats.stop_reason, stats.emitted);
  return out;
}

void canonical_form(const PermGroup& g, std::span<const Elem> entries, std::span<Elem> out) {
  std::copy(entries.begin(), entries.end(), out.begin());
  const std::size_t r = entries.size();
  for (std::size_t x = 1; x < g.order(); ++x) {
    // Compare entries^x against the best so far, stopping at the first
    // difference.
    std::size_t i = 0;
    Elem c = 0;
    for (; i < r; ++i) {
      c = g.conj(entries[i], static_cast<Elem>(x));
      if (c != out[i]) break;
    }
    if (i == r || c > out[i]) continue;
    out[i] = c;
    for (++i; i < r; ++i) out[i] = g.conj(entries[i], static_cast<Elem>(x));
  }
}

NielsenTuple canonicalize(const NielsenTuple& t, Equivalence equivalence) {
  if (equivalence == Equivalence::Marked) return t;
  std::vector<Elem> out(t.size());
  canonical_form(t.group(), t.entries(), out);
  return NielsenTuple(t.group(), std::move(out));
}

bool satisfies(const PermGroup& g, std::span<const Elem> entries, const EnumerationSpec& spec) {
  for (Elem e : entries) {
    if (e == PermGroup::identity() || e >= g.order()) return false;
  }
  if (spec.base == Base::Projective && g.product(entries) != PermGroup::identity()) return false;
  const std::vector<Elem> allowed = allowed_elements(g, spec.classes);
  for (Elem e : entries) {
    if (!std::binary_search(allowed.begin(), allowed.end(), e)) return false;
  }
  if (const auto* p = std::get_if<ICIProfile>(&spec.classes)) {
    // a zero count means the class is absent
    ICIProfile want;
    for (const auto& [c, n] : p->counts) {
      if (n > 0) want.counts[c] = n;
    }
    if (ici(g, entries) != want) return false;
  }
  if (spec.cover.kind != CoverMode::Kind::Any) {
    SubgroupLattice lattice(g);
    const SubgroupId h = lattice.generated(entries);
    if (spec.cover.kind == CoverMode::Kind::Transitive) {
      if (!lattice.is_transitive(h)) return false;
    } else {
      const SubgroupId want = required_subgroup(lattice, spec.cover);
      if (!galois_ok(lattice, h, want, spec.equivalence == Equivalence::Unmarked)) return false;
    }
  }
  if (spec.equivalence == Equivalence::Unmarked) {
    std::vector<Elem> canon(entries.size());
    canonical_form(g, entries, canon);
    if (!std::equal(canon.begin(), canon.end(), entries.begin())) return false;
  }
  return true;
}

ICIProfile ici(const PermGroup& g, std::span<const Elem> entries) {
  ICIProfile p;
  for (Elem e : entries) ++p.counts[g.classes().class_of(e)];
  return p;
}

ICIProfile ici(const NielsenTuple& t) { return ici(t.group(), t.entries()); }

ICIProfile ici(const NielsenTuple& t, const PermGroup& refine) {
  ICIProfile p;
  for (Elem e : t.entries()) {
    const auto h = refine.find(t.group().element(e));
    if (!h) {
      throw PreconditionError("entry " + t.group().element(e).cycles() + " is not in " +
                              refine.name());
    }
    ++p.counts[refine.classes().class_of(*h)];
  }
  return p;
}

}  // namespace nbl
