#include "nbl/subgroups.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "nbl/errors.hpp"

namespace nbl {

std::vector<Elem> ElementSet::elements() const {
  std::vector<Elem> out;
  out.reserve(count_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      out.push_back(static_cast<Elem>(w * 64 + static_cast<std::size_t>(b)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

namespace {

void close_under(const PermGroup& g, ElementSet& set, std::vector<Elem>& list,
                 std::span<const Elem> gens) {
  for (std::size_t head = 0; head < list.size(); ++head) {
    for (Elem s : gens) {
      Elem next = g.mul(list[head], s);
      if (set.insert(next)) list.push_back(next);
    }
  }
}

}  // namespace

ElementSet closure(const PermGroup& g, std::span<const Elem> gens) {
  ElementSet set(g.order());
  std::vector<Elem> list{PermGroup::identity()};
  set.insert(PermGroup::identity());
  close_under(g, set, list, gens);
  return set;
}

PermGroup subgroup_generated(const PermGroup& g, const std::vector<Perm>& gens) {
  std::string name = "sub(" + g.name() + ";";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    g.index_of(gens[i]);
    name += (i ? "," : "") + gens[i].cycles();
  }
  name += ")";
  return PermGroup::generate(g.degree(), gens, name, g.order());
}

SubgroupLattice::SubgroupLattice(PermGroup g) : g_(std::move(g)) {
  ElementSet trivial(g_.order());
  trivial.insert(PermGroup::identity());
  intern(std::move(trivial), {});
}

SubgroupId SubgroupLattice::intern(ElementSet members, std::vector<Elem> generators) {
  auto& bucket = by_hash_[members.hash()];
  for (SubgroupId id : bucket) {
    if (sets_[id] == members) return id;
  }
  const auto id = static_cast<SubgroupId>(sets_.size());
  bucket.push_back(id);
  sets_.push_back(std::move(members));
  gens_.push_back(std::move(generators));
  joins_.emplace_back();
  transitive_.push_back(-1);
  return id;
}

SubgroupId SubgroupLattice::join(SubgroupId h, Elem g) {
  if (sets_[h].contains(g)) return h;
  auto& memo = joins_[h];
  if (memo.empty()) memo.assign(g_.order(), -1);
  if (memo[g] >= 0) return static_cast<SubgroupId>(memo[g]);

  ElementSet set = sets_[h];
  std::vector<Elem> list = set.elements();
  std::vector<Elem> gens = gens_[h];
  gens.push_back(g);
  close_under(g_, set, list, gens);
  const SubgroupId id = intern(std::move(set), std::move(gens));
  joins_[h][g] = static_cast<std::int32_t>(id);
  return id;
}

SubgroupId SubgroupLattice::generated(std::span<const Elem> gens) {
  SubgroupId h = trivial();
  for (Elem g : gens) h = join(h, g);
  return h;
}

bool SubgroupLattice::is_transitive(SubgroupId h) {
  if (transitive_[h] >= 0) return transitive_[h] == 1;
  const std::size_t degree = g_.degree();
  std::vector<bool> seen(degree, false);
  std::vector<Point> orbit{0};
  seen[0] = true;
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (Elem s : gens_[h]) {
      Point q = g_.element(s)[orbit[head]];
      if (!seen[q]) {
        seen[q] = true;
        orbit.push_back(q);
      }
    }
  }
  transitive_[h] = orbit.size() == degree ? 1 : 0;
  return transitive_[h] == 1;
}

PermGroup SubgroupClass::as_group(const PermGroup& ambient) const {
  std::vector<Perm> perms;
  for (Elem e : generators) perms.push_back(ambient.element(e));
  return subgroup_generated(ambient, perms);
}

std::vector<std::size_t> SubgroupCatalog::fingerprint(const ElementSet& s) const {
  std::vector<std::size_t> counts(g_.classes().size(), 0);
  for (Elem e : s.elements()) ++counts[g_.classes().class_of(e)];
  return counts;
}

bool SubgroupCatalog::conjugate_into(const ElementSet& from_members,
                                     std::span<const Elem> from_gens,
                                     const ElementSet& to) const {
  if (from_members.size() != to.size()) return false;
  for (std::size_t x = 0; x < g_.order(); ++x) {
    bool ok = true;
    for (Elem s : from_gens) {
      if (!to.contains(g_.conj(s, static_cast<Elem>(x)))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

SubgroupCatalog::SubgroupCatalog(const PermGroup& g, std::size_t cap) : g_(g) {
  if (g.order() > cap) {
    throw CapExceeded("subgroup enumeration is capped at order " + std::to_string(cap) + "; " +
                      g.name() + " has order " + std::to_string(g.order()));
  }
  SubgroupLattice lattice(g);

  // One generator per cyclic subgroup.
  std::vector<Elem> cyclic_gens;
  {
    std::vector<bool> covered(g.order(), false);
    for (std::size_t e = 1; e < g.order(); ++e) {
      if (covered[e]) continue;
      cyclic_gens.push_back(static_cast<Elem>(e));
      for (std::size_t k = 1; k < g.element_order(static_cast<Elem>(e)); ++k) {
        Elem p = g.pow(static_cast<Elem>(e), static_cast<long long>(k));
        if (std::gcd(k, g.element_order(static_cast<Elem>(e))) == 1) covered[p] = true;
      }
    }
  }

  struct Found {
    SubgroupId lattice_id;
    std::vector<std::size_t> fp;
  };
  std::vector<Found> reps{{lattice.trivial(), fingerprint(lattice.members(lattice.trivial()))}};
  for (std::size_t head = 0; head < reps.size(); ++head) {
    const SubgroupId h = reps[head].lattice_id;
    for (Elem c : cyclic_gens) {
      const SubgroupId k = lattice.join(h, c);
      if (k == h) continue;
      const ElementSet& members = lattice.members(k);
      auto fp = fingerprint(members);
      bool known = false;
      for (const Found& f : reps) {
        if (f.fp == fp && conjugate_into(members, lattice.generators(k),
                                         lattice.members(f.lattice_id))) {
          known = true;
          break;
        }
      }
      if (!known) reps.push_back({k, std::move(fp)});
    }
  }

  for (const Found& f : reps) {
    SubgroupClass cls;
    cls.order = lattice.order(f.lattice_id);
    const std::vector<Elem> elems = lattice.members(f.lattice_id).elements();
    const std::vector<Elem>& gens = lattice.generators(f.lattice_id);
    std::vector<std::vector<Elem>> conjugates;
    std::vector<Elem> best;
    std::vector<Elem> best_gens;
    for (std::size_t x = 0; x < g.order(); ++x) {
      std::vector<Elem> conj;
      conj.reserve(elems.size());
      for (Elem e : elems) conj.push_back(g.conj(e, static_cast<Elem>(x)));
      std::sort(conj.begin(), conj.end());
      if (best.empty() || conj < best) {
        best = conj;
        best_gens.clear();
        for (Elem s : gens) best_gens.push_back(g.conj(s, static_cast<Elem>(x)));
      }
      conjugates.push_back(std::move(conj));
    }
    std::sort(conjugates.begin(), conjugates.end());
    cls.conjugates = static_cast<std::size_t>(
        std::unique(conjugates.begin(), conjugates.end()) - conjugates.begin());
    cls.members = ElementSet(g.order());
    for (Elem e : best) cls.members.insert(e);
    cls.generators = std::move(best_gens);
    classes_.push_back(std::move(cls));
  }
  std::sort(classes_.begin(), classes_.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.members.elements() < b.members.elements();
  });
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    classes_[i].id = i;
    fingerprints_.push_back(fingerprint(classes_[i].members));
  }
}

std::size_t SubgroupCatalog::total_subgroups() const noexcept {
  std::size_t total = 0;
  for (const auto& c : classes_) total += c.conjugates;
  return total;
}

std::size_t SubgroupCatalog::class_of(const ElementSet& members) const {
  std::lock_guard lock(memo_mutex_);
  auto& bucket = memo_[members.hash()];
  for (const auto& [set, id] : bucket) {
    if (set == members) return id;
  }
  const auto fp = fingerprint(members);
  const std::vector<Elem> elems = members.elements();
  for (const SubgroupClass& cls : classes_) {
    if (fingerprints_[cls.id] != fp) continue;
    // Conjugate the candidate's generators into `members`.
    if (conjugate_into(cls.members, cls.generators, members)) {
      bucket.emplace_back(members, cls.id);
      return cls.id;
    }
  }
  throw PreconditionError("element set is not a subgroup of " + g_.name());
}

std::vector<SubgroupClass> subgroups_up_to_conjugacy(const PermGroup& g, std::size_t cap) {
  return SubgroupCatalog(g, cap).classes();
}

std::vector<std::vector<Elem>> subgroup_classes(const PermGroup& g, const ElementSet& members) {
  const std::vector<Elem> elems = members.elements();
  std::vector<bool> seen(g.order(), false);
  std::vector<std::vector<Elem>> out;
  for (Elem e : elems) {
    if (seen[e]) continue;
    std::vector<Elem> cls;
    for (Elem x : elems) {
      Elem y = g.conj(e, x);
      if (!seen[y]) {
        seen[y] = true;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace nbl
