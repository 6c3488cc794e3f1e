#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "nbl/group.hpp"

namespace nbl {

// A subset of a group's element indices, stored as a bitset.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  bool contains(Elem e) const noexcept { return (words_[e >> 6] >> (e & 63)) & 1U; }
  bool insert(Elem e) noexcept {
    auto& w = words_[e >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (e & 63);
    if (w & bit) return false;
    w |= bit;
    ++count_;
    return true;
  }
  std::size_t size() const noexcept { return count_; }
  std::vector<Elem> elements() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.words_ == b.words_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t count_ = 0;
};

// Closure of `gens` inside g, as a set of element indices.
ElementSet closure(const PermGroup& g, std::span<const Elem> gens);

// Subgroup of G generated by `gens`, as a standalone PermGroup sharing G's
// degree. Throws ForeignElement when a generator is outside G.
PermGroup subgroup_generated(const PermGroup& g, const std::vector<Perm>& gens);

using SubgroupId = std::uint32_t;

// Memoizing cache of subgroups met while walking tuples: interns element
// sets and remembers join(H, g) = <H, g>. Not thread-safe; give each thread
// its own lattice.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(PermGroup g);

  const PermGroup& group() const noexcept { return g_; }
  SubgroupId trivial() const noexcept { return 0; }
  SubgroupId join(SubgroupId h, Elem g);
  SubgroupId generated(std::span<const Elem> gens);
  SubgroupId intern(ElementSet members, std::vector<Elem> generators);

  const ElementSet& members(SubgroupId h) const { return sets_.at(h); }
  const std::vector<Elem>& generators(SubgroupId h) const { return gens_.at(h); }
  std::size_t order(SubgroupId h) const { return sets_.at(h).size(); }
  // Transitivity of the subgroup on the points 1..degree.
  bool is_transitive(SubgroupId h);
  std::size_t size() const noexcept { return sets_.size(); }

 private:
  PermGroup g_;
  std::vector<ElementSet> sets_;
  std::vector<std::vector<Elem>> gens_;
  std::vector<std::vector<std::int32_t>> joins_;
  std::vector<std::int8_t> transitive_;
  std::unordered_map<std::size_t, std::vector<SubgroupId>> by_hash_;
};

inline constexpr std::size_t kDefaultSubgroupCap = 2000;

struct SubgroupClass {
  std::size_t id = 0;
  std::size_t order = 0;
  // The conjugate whose sorted element list is lexicographically smallest.
  ElementSet members;
  std::vector<Elem> generators;
  // Number of distinct conjugates (= index of the normalizer).
  std::size_t conjugates = 0;

  PermGroup as_group(const PermGroup& ambient) const;
};

// All subgroups of G up to conjugacy, found by joining class
// representatives with cyclic subgroups until nothing new appears. Classes
// are ordered by (order, smallest conjugate).
class SubgroupCatalog {
 public:
  explicit SubgroupCatalog(const PermGroup& g, std::size_t cap = kDefaultSubgroupCap);

  const std::vector<SubgroupClass>& classes() const noexcept { return classes_; }
  // Class id of a subgroup given by its members. Throws PreconditionError if
  // the set is not a subgroup found in the catalog.
  std::size_t class_of(const ElementSet& members) const;
  std::size_t total_subgroups() const noexcept;

 private:
  bool conjugate_into(const ElementSet& from_members, std::span<const Elem> from_gens,
                      const ElementSet& to) const;
  std::vector<std::size_t> fingerprint(const ElementSet& s) const;

  PermGroup g_;
  std::vector<SubgroupClass> classes_;
  std::vector<std::vector<std::size_t>> fingerprints_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::size_t, std::vector<std::pair<ElementSet, std::size_t>>> memo_;
};

std::vector<SubgroupClass> subgroups_up_to_conjugacy(const PermGroup& g,
                                                     std::size_t cap = kDefaultSubgroupCap);

// Elements of the ambient group sorted into the conjugacy classes of the
// subgroup `members` (conjugation by subgroup elements only). Each inner
// vector is sorted; classes are ordered by smallest member.
std::vector<std::vector<Elem>> subgroup_classes(const PermGroup& g, const ElementSet& members);

}  // namespace nbl
