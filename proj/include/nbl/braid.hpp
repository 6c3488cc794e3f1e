#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nbl/nielsen.hpp"

namespace nbl {

enum class Direction { Forward, Inverse };

// Q_i with i in 1..r-1.
//   Forward: (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^{-1}, g_i)
//   Inverse: (g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^{-1} g_i g_{i+1})
// Throws PreconditionError for an index out of range.
NielsenTuple apply_braid(const NielsenTuple& t, std::size_t i, Direction dir = Direction::Forward);

// Zero-based in-place variant used by the orbit engine: acts on positions
// (pos, pos+1).
inline void braid_in_place(const PermGroup& g, std::span<Elem> entries, std::size_t pos,
                           Direction dir) noexcept {
  const Elem a = entries[pos];
  const Elem b = entries[pos + 1];
  if (dir == Direction::Forward) {
    entries[pos] = g.conj(b, a);
    entries[pos + 1] = a;
  } else {
    entries[pos] = b;
    entries[pos + 1] = g.conj(a, g.inv(b));
  }
}

// Value of a lifting invariant: an element of the cover group of a central
// extension (see lifting.hpp).
struct LiftValue {
  Elem element = 0;
  std::size_t degree = 0;
  friend bool operator==(const LiftValue&, const LiftValue&) = default;
  friend auto operator<=>(const LiftValue&, const LiftValue&) = default;
};

// A braid orbit, identified by its smallest (equivalence-canonical) member.
struct Component {
  NielsenTuple canonical_rep;
  std::uint64_t orbit_size = 0;
  std::size_t r = 0;
  std::size_t group_order = 0;
  // Subgroup-conjugacy-class id of <entries>; empty above the
  // subgroup-enumeration cap.
  std::optional<std::size_t> group_class_id;
  ICIProfile ici;
  Base base = Base::Projective;
  Equivalence equivalence = Equivalence::Marked;
  std::optional<LiftValue> lifting;

  bool same_component(const Component& other) const {
    return r == other.r && base == other.base && equivalence == other.equivalence &&
           canonical_rep == other.canonical_rep;
  }
};

struct OrbitOptions {
  Budget budget;
  unsigned threads = 1;
  // Re-check product, ICI and generated subgroup on every visited state.
  bool check_invariants = false;
  // Compute Component::group_class_id (needs the subgroup catalog).
  bool classify_groups = true;
};

// Breadth-first closure of t under Q_1^{+-1}, ..., Q_{r-1}^{+-1}. In
// unmarked mode states are canonicalized before deduplication. Throws
// BudgetExceeded when the orbit outgrows budget.max_orbit or the deadline.
Component orbit_of(const NielsenTuple& t, const EnumerationSpec& spec,
                   const OrbitOptions& options = {});

struct OrbitResult {
  Component component;
  std::vector<std::vector<Elem>> members;  // equivalence-canonical, sorted
};

OrbitResult orbit_members(const NielsenTuple& t, const EnumerationSpec& spec,
                          const OrbitOptions& options = {});

// Members of the orbit (equivalence-canonical), sorted.
std::vector<NielsenTuple> orbit_elements(const NielsenTuple& t, const EnumerationSpec& spec,
                                         const OrbitOptions& options = {});

struct Decomposition {
  std::vector<Component> components;  // sorted by canonical_rep
  std::uint64_t tuples = 0;           // canonical tuples enumerated
  bool complete = true;
  std::string phase;   // "enumeration" or "orbit" when incomplete
  std::string reason;
};

// Partitions the Nielsen set into braid orbits. Tuples are consumed in
// enumeration order; each unvisited one seeds a new orbit.
Decomposition decompose_components(const PermGroup& g, std::size_t r, const EnumerationSpec& spec,
                                   const OrbitOptions& options = {});

// A decomposition that also remembers which component every tuple of the
// Nielsen set belongs to. Meant for exhaustive checks at desk scale.
class ComponentAtlas {
 public:
  static ComponentAtlas build(const PermGroup& g, std::size_t r, const EnumerationSpec& spec,
                              const OrbitOptions& options = {});

  const std::vector<Component>& components() const noexcept { return components_; }
  // Index into components() of the orbit containing `entries` (after
  // canonicalization in unmarked mode), or nullopt when the tuple is not in
  // the Nielsen set.
  std::optional<std::size_t> component_of(std::span<const Elem> entries) const;
  // All tuples of the Nielsen set with their component index, in
  // lexicographic order.
  const std::map<std::vector<Elem>, std::size_t>& labels() const noexcept { return labels_; }

 private:
  PermGroup g_;
  Equivalence equivalence_ = Equivalence::Marked;
  std::vector<Component> components_;
  std::map<std::vector<Elem>, std::size_t> labels_;
};

struct PeriodInfo {
  std::size_t period = 0;
  long long onset = 0;  // first r of the periodic range
};

// Smallest (period u, onset R) with count(r + u) == count(r) for every
// recorded r >= R with r + u recorded, requiring at least 2u recorded
// points strictly beyond R. Points must be consecutive in r.
std::optional<PeriodInfo> detect_period(const std::map<long long, std::uint64_t>& points);

struct CountSeries {
  std::string group;
  EnumerationSpec spec;
  std::map<long long, std::uint64_t> points;
  std::optional<PeriodInfo> period;  // observed within range only
  bool truncated = false;
  long long truncated_at = 0;
  std::string reason;
};

CountSeries count_series(const PermGroup& g, const EnumerationSpec& spec, long long r_min,
                         long long r_max, const OrbitOptions& options = {});

}  // namespace nbl
