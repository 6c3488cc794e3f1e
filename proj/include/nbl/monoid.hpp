#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nbl/braid.hpp"

namespace nbl {

// The empty component (r = 0), unit of the concatenation monoid.
Component unit_component(const PermGroup& g, Base base, Equivalence equivalence);

// Memo of braid orbits met so far: every member of a computed orbit is
// remembered, so later lookups of tuples in the same orbit are free.
// Not thread-safe.
class ComponentResolver {
 public:
  ComponentResolver(PermGroup g, Base base, Equivalence equivalence, OrbitOptions options = {});

  const PermGroup& group() const noexcept { return g_; }
  Base base() const noexcept { return spec_.base; }
  Equivalence equivalence() const noexcept { return spec_.equivalence; }

  const Component& resolve(std::span<const Elem> entries);
  const Component& resolve(const NielsenTuple& t) { return resolve(t.entries()); }
  std::size_t orbits_computed() const noexcept { return components_.size(); }

 private:
  PermGroup g_;
  EnumerationSpec spec_;
  OrbitOptions options_;
  std::deque<Component> components_;
  std::map<std::vector<Elem>, std::size_t> members_;
};

// Component of rep(x) followed by rep(y). Unmarked inputs must each be the
// unit or generate the whole group; mixing groups, bases or equivalences is
// rejected. `samples` random braid walks check that other representatives
// give the same answer.
Component concat(const Component& x, const Component& y, ComponentResolver& resolver,
                 std::size_t samples = 2);
Component concat(const Component& x, const Component& y, const OrbitOptions& options = {});

// Component of the entrywise conjugate rep(y)^gamma.
Component conjugate_component(const Component& y, Elem gamma, ComponentResolver& resolver);
Component conjugate_component(const Component& y, Elem gamma, const OrbitOptions& options = {});

struct CommutationReport {
  Component lhs;  // x . y
  Component rhs;  // y^(prod x) . x
  bool holds = false;
};

CommutationReport commutation_check(const Component& x, const Component& y,
                                    ComponentResolver& resolver);
CommutationReport commutation_check(const Component& x, const Component& y,
                                    const OrbitOptions& options = {});

struct TwistReport {
  std::size_t h_order = 0;
  std::size_t k_order = 0;
  std::size_t join_order = 0;
  // <H,K> = HK as sets.
  bool join_is_product = false;
  Component product;             // x . y
  std::vector<Component> twists; // distinct, sorted by canonical_rep
  bool singleton = false;        // twists == {x . y}
};

// All x^gamma . y^delta with gamma, delta in <H,K> and <H^gamma, K^delta> =
// <H,K>, where H, K are the groups of x, y. Marked equivalence only.
TwistReport hm_twist_set(const Component& x, const Component& y, ComponentResolver& resolver);
TwistReport hm_twist_set(const Component& x, const Component& y, const OrbitOptions& options = {});

struct ClassSplit {
  ClassId ambient = 0;
  // H-classes contained in ambient ∩ H, each sorted.
  std::vector<std::vector<Elem>> pieces;
};

struct SplittingDatum {
  std::optional<std::size_t> subgroup_id;  // catalog class of H when known
  std::size_t subgroup_order = 0;
  std::vector<ClassId> classes;
  std::size_t omega = 0;
  std::vector<ClassSplit> breakdown;  // one entry per class of c, in order
};

// Omega_c(H) = sum over C in c meeting H of (#H-classes in C∩H - 1).
SplittingDatum splitting_number(const PermGroup& g, const ElementSet& h,
                                const std::vector<ClassId>& c);
SplittingDatum splitting_number(const PermGroup& g, std::size_t subgroup_class_id,
                                const std::vector<ClassId>& c);

struct NonSplitReport {
  bool holds = true;
  std::optional<SplittingDatum> witness;  // first subgroup class that splits
};

NonSplitReport is_nonsplitting(const PermGroup& g, const std::vector<ClassId>& c);

struct HfResult {
  std::uint64_t count = 0;
  std::size_t tuple_length = 0;
  bool complete = true;
  std::string reason;
  // Prescribed profile: ambient classes (collective) or classes of H itself
  // (strict per-class reading).
  ICIProfile profile;
};

// Components of connected projective H-covers, entries in H generating H,
// where each C in c contributes r*xi_C entries in total (collective reading)
// or r*xi_C entries from each H-class inside C∩H (strict reading). Marked.
HfResult hf_count(const PermGroup& g, const std::vector<Elem>& h_generators,
                  const std::map<ClassId, std::size_t>& xi, std::size_t r,
                  bool strict_per_class = false, const OrbitOptions& options = {});

}  // namespace nbl
