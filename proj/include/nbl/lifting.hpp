#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nbl/braid.hpp"

namespace nbl {

// A validated central extension  cover -> base  together with a class set c
// and a chosen lift of each class representative. Every element of the
// classes in c gets the class-consistent lift  x~ rho~ x~^{-1}  where
// rho^x = g.
class CentralExtension {
 public:
  // Validates: homomorphism, surjectivity, central kernel, lifts projecting
  // to their representatives, c-admissibility. Throws ExtensionRejected.
  // `projection` gives the image of each listed cover element; the listed
  // elements must generate the cover. Missing lifts default to the smallest
  // preimage.
  static CentralExtension build(PermGroup base, PermGroup cover,
                                const std::vector<std::pair<Perm, Perm>>& projection,
                                std::vector<ClassId> classes,
                                const std::map<ClassId, Perm>& lifts = {});

  // Gamma~ = Gamma with the identity projection.
  static CentralExtension identity(PermGroup base, std::vector<ClassId> classes);

  const PermGroup& base() const noexcept { return base_; }
  const PermGroup& cover() const noexcept { return cover_; }
  const std::vector<ClassId>& classes() const noexcept { return classes_; }
  const std::vector<Elem>& kernel() const noexcept { return kernel_; }

  Elem project(Elem cover_element) const { return projection_.at(cover_element); }
  // Chosen lift of a class representative.
  Elem representative_lift(ClassId c) const;
  // Class-consistent lift of an element of a class in c; nullopt otherwise.
  std::optional<Elem> lift(Elem g) const;
  bool in_scope(Elem g) const { return lift(g).has_value(); }

 private:
  PermGroup base_;
  PermGroup cover_;
  std::vector<ClassId> classes_;
  std::vector<Elem> projection_;  // cover index -> base index
  std::vector<Elem> kernel_;
  std::map<ClassId, Elem> rep_lifts_;
  std::vector<std::optional<Elem>> lifts_;  // base index -> lift
};

// Parses group specs and cycle strings. `classes` are representative cycle
// strings of base classes; `lifts` pairs a class representative with the
// cover element chosen as its lift.
CentralExtension load_central_extension(
    const PermGroup& base, const std::string& cover_spec,
    const std::vector<std::pair<std::string, std::string>>& projection,
    const std::vector<std::string>& classes,
    const std::vector<std::pair<std::string, std::string>>& lifts = {});

// Binary tetrahedral group SL(2,3) on the 8 nonzero vectors of F_3^2,
// projecting onto A4 (parse_group_spec("A4")) through its action on the 4
// lines. Scope: both 3-cycle classes unless `classes` is given.
CentralExtension builtin_a4_extension(std::optional<std::vector<ClassId>> classes = std::nullopt);

// Product of the class-consistent lifts, left to right. Throws
// PreconditionError for entries outside c or a tuple over another group.
LiftValue lifting_invariant(const NielsenTuple& t, const CentralExtension& e);

struct CpfvRow {
  std::size_t r = 0;
  std::vector<Elem> group;  // sorted members of <entries>
  std::size_t group_order = 0;
  ICIProfile ici;
  LiftValue lift;
  std::vector<Component> components;  // sorted by canonical_rep
};

struct CpfvReport {
  std::vector<CpfvRow> rows;  // sorted by (r, group, ici, lift)
  std::map<std::size_t, std::size_t> collisions;  // r -> keys naming > 1 component
  // Smallest r in range from which on no key names two components.
  std::optional<std::size_t> threshold;
  bool complete = true;
  std::string reason;
};

// Groups the components of each r by (generated subgroup, ICI, lifting
// value). The spec's class constraint is intersected with the extension's
// scope.
CpfvReport cpfv_probe(const PermGroup& g, const CentralExtension& e, const EnumerationSpec& spec,
                      std::size_t r_min, std::size_t r_max, const OrbitOptions& options = {});

struct RationalityResult {
  bool rational = true;
  std::optional<long long> witness_m;
  std::optional<ClassId> moved_class;
};

// Whether the profile is fixed by every class powering C -> C^m with m prime
// to |G|, m running over the units modulo exp(G).
RationalityResult is_globally_rational(const PermGroup& g, const ICIProfile& profile);

}  // namespace nbl
