#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nbl/group.hpp"
#include "nbl/subgroups.hpp"

namespace nbl {

enum class Base { Projective, Affine };
enum class Equivalence { Marked, Unmarked };

// Inertia profile: multiplicity of each conjugacy class among a tuple's
// entries. Class ids refer to the ambient group's ClassTable unless the
// profile came from a refined ici() call.
struct ICIProfile {
  std::map<ClassId, std::size_t> counts;

  std::size_t total() const noexcept;
  // Multiset union.
  ICIProfile& operator+=(const ICIProfile& other);
  friend bool operator==(const ICIProfile&, const ICIProfile&) = default;
  friend auto operator<=>(const ICIProfile& a, const ICIProfile& b) { return a.counts <=> b.counts; }
};

struct AnyClass {
  friend bool operator==(AnyClass, AnyClass) = default;
};
// Either no restriction, a set of allowed classes, or an exact profile.
using ClassConstraint = std::variant<AnyClass, std::vector<ClassId>, ICIProfile>;

struct CoverMode {
  enum class Kind { Any, Galois, Transitive };
  Kind kind = Kind::Any;
  // Galois: generators of the subgroup the entries must generate exactly.
  // Empty means the whole group (connected covers).
  std::vector<Elem> subgroup;

  static CoverMode any() { return {}; }
  static CoverMode galois(std::vector<Elem> subgroup_gens = {}) {
    return {Kind::Galois, std::move(subgroup_gens)};
  }
  static CoverMode transitive() { return {Kind::Transitive, {}}; }
};

struct EnumerationSpec {
  Base base = Base::Projective;
  Equivalence equivalence = Equivalence::Marked;
  CoverMode cover;
  ClassConstraint classes = AnyClass{};
};

struct Budget {
  std::uint64_t max_tuples = 10'000'000;
  std::uint64_t max_orbit = 10'000'000;
  std::chrono::seconds timeout{300};
};

// Wall-clock budget; `expired()` is cheap enough for inner loops when
// polled every few thousand steps.
class Deadline {
 public:
  explicit Deadline(std::chrono::seconds timeout)
      : end_(std::chrono::steady_clock::now() + timeout) {}
  bool expired() const { return std::chrono::steady_clock::now() >= end_; }

 private:
  std::chrono::steady_clock::time_point end_;
};

// An ordered tuple of nontrivial elements of a group.
class NielsenTuple {
 public:
  NielsenTuple() = default;
  // Throws PreconditionError if an entry is the identity or out of range.
  NielsenTuple(PermGroup group, std::vector<Elem> entries);
  static NielsenTuple from_cycles(const PermGroup& group, const std::vector<std::string>& cycles);

  const PermGroup& group() const noexcept { return group_; }
  std::span<const Elem> entries() const noexcept { return entries_; }
  const std::vector<Elem>& entry_vector() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  Elem operator[](std::size_t i) const { return entries_.at(i); }
  Elem product() const noexcept { return group_.product(entries_); }
  std::vector<std::string> cycles() const;
  // Entrywise conjugate t^g.
  NielsenTuple conjugated(Elem g) const;
  NielsenTuple concatenated(const NielsenTuple& other) const;

  friend bool operator==(const NielsenTuple& a, const NielsenTuple& b) {
    return a.entries_ == b.entries_;
  }
  friend auto operator<=>(const NielsenTuple& a, const NielsenTuple& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  PermGroup group_;
  std::vector<Elem> entries_;
};

struct EnumerationStats {
  std::uint64_t emitted = 0;
  bool complete = true;
  std::string stop_reason;
};

using TupleSink = std::function<void(std::span<const Elem>)>;

// Streams every tuple of length r satisfying `spec`, once, in lexicographic
// order. Unmarked enumeration emits canonical representatives only. Stops
// early (complete = false) when the tuple or time budget is hit.
EnumerationStats enumerate_nielsen(const PermGroup& g, std::size_t r, const EnumerationSpec& spec,
                                   const TupleSink& sink, const Budget& budget = {});

// Materialized enumerate_nielsen; throws BudgetExceeded instead of
// truncating.
std::vector<NielsenTuple> collect_nielsen(const PermGroup& g, std::size_t r,
                                          const EnumerationSpec& spec, const Budget& budget = {});

// Whether a tuple satisfies every constraint of `spec` (including being
// canonical when the spec is unmarked).
bool satisfies(const PermGroup& g, std::span<const Elem> entries, const EnumerationSpec& spec);

// Lexicographically smallest entrywise conjugate, writing into `out`.
void canonical_form(const PermGroup& g, std::span<const Elem> entries, std::span<Elem> out);
NielsenTuple canonicalize(const NielsenTuple& t, Equivalence equivalence);

ICIProfile ici(const PermGroup& g, std::span<const Elem> entries);
ICIProfile ici(const NielsenTuple& t);
// Profile over the classes of the subgroup H (H's own ClassTable). Throws
// PreconditionError if an entry is not in H.
ICIProfile ici(const NielsenTuple& t, const PermGroup& refine);

// Elements allowed by a class constraint (nontrivial, sorted).
std::vector<Elem> allowed_elements(const PermGroup& g, const ClassConstraint& classes);

}  // namespace nbl
