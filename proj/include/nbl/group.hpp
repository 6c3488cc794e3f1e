#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbl/perm.hpp"

namespace nbl {

// Index of an element inside its group's cached element list. Elements are
// sorted lexicographically by image sequence, so index order is the
// library-wide tie-breaking order and the identity is always index 0.
using Elem = std::uint16_t;
using ClassId = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 20000;
inline constexpr std::size_t kMaxOrderCap = 65535;

struct ConjugacyClass {
  Elem representative;        // smallest member
  std::vector<Elem> members;  // sorted
};

// Conjugacy classes ordered by representative.
class ClassTable {
 public:
  ClassTable() = default;
  ClassTable(std::vector<ConjugacyClass> classes, std::vector<ClassId> index);

  std::size_t size() const noexcept { return classes_.size(); }
  const ConjugacyClass& operator[](ClassId c) const { return classes_.at(c); }
  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
  ClassId class_of(Elem e) const { return index_.at(e); }
  Elem representative(ClassId c) const { return classes_.at(c).representative; }

 private:
  std::vector<ConjugacyClass> classes_;
  std::vector<ClassId> index_;
};

namespace detail {
struct GroupData;
}

class SubgroupCatalog;

// A finite permutation group with its element set cached. Cheap to copy;
// copies share the immutable cached data and may be read concurrently.
class PermGroup {
 public:
  PermGroup() = default;

  // Closes `generators` under the product. Throws CapExceeded if the order
  // would exceed `order_cap`, DegenerateInput if a generator has the wrong
  // degree.
  static PermGroup generate(std::size_t degree, std::vector<Perm> generators,
                            std::string name, std::size_t order_cap = kDefaultOrderCap);

  bool valid() const noexcept { return data_ != nullptr; }
  std::size_t order() const noexcept;
  std::size_t degree() const noexcept;
  const std::string& name() const noexcept;
  const std::vector<Perm>& generators() const noexcept;

  const Perm& element(Elem e) const;
  std::optional<Elem> find(const Perm& p) const;
  bool contains(const Perm& p) const { return find(p).has_value(); }
  // Like find(), but throws ForeignElement.
  Elem index_of(const Perm& p) const;

  static constexpr Elem identity() noexcept { return 0; }
  Elem mul(Elem a, Elem b) const noexcept;
  Elem inv(Elem a) const noexcept;
  // a^b := b a b^{-1}
  Elem conj(Elem a, Elem b) const noexcept { return mul(mul(b, a), inv(b)); }
  Elem pow(Elem a, long long m) const;
  std::size_t element_order(Elem a) const noexcept;
  std::size_t exponent() const noexcept;
  Elem product(std::span<const Elem> entries) const noexcept;

  const ClassTable& classes() const noexcept;
  // Subgroups up to conjugacy, built on first use and shared by all copies.
  // Throws CapExceeded above the subgroup-enumeration cap.
  const SubgroupCatalog& subgroup_catalog() const;

  // True when both handles share the same cached data.
  bool same_as(const PermGroup& other) const noexcept { return data_ == other.data_; }

 private:
  // Non-owning handle for caches stored inside the group data itself.
  PermGroup borrowed() const;

  std::shared_ptr<const detail::GroupData> data_;
};

// Same element set (hence the same element indices).
bool same_group(const PermGroup& a, const PermGroup& b);

const ClassTable& conjugacy_classes(const PermGroup& g);

// The class of rep(c)^m. For classes with at least two members the result
// is cross-checked against a second member.
ClassId class_power(const PermGroup& g, ClassId c, long long m);

// Group DSL: S<n>, A<n>, D<n>, C<n>, GDih(n1,...,nk), and
// perm(<degree>; <cycles>, <cycles>, ...).
PermGroup parse_group_spec(std::string_view spec, std::size_t order_cap = kDefaultOrderCap);

// Whitespace-stripped form of a group spec; used as the group's name and in
// cache keys.
std::string normalize_group_spec(std::string_view spec);

}  // namespace nbl
