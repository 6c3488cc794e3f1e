#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nbl {

using Point = std::uint32_t;

// A permutation of {0, ..., degree-1}, stored as its image sequence.
// Printed and parsed 1-based in cycle notation, e.g. "(1 2)(3 4)"; the
// identity prints as "()".
//
// Product convention: g * h applies g first, then h.
class Perm {
 public:
  Perm() = default;
  // Throws DegenerateInput unless `images` is a bijection of its index set.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);
  // Parses a product of disjoint cycles. Whitespace inside the parentheses
  // is ignored; points inside a cycle may be separated by blanks or commas.
  static Perm from_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](Point i) const noexcept { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }
  bool is_identity() const noexcept;

  Perm then(const Perm& h) const;
  Perm inverse() const;
  std::string cycles() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

inline Perm operator*(const Perm& g, const Perm& h) { return g.then(h); }

// Splits "(1 2)(3 4), (1 3)" style lists on commas that sit outside
// parentheses. Empty items are dropped.
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');

}  // namespace nbl
