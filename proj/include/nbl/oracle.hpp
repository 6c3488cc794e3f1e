#pragma once
// Brute-force reference implementations used by the verify suites and the
// tests. Nothing here calls the enumerator, the orbit engine or the
// subgroup code of the library; only Perm is shared.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "nbl/perm.hpp"

namespace oracle {

using nbl::Perm;
using Tuple = std::vector<std::size_t>;

struct Group {
  std::size_t degree = 0;
  std::vector<Perm> elems;                 // sorted
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> inverse;
  std::vector<std::size_t> class_of;       // classes numbered by smallest member
  std::vector<std::vector<std::size_t>> classes;

  std::size_t order() const { return elems.size(); }
  std::size_t index(const Perm& p) const;
  std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }
  // b a b^-1
  std::size_t conj(std::size_t a, std::size_t b) const { return table[table[b][a]][inverse[b]]; }
};

Group make_group(std::size_t degree, const std::vector<Perm>& gens);

// Sorted members of the subgroup generated by `gens`.
std::vector<std::size_t> generated(const Group& g, const Tuple& gens);

struct Filter {
  enum class Cover { Any, Galois, Transitive };
  bool projective = true;
  bool unmarked = false;
  Cover cover = Cover::Any;
  std::vector<std::size_t> subgroup;  // Galois target, sorted; empty = whole group
  std::optional<std::vector<std::size_t>> classes;
  std::optional<std::map<std::size_t, std::size_t>> profile;
};

// Every tuple in G^r passing the filter, in lexicographic order.
std::vector<Tuple> naive_nielsen(const Group& g, std::size_t r, const Filter& f);
// Every tuple of length r with entries in `alphabet`, lexicographic when
// the alphabet is sorted.
std::vector<Tuple> alphabet_tuples(const std::vector<std::size_t>& alphabet, std::size_t r);
// The members of `candidates` passing the filter, order kept.
std::vector<Tuple> filter_tuples(const Group& g, const std::vector<Tuple>& candidates,
                                 const Filter& f);

// Orbit labels by union-find over single braid moves (Q_i in the stated
// formula, applied to each tuple). Label = position of the smallest tuple of
// the block in `tuples`. Unmarked moves are canonicalized by brute force.
std::vector<std::size_t> union_find_labels(const Group& g, const std::vector<Tuple>& tuples,
                                           bool unmarked);

std::size_t block_count(const std::vector<std::size_t>& labels);

// Number of braid orbits of marked projective tuples with entries in
// `alphabet` (closed under conjugation) generating the whole group. Group
// order at most 64. Memory: 4 * |alphabet|^(r-1) bytes.
std::uint64_t dense_component_count(const Group& g, const std::vector<std::size_t>& alphabet,
                                    std::size_t r);

// #{a in [0, r] : a = 2r mod 3}: orbits of A3-tuples with a copies of one
// 3-cycle and r - a of the other, product 1.
std::uint64_t a3_orbit_count(std::size_t r);

}  // namespace oracle
