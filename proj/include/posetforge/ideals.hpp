#ifndef POSETFORGE_IDEALS_HPP
#define POSETFORGE_IDEALS_HPP

// Poset vectors of a matrix A: the 0/1 vectors v with vA = v over the Boolean
// semiring. Since row i of A is the principal ideal of i, the product vA is
// the union of the rows indexed by supp(v), so the fixed points of v -> vA
// are exactly the characteristic vectors of order ideals. They form a finite
// distributive lattice under entrywise OR and AND, graded by support size,
// whose join-irreducible elements are the rows of A.

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posetforge/bits.hpp"
#include "posetforge/errors.hpp"
#include "posetforge/poset_matrix.hpp"

namespace posetforge {

struct IdealLattice {
  int n = 0;
  std::vector<IndexSet> vectors;               // sorted by length_lex_less
  std::vector<std::pair<int, int>> hasse;      // index pairs (lower, upper)

  bool operator==(const IdealLattice&) const = default;
};

// The Boolean vector-matrix product vA as union of rows over supp(v).
inline IndexSet bool_vector_product(IndexSet v, std::span<const IndexSet> rows) {
  IndexSet out = 0;
  for (IndexSet t = v; t; t &= t - 1) out |= rows[std::countr_zero(t)];
  return out;
}

inline bool is_poset_vector(const PosetMatrix& a, IndexSet v) {
  if (v & ~full_set(a.n()))
    throw validation_error("vector has bits beyond the ground set");
  return bool_vector_product(v, a.rows()) == v;
}

namespace detail {

// Depth-first include/exclude over the labels. Element i may join only when
// its strict down-set is already present; with natural labels that down-set
// lives entirely below i, so one ascending pass sees every ideal once.
template <class F>
void visit_ideals(std::span<const IndexSet> rows, F&& fn) {
  const int n = static_cast<int>(rows.size());
  auto rec = [&](auto&& self, int i, IndexSet cur) -> void {
    if (i == n) {
      fn(cur);
      return;
    }
    self(self, i + 1, cur);
    IndexSet down = rows[i] & ~bit(i);
    if (is_subset(down, cur)) self(self, i + 1, cur | bit(i));
  };
  rec(rec, 0, 0);
}

inline std::vector<IndexSet> ideal_words(std::span<const IndexSet> rows) {
  std::vector<IndexSet> out;
  visit_ideals(rows, [&](IndexSet v) { out.push_back(v); });
  std::sort(out.begin(), out.end(), length_lex_less);
  return out;
}

inline std::uint64_t ideal_count(std::span<const IndexSet> rows) {
  std::uint64_t c = 0;
  visit_ideals(rows, [&](IndexSet) { ++c; });
  return c;
}

}  // namespace detail

// All poset vectors of a, in length-lex order.
inline std::vector<IndexSet> poset_vector_words(const PosetMatrix& a) {
  return detail::ideal_words(a.rows());
}

inline std::uint64_t count_poset_vectors(const PosetMatrix& a) {
  return detail::ideal_count(a.rows());
}

// Full lattice with cover relations. Covers differ by exactly one element
// (the lattice is graded by support size), so edges out of v come from
// deleting one maximal element of supp(v).
inline IdealLattice enumerate_poset_vectors(const PosetMatrix& a) {
  IdealLattice lat;
  lat.n = a.n();
  lat.vectors = poset_vector_words(a);
  std::vector<IndexSet> up = strict_up_sets(a);
  auto index_of = [&](IndexSet w) {
    auto it = std::lower_bound(lat.vectors.begin(), lat.vectors.end(), w,
                               length_lex_less);
    return static_cast<int>(it - lat.vectors.begin());
  };
  for (int vi = 0; vi < static_cast<int>(lat.vectors.size()); ++vi) {
    IndexSet v = lat.vectors[vi];
    for (IndexSet t = v; t; t &= t - 1) {
      int x = std::countr_zero(t);
      if (up[x] & v) continue;  // x is not maximal in supp(v)
      lat.hasse.emplace_back(index_of(v & ~bit(x)), vi);
    }
  }
  std::sort(lat.hasse.begin(), lat.hasse.end());
  return lat;
}

// Union of the principal ideals of an antichain. Rejects comparable pairs.
inline IndexSet antichain_to_vector(const PosetMatrix& a, IndexSet s) {
  if (s & ~full_set(a.n()))
    throw validation_error("antichain has elements beyond the ground set");
  for (IndexSet t = s; t; t &= t - 1) {
    int i = std::countr_zero(t);
    IndexSet belowers = (a.row(i) & ~bit(i)) & s;
    if (belowers)
      throw validation_error("not an antichain: " +
                             std::to_string(std::countr_zero(belowers)) +
                             " below " + std::to_string(i));
  }
  IndexSet v = 0;
  for (IndexSet t = s; t; t &= t - 1) v |= a.row(std::countr_zero(t));
  return v;
}

// Maximal elements of an ideal's support; the inverse of antichain_to_vector.
inline IndexSet ideal_to_max_antichain(const PosetMatrix& a, IndexSet v) {
  if (!is_poset_vector(a, v))
    throw validation_error("vector is not a poset vector of the matrix");
  std::vector<IndexSet> up = strict_up_sets(a);
  IndexSet out = 0;
  for (IndexSet t = v; t; t &= t - 1) {
    int x = std::countr_zero(t);
    if (!(up[x] & v)) out |= bit(x);
  }
  return out;
}

// Entrywise OR and AND of two poset vectors; both results are again poset
// vectors (the lattice is closed under join and meet).
inline std::pair<IndexSet, IndexSet> lattice_join_meet(const PosetMatrix& a,
                                                       IndexSet u, IndexSet v) {
  if (!is_poset_vector(a, u) || !is_poset_vector(a, v))
    throw validation_error("join/meet operands must be poset vectors");
  return {u | v, u & v};
}

// Vectors covering exactly one lattice element. These are the rows of A.
inline std::vector<IndexSet> join_irreducibles(const IdealLattice& lat) {
  std::vector<int> below(lat.vectors.size(), 0);
  for (auto [lo, hi] : lat.hasse) ++below[hi];
  std::vector<IndexSet> out;
  for (std::size_t i = 0; i < lat.vectors.size(); ++i)
    if (below[i] == 1) out.push_back(lat.vectors[i]);
  return out;
}

}  // namespace posetforge

#endif
