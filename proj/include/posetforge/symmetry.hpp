#ifndef POSETFORGE_SYMMETRY_HPP
#define POSETFORGE_SYMMETRY_HPP

// Automorphisms of a poset matrix: permutations q with entry (q(i), q(j)) of
// the conjugated matrix equal to a_{i,j}. The group decomposes along twin
// classes (elements sharing strict down-set and strict up-set): the full
// symmetric group acts freely inside each class, and what remains is the
// size-preserving automorphism group H of the twin quotient, giving
// |Aut(A)| = (prod |class|!) * |H|. Orbits of the group acting on poset
// vectors classify the v-extensions of A up to isomorphism, with Burnside's
// lemma counting them through fixed vectors.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "posetforge/bits.hpp"
#include "posetforge/errors.hpp"
#include "posetforge/ideals.hpp"
#include "posetforge/poset_matrix.hpp"

namespace posetforge {

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
  }

  static Permutation from_images(std::vector<int> img) {
    const int n = static_cast<int>(img.size());
    IndexSet seen = 0;
    for (int v : img) {
      if (v < 0 || v >= n || contains(seen, v))
        throw validation_error("images do not form a permutation");
      seen |= bit(v);
    }
    return Permutation(std::move(img));
  }

  int n() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < n(); ++i) inv[img_[i]] = i;
    return Permutation(std::move(inv));
  }

  bool operator==(const Permutation&) const = default;

 private:
  explicit Permutation(std::vector<int> img) : img_(std::move(img)) {}
  std::vector<int> img_;
};

// (p * q)(i) = p(q(i)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.n() != q.n()) throw validation_error("composition size mismatch");
  std::vector<int> img(p.n());
  for (int i = 0; i < p.n(); ++i) img[i] = p(q(i));
  return Permutation::from_images(std::move(img));
}

struct PermGroup {
  int n = 0;
  std::vector<Permutation> elements;

  std::uint64_t order() const { return elements.size(); }
};

// Conjugation: result entry (q(i), q(j)) equals a_{i,j}. Generally not lower
// triangular, hence a plain Boolean matrix.
inline BoolMatrix apply_permutation(const PosetMatrix& a, const Permutation& q) {
  if (q.n() != a.n()) throw validation_error("permutation size mismatch");
  BoolMatrix out{a.n(), std::vector<IndexSet>(a.n(), 0)};
  for (int i = 0; i < a.n(); ++i)
    for (IndexSet t = a.row(i); t; t &= t - 1)
      out.rows[q(i)] |= bit(q(std::countr_zero(t)));
  return out;
}

// The vector action matching conjugation of extensions: supp moves forward
// through q, so extending by v then relabeling equals extending by v * q.
inline IndexSet act_on_vector(IndexSet v, const Permutation& q) {
  IndexSet out = 0;
  for (IndexSet t = v; t; t &= t - 1) out |= bit(q(std::countr_zero(t)));
  return out;
}

inline bool is_automorphism(const PosetMatrix& a, const Permutation& q) {
  return q.n() == a.n() && apply_permutation(a, q).rows == a.rows();
}

// Materializing a group larger than this refuses rather than thrash; order
// queries that only need the number should go through aut_order_via_twins.
inline constexpr std::uint64_t kMaxGroupElements = 1u << 20;

// Backtracking search for all automorphisms. Positions are filled in an order
// sorted by (row-sum, column-sum, twin-class id), ties by index; a candidate
// image must match the source's row-sum, column-sum, and twin-class size,
// and must preserve every entry against the images placed so far.
inline PermGroup automorphism_group(const PosetMatrix& a) {
  const int n = a.n();
  std::vector<IndexSet> up = strict_up_sets(a);
  std::vector<int> rowsum(n), colsum(n), class_of(n), class_size(n);
  for (int i = 0; i < n; ++i) {
    rowsum[i] = set_size(a.row(i));
    colsum[i] = set_size(up[i]) + 1;
  }
  {
    std::vector<std::pair<IndexSet, IndexSet>> keys;
    for (int x = 0; x < n; ++x) {
      std::pair<IndexSet, IndexSet> k{a.row(x) & ~bit(x), up[x]};
      auto it = std::find(keys.begin(), keys.end(), k);
      class_of[x] = static_cast<int>(it - keys.begin());
      if (it == keys.end()) keys.push_back(k);
    }
    std::vector<int> counts(keys.size(), 0);
    for (int x = 0; x < n; ++x) ++counts[class_of[x]];
    for (int x = 0; x < n; ++x) class_size[x] = counts[class_of[x]];
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    auto kx = std::tuple(rowsum[x], colsum[x], class_of[x], x);
    auto ky = std::tuple(rowsum[y], colsum[y], class_of[y], y);
    return kx < ky;
  });

  PermGroup g;
  g.n = n;
  std::vector<int> img(n, -1);
  IndexSet used = 0;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      g.elements.push_back(Permutation::from_images(img));
      if (g.elements.size() > kMaxGroupElements)
        throw capacity_error("automorphism group too large to materialize");
      return;
    }
    int x = order[pos];
    for (int y = 0; y < n; ++y) {
      if (contains(used, y)) continue;
      if (rowsum[y] != rowsum[x] || colsum[y] != colsum[x]) continue;
      if (class_size[y] != class_size[x]) continue;
      bool ok = true;
      for (int k = 0; k < pos && ok; ++k) {
        int w = order[k];
        ok = a.entry(x, w) == a.entry(y, img[w]) &&
             a.entry(w, x) == a.entry(img[w], y);
      }
      if (!ok) continue;
      img[x] = y;
      used |= bit(y);
      self(self, pos + 1);
      used &= ~bit(y);
      img[x] = -1;
    }
  };
  rec(rec, 0);
  std::sort(g.elements.begin(), g.elements.end(),
            [](const Permutation& p, const Permutation& q) {
              return p.images() < q.images();
            });
  return g;
}

struct TwinDecomposition {
  std::vector<IndexSet> classes;   // ordered by minimum element
  std::vector<int> class_sizes;
  std::vector<int> class_of;       // element -> class index
  std::vector<int> representatives;  // minimum element of each class
  PosetMatrix quotient;
};

// Twin classes: x and y are twins iff they share strict down-set and strict
// up-set. Each class is an antichain; collapsing classes to their minimum
// representatives yields a naturally labeled quotient.
inline TwinDecomposition twin_decomposition(const PosetMatrix& a) {
  const int n = a.n();
  std::vector<IndexSet> up = strict_up_sets(a);
  TwinDecomposition d;
  std::vector<std::pair<IndexSet, IndexSet>> keys;
  d.class_of.resize(n);
  for (int x = 0; x < n; ++x) {
    std::pair<IndexSet, IndexSet> k{a.row(x) & ~bit(x), up[x]};
    auto it = std::find(keys.begin(), keys.end(), k);
    int c = static_cast<int>(it - keys.begin());
    if (it == keys.end()) {
      keys.push_back(k);
      d.classes.push_back(0);
      d.representatives.push_back(x);
    }
    d.class_of[x] = c;
    d.classes[c] |= bit(x);
  }
  const int r = static_cast<int>(d.classes.size());
  d.class_sizes.resize(r);
  for (int c = 0; c < r; ++c) d.class_sizes[c] = set_size(d.classes[c]);
  std::vector<IndexSet> qrows(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= i; ++j)
      if (a.entry(d.representatives[i], d.representatives[j])) qrows[i] |= bit(j);
  d.quotient = PosetMatrix::from_rows(std::move(qrows));
  return d;
}

// Automorphisms of the quotient that preserve the class sizes: the H factor
// of the decomposition |Aut(A)| = (prod sizes!) * |H|.
inline PermGroup size_preserving_subgroup(const PosetMatrix& quotient,
                                          const std::vector<int>& sizes) {
  if (static_cast<int>(sizes.size()) != quotient.n())
    throw validation_error("one size is required per quotient element");
  PermGroup g = automorphism_group(quotient);
  PermGroup h;
  h.n = g.n;
  for (const Permutation& q : g.elements) {
    bool keep = true;
    for (int i = 0; i < g.n && keep; ++i) keep = sizes[q(i)] == sizes[i];
    if (keep) h.elements.push_back(q);
  }
  return h;
}

inline std::uint64_t aut_order_via_twins(const PosetMatrix& a) {
  TwinDecomposition d = twin_decomposition(a);
  std::uint64_t total = size_preserving_subgroup(d.quotient, d.class_sizes).order();
  for (int s : d.class_sizes)
    for (int k = 2; k <= s; ++k)
      if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(k), &total))
        throw capacity_error("automorphism group order overflows 64 bits");
  return total;
}

struct OrbitPartition {
  int n = 0;
  std::vector<std::vector<IndexSet>> orbits;  // members sorted length-lex

  std::uint64_t class_count() const { return orbits.size(); }
};

// Orbits of Aut(A) on the poset vectors, listed by their length-lex minimal
// members in lattice order.
inline OrbitPartition orbits_on_vectors(const PosetMatrix& a) {
  PermGroup g = automorphism_group(a);
  std::vector<IndexSet> vecs = poset_vector_words(a);
  OrbitPartition part;
  part.n = a.n();
  std::vector<IndexSet> seen;
  for (IndexSet v : vecs) {
    if (std::binary_search(seen.begin(), seen.end(), v)) continue;
    std::vector<IndexSet> orbit;
    for (const Permutation& q : g.elements) orbit.push_back(act_on_vector(v, q));
    std::sort(orbit.begin(), orbit.end(), length_lex_less);
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    for (IndexSet w : orbit) seen.push_back(w);
    std::sort(seen.begin(), seen.end());
    part.orbits.push_back(std::move(orbit));
  }
  return part;
}

// Number of poset vectors fixed by one automorphism.
inline std::uint64_t fix_count(const PosetMatrix& a, const Permutation& q) {
  if (!is_automorphism(a, q))
    throw validation_error("permutation is not an automorphism");
  std::uint64_t c = 0;
  for (IndexSet v : poset_vector_words(a))
    if (act_on_vector(v, q) == v) ++c;
  return c;
}

// Orbit count as the average number of fixed vectors over the group.
inline std::uint64_t burnside_count(const PosetMatrix& a) {
  PermGroup g = automorphism_group(a);
  std::vector<IndexSet> vecs = poset_vector_words(a);
  std::uint64_t total = 0;
  for (const Permutation& q : g.elements) {
    for (IndexSet v : vecs)
      if (act_on_vector(v, q) == v) ++total;
  }
  if (total % g.order() != 0)
    throw std::logic_error("fixed-vector sum not divisible by group order");
  return total / g.order();
}

// Two sufficient conditions for a trivial automorphism group: all poset
// vectors have distinct support sizes; all (row-sum, column-sum) pairs are
// distinct.
inline std::pair<bool, bool> triviality_predicates(const PosetMatrix& a) {
  const int n = a.n();
  std::vector<IndexSet> vecs = poset_vector_words(a);
  bool supports = true;
  for (std::size_t i = 1; i < vecs.size() && supports; ++i)
    supports = set_size(vecs[i - 1]) != set_size(vecs[i]);
  std::vector<IndexSet> up = strict_up_sets(a);
  std::vector<std::pair<int, int>> degs(n);
  for (int i = 0; i < n; ++i)
    degs[i] = {set_size(a.row(i)), set_size(up[i]) + 1};
  std::sort(degs.begin(), degs.end());
  bool degrees = std::adjacent_find(degs.begin(), degs.end()) == degs.end();
  return {supports, degrees};
}

namespace detail {

inline bool row_vector_less(const std::vector<IndexSet>& a,
                            const std::vector<IndexSet>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i]) return lex_bits_less(a[i], b[i]);
  }
  return a.size() < b.size();
}

}  // namespace detail

// Lexicographically smallest row-major bit string over all natural
// relabelings (equivalently, over all linear extensions). Search places one
// element per position, always a minimal element of the unplaced remainder;
// because every minimal choice can be completed, only choices achieving the
// smallest possible row at the current position can lead to the overall
// minimum, so everything else is pruned. Tied choices within one twin class
// produce identical completions (swapping twins is an automorphism fixing
// the rest), so one representative per class is explored.
inline PosetMatrix canonical_form(const PosetMatrix& a) {
  const int n = a.n();
  std::vector<IndexSet> down(n), up = strict_up_sets(a);
  for (int i = 0; i < n; ++i) down[i] = a.row(i) & ~bit(i);
  std::vector<int> class_of(n);
  {
    std::vector<std::pair<IndexSet, IndexSet>> keys;
    for (int x = 0; x < n; ++x) {
      std::pair<IndexSet, IndexSet> k{down[x], up[x]};
      auto it = std::find(keys.begin(), keys.end(), k);
      class_of[x] = static_cast<int>(it - keys.begin());
      if (it == keys.end()) keys.push_back(k);
    }
  }
  // predpos[x]: positions already holding a strict predecessor of x.
  std::vector<IndexSet> predpos(n, 0);
  auto rec = [&](auto&& self, IndexSet placed, int depth) -> std::vector<IndexSet> {
    if (depth == n) return {};
    IndexSet cand = 0;
    for (int x = 0; x < n; ++x)
      if (!contains(placed, x) && is_subset(down[x], placed)) cand |= bit(x);
    bool first = true;
    IndexSet best_row = 0;
    for (IndexSet t = cand; t; t &= t - 1) {
      IndexSet row = predpos[std::countr_zero(t)] | bit(depth);
      if (first || lex_bits_less(row, best_row)) best_row = row;
      first = false;
    }
    std::vector<IndexSet> best;
    bool have = false;
    IndexSet seen_classes = 0;
    for (IndexSet t = cand; t; t &= t - 1) {
      int x = std::countr_zero(t);
      if ((predpos[x] | bit(depth)) != best_row) continue;
      if (contains(seen_classes, class_of[x])) continue;
      seen_classes |= bit(class_of[x]);
      for (IndexSet s = up[x]; s; s &= s - 1) predpos[std::countr_zero(s)] |= bit(depth);
      std::vector<IndexSet> suffix = self(self, placed | bit(x), depth + 1);
      for (IndexSet s = up[x]; s; s &= s - 1) predpos[std::countr_zero(s)] &= ~bit(depth);
      if (!have || detail::row_vector_less(suffix, best)) {
        best = std::move(suffix);
        have = true;
      }
    }
    best.insert(best.begin(), best_row);
    return best;
  };
  return PosetMatrix::from_rows_unchecked(rec(rec, 0, 0));
}

// Row-major bit string of the matrix packed into hex, four bits per digit,
// first bit most significant, zero padded at the tail. Used as a dedup key.
inline std::string matrix_hex_key(const PosetMatrix& a) {
  const int n = a.n();
  std::string out;
  int nibble = 0, filled = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      nibble = (nibble << 1) | (a.entry(i, j) ? 1 : 0);
      if (++filled == 4) {
        out += "0123456789abcdef"[nibble];
        nibble = 0;
        filled = 0;
      }
    }
  if (filled) out += "0123456789abcdef"[nibble << (4 - filled)];
  return out;
}

inline std::string canonical_key(const PosetMatrix& a) {
  return matrix_hex_key(canonical_form(a));
}

inline bool is_isomorphic(const PosetMatrix& a, const PosetMatrix& b) {
  if (a.n() != b.n()) return false;
  auto degree_multiset = [](const PosetMatrix& m) {
    std::vector<IndexSet> up = strict_up_sets(m);
    std::vector<std::pair<int, int>> d(m.n());
    for (int i = 0; i < m.n(); ++i)
      d[i] = {set_size(m.row(i)), set_size(up[i]) + 1};
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degree_multiset(a) != degree_multiset(b)) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace posetforge

#endif
