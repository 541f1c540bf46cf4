#ifndef POSETFORGE_POSET_MATRIX_HPP
#define POSETFORGE_POSET_MATRIX_HPP

// Boolean poset matrices. A poset matrix of order n is lower triangular with
// unit diagonal and transitive: row i is the bit mask of the principal ideal
// of element i, so a_{i,j} = 1 iff j <= i in the partial order. Labels are
// natural (every relation points downward in index), which is what makes the
// lower-triangular shape equivalent to transitivity plus reflexivity.

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "posetforge/bits.hpp"
#include "posetforge/errors.hpp"

namespace posetforge {

// Square 0/1 matrix with no poset invariant, e.g. the result of conjugating
// a poset matrix by a permutation.
struct BoolMatrix {
  int n = 0;
  std::vector<IndexSet> rows;

  bool operator==(const BoolMatrix&) const = default;
};

// True iff rows form a poset matrix: square shape over at most 64 elements,
// lower triangular, unit diagonal, transitive. Transitivity is evaluated two
// ways, by the row-closure scan and by the forbidden submatrix pattern
// (a p < q with p below q but some predecessor of p not below q); the two
// verdicts must agree.
inline bool validate_poset_matrix(const std::vector<IndexSet>& rows) {
  const int n = static_cast<int>(rows.size());
  if (n > kMaxN) return false;
  for (int i = 0; i < n; ++i) {
    if (!contains(rows[i], i)) return false;
    if (rows[i] & ~full_set(i + 1)) return false;
  }
  bool closure_ok = true;
  for (int i = 0; i < n && closure_ok; ++i) {
    IndexSet u = 0;
    for (IndexSet t = rows[i]; t; t &= t - 1) u |= rows[std::countr_zero(t)];
    closure_ok = (u == rows[i]);
  }
  bool pattern_ok = true;
  for (int q = 0; q < n && pattern_ok; ++q) {
    for (IndexSet t = rows[q] & ~bit(q); t && pattern_ok; t &= t - 1) {
      int p = std::countr_zero(t);
      if (rows[p] & ~rows[q]) pattern_ok = false;
    }
  }
  if (closure_ok != pattern_ok)
    throw std::logic_error("transitivity checks disagree");
  return closure_ok;
}

class PosetMatrix {
 public:
  PosetMatrix() = default;

  static PosetMatrix from_rows(std::vector<IndexSet> rows) {
    if (rows.size() > static_cast<std::size_t>(kMaxN))
      throw capacity_error("poset matrix order exceeds 64");
    if (!validate_poset_matrix(rows))
      throw validation_error("rows do not form a poset matrix");
    return PosetMatrix(std::move(rows));
  }

  // For callers that already hold the invariant (enumeration inner loops).
  static PosetMatrix from_rows_unchecked(std::vector<IndexSet> rows) {
    return PosetMatrix(std::move(rows));
  }

  int n() const { return static_cast<int>(rows_.size()); }
  IndexSet row(int i) const { return rows_[i]; }
  const std::vector<IndexSet>& rows() const { return rows_; }
  bool entry(int i, int j) const { return contains(rows_[i], j); }

  BoolMatrix bool_matrix() const { return BoolMatrix{n(), rows_}; }

  bool operator==(const PosetMatrix&) const = default;

 private:
  explicit PosetMatrix(std::vector<IndexSet> rows) : rows_(std::move(rows)) {}
  std::vector<IndexSet> rows_;
};

// Builds the matrix of the transitive closure of the given relations on
// {0,...,n-1}. Every relation must point upward in label (lo < hi), which is
// exactly the natural-labeling requirement.
inline PosetMatrix from_relations(int n,
                                  const std::vector<std::pair<int, int>>& relations) {
  if (n < 0 || n > kMaxN) throw capacity_error("order must be between 0 and 64");
  std::vector<IndexSet> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = bit(i);
  std::vector<std::vector<int>> below(n);
  for (auto [lo, hi] : relations) {
    if (lo < 0 || hi >= n)
      throw validation_error("relation endpoint out of range");
    if (lo >= hi)
      throw validation_error("relation violates natural labeling: " +
                             std::to_string(lo) + " >= " + std::to_string(hi));
    below[hi].push_back(lo);
  }
  // Rows close in one ascending pass because each merged row is already closed.
  for (int i = 0; i < n; ++i)
    for (int lo : below[i]) rows[i] |= rows[lo];
  return PosetMatrix::from_rows_unchecked(std::move(rows));
}

// Appends a new maximal-or-isolated element n whose principal ideal is
// supp(v) plus itself. Valid iff supp(v) is downward closed; otherwise throws
// with the first witness pair (i in supp(v), predecessor j outside supp(v)).
inline PosetMatrix v_extension(const PosetMatrix& a, IndexSet v) {
  const int n = a.n();
  if (n + 1 > kMaxN) throw capacity_error("extension exceeds order 64");
  if (v & ~full_set(n)) throw validation_error("vector has bits beyond the ground set");
  for (IndexSet t = v; t; t &= t - 1) {
    int i = std::countr_zero(t);
    IndexSet missing = a.row(i) & ~v;
    if (missing)
      throw extension_error("support is not downward closed at element " +
                                std::to_string(i),
                            i, std::countr_zero(missing));
  }
  std::vector<IndexSet> rows = a.rows();
  rows.push_back(v | bit(n));
  return PosetMatrix::from_rows_unchecked(std::move(rows));
}

// Strict up-sets of every element, read off the columns.
inline std::vector<IndexSet> strict_up_sets(const PosetMatrix& a) {
  std::vector<IndexSet> up(a.n(), 0);
  for (int i = 0; i < a.n(); ++i)
    for (IndexSet t = a.row(i) & ~bit(i); t; t &= t - 1)
      up[std::countr_zero(t)] |= bit(i);
  return up;
}

// (strict down-set, strict up-set) of one element.
inline std::pair<IndexSet, IndexSet> strict_sets(const PosetMatrix& a, int x) {
  if (x < 0 || x >= a.n()) throw validation_error("element out of range");
  IndexSet up = 0;
  for (int i = x + 1; i < a.n(); ++i)
    if (a.entry(i, x)) up |= bit(i);
  return {a.row(x) & ~bit(x), up};
}

enum class PosetKind { chain, antichain };

inline PosetMatrix standard_poset(int n, PosetKind kind) {
  if (n < 0 || n > kMaxN) throw capacity_error("order must be between 0 and 64");
  std::vector<IndexSet> rows(n);
  for (int i = 0; i < n; ++i)
    rows[i] = kind == PosetKind::chain ? full_set(i + 1) : bit(i);
  return PosetMatrix::from_rows_unchecked(std::move(rows));
}

// Block-diagonal sum; the second summand is relabeled to sit above the first.
inline PosetMatrix disjoint_sum(const PosetMatrix& a, const PosetMatrix& b) {
  if (a.n() + b.n() > kMaxN) throw capacity_error("sum exceeds order 64");
  std::vector<IndexSet> rows = a.rows();
  rows.reserve(a.n() + b.n());
  for (int i = 0; i < b.n(); ++i) rows.push_back(b.row(i) << a.n());
  return PosetMatrix::from_rows_unchecked(std::move(rows));
}

// Product over the Boolean semiring: row i of the result is the union of the
// rows of b indexed by row i of a.
inline BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
  if (a.n != b.n) throw validation_error("product size mismatch");
  BoolMatrix c{a.n, std::vector<IndexSet>(a.n, 0)};
  for (int i = 0; i < a.n; ++i)
    for (IndexSet t = a.rows[i]; t; t &= t - 1) c.rows[i] |= b.rows[std::countr_zero(t)];
  return c;
}

inline BoolMatrix bool_product(const PosetMatrix& a, const PosetMatrix& b) {
  return bool_product(a.bool_matrix(), b.bool_matrix());
}

// Cover pairs (lo, hi), ordered by hi then lo. An element j below i is
// covered by i iff no other strict predecessor of i lies above j.
inline std::vector<std::pair<int, int>> cover_relations(const PosetMatrix& a) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < a.n(); ++i) {
    IndexSet d = a.row(i) & ~bit(i);
    IndexSet shadowed = 0;
    for (IndexSet t = d; t; t &= t - 1) {
      int k = std::countr_zero(t);
      shadowed |= a.row(k) & ~bit(k);
    }
    for (IndexSet t = d & ~shadowed; t; t &= t - 1)
      out.emplace_back(std::countr_zero(t), i);
  }
  return out;
}

// Longest chain by dynamic programming over the natural labels, widest
// antichain by branch and bound over the pairwise-incomparable subsets.
inline std::pair<int, int> height_and_width(const PosetMatrix& a) {
  const int n = a.n();
  int height = 0;
  std::vector<int> h(n, 0);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (IndexSet t = a.row(i) & ~bit(i); t; t &= t - 1)
      best = std::max(best, h[std::countr_zero(t)]);
    h[i] = best + 1;
    height = std::max(height, h[i]);
  }
  std::vector<IndexSet> up = strict_up_sets(a);
  std::vector<IndexSet> comp(n);
  for (int i = 0; i < n; ++i) comp[i] = (a.row(i) & ~bit(i)) | up[i];
  int width = 0;
  auto grow_antichain = [&](auto&& self, int next, IndexSet chosen, int size) -> void {
    width = std::max(width, size);
    if (size + (n - next) <= width) return;
    for (int j = next; j < n; ++j)
      if (!(comp[j] & chosen)) self(self, j + 1, chosen | bit(j), size + 1);
  };
  grow_antichain(grow_antichain, 0, 0, 0);
  return {height, width};
}

// ---- text format: n lines of n characters '0'/'1', row major ----

inline std::string matrix_to_text(const BoolMatrix& m) {
  std::string out;
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) out += contains(m.rows[i], j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline std::string matrix_to_text(const PosetMatrix& a) {
  return matrix_to_text(a.bool_matrix());
}

// Reads one n x n block. Every line must have exactly as many characters as
// there are lines; anything else is rejected.
inline PosetMatrix parse_poset_matrix(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    lines.push_back(line);
  }
  const std::size_t n = lines.size();
  if (n > static_cast<std::size_t>(kMaxN))
    throw capacity_error("matrix text exceeds order 64");
  std::vector<IndexSet> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (lines[i].size() != n)
      throw parse_error("matrix text is not square at row " + std::to_string(i) +
                        ": got " + std::to_string(lines[i].size()) +
                        " columns, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      char c = lines[i][j];
      if (c == '1') rows[i] |= bit(static_cast<int>(j));
      else if (c != '0')
        throw parse_error(std::string("matrix text has character '") + c +
                          "' at row " + std::to_string(i));
    }
  }
  if (!validate_poset_matrix(rows))
    throw validation_error("matrix text is not a poset matrix");
  return PosetMatrix::from_rows_unchecked(std::move(rows));
}

// Blank-line separated stream of matrix blocks, the list/extend output format.
inline void write_matrix_block(std::ostream& out, const PosetMatrix& a) {
  out << matrix_to_text(a) << '\n';
}

inline std::vector<PosetMatrix> parse_matrix_blocks(std::istream& in) {
  std::vector<PosetMatrix> out;
  std::string line, block;
  auto flush = [&] {
    if (block.empty()) return;
    out.push_back(parse_poset_matrix(block));
    block.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) flush();
    else block += line + '\n';
  }
  flush();
  return out;
}

}  // namespace posetforge

#endif
