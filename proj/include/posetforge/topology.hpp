#ifndef POSETFORGE_TOPOLOGY_HPP
#define POSETFORGE_TOPOLOGY_HPP

// Naturally labeled topologies: families of subsets of {0,...,n-1} containing
// the empty and full sets and closed under union and intersection, kept in
// length-lex order (smaller sets first, ties by increasing element sequence).
// These are exactly the ideal families of naturally labeled posets. The
// streaming generator walks all of them without repetition: First(n) is the
// powerset, and Next peels the new-element layer off with Cut, advances the
// growth site inside the smaller topology, and rebuilds the layer with Grow.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "posetforge/bits.hpp"
#include "posetforge/errors.hpp"
#include "posetforge/ideals.hpp"
#include "posetforge/poset_matrix.hpp"

namespace posetforge {

struct NLT {
  int n = 0;
  std::vector<IndexSet> sets;  // strictly increasing in length-lex order

  bool operator==(const NLT&) const = default;
};

// Structure check: bounds, ordering, boundary members, lattice closure.
inline bool validate_nlt(const NLT& t) {
  if (t.n < 0 || t.n > kMaxN) return false;
  if (t.sets.empty()) return false;
  for (IndexSet s : t.sets)
    if (s & ~full_set(t.n)) return false;
  for (std::size_t i = 1; i < t.sets.size(); ++i)
    if (!length_lex_less(t.sets[i - 1], t.sets[i])) return false;
  if (t.sets.front() != 0 || t.sets.back() != full_set(t.n)) return false;
  auto member = [&](IndexSet s) {
    return std::binary_search(t.sets.begin(), t.sets.end(), s, length_lex_less);
  };
  for (std::size_t i = 0; i < t.sets.size(); ++i)
    for (std::size_t j = i + 1; j < t.sets.size(); ++j) {
      if (!member(t.sets[i] | t.sets[j])) return false;
      if (!member(t.sets[i] & t.sets[j])) return false;
    }
  return true;
}

inline NLT ideals_to_nlt(const PosetMatrix& a) {
  return NLT{a.n(), poset_vector_words(a)};
}

// Reconstructs the poset: the principal ideal of y is the intersection of
// all members containing y. Inverse of ideals_to_nlt.
inline PosetMatrix nlt_to_poset(const NLT& t) {
  if (!validate_nlt(t)) throw validation_error("not a naturally labeled topology");
  std::vector<IndexSet> rows(t.n);
  for (int y = 0; y < t.n; ++y) {
    IndexSet r = full_set(t.n);
    for (IndexSet s : t.sets)
      if (contains(s, y)) r &= s;
    rows[y] = r;
  }
  return PosetMatrix::from_rows(std::move(rows));
}

// Adjoins element n open-above S: every member containing S reappears with n
// added. The added run inherits the length-lex order of its sources, so a
// single merge keeps the family ordered.
inline NLT grow(const NLT& t, IndexSet s) {
  if (t.n + 1 > kMaxN) throw capacity_error("topology ground set exceeds 64");
  if (!std::binary_search(t.sets.begin(), t.sets.end(), s, length_lex_less))
    throw validation_error("growth site is not a member of the topology");
  std::vector<IndexSet> added;
  for (IndexSet u : t.sets)
    if (is_subset(s, u)) added.push_back(u | bit(t.n));
  NLT out;
  out.n = t.n + 1;
  out.sets.resize(t.sets.size() + added.size());
  std::merge(t.sets.begin(), t.sets.end(), added.begin(), added.end(),
             out.sets.begin(), length_lex_less);
  return out;
}

// Removes every member containing the top element n-1; the remainder is a
// topology on one element fewer.
inline NLT cut(const NLT& t) {
  if (t.n < 1) throw validation_error("cannot cut an empty ground set");
  NLT out;
  out.n = t.n - 1;
  for (IndexSet s : t.sets)
    if (!contains(s, t.n - 1)) out.sets.push_back(s);
  return out;
}

// Successor of a member in the family's length-lex order.
inline std::optional<IndexSet> next_in(const NLT& t, IndexSet s) {
  auto it = std::lower_bound(t.sets.begin(), t.sets.end(), s, length_lex_less);
  if (it == t.sets.end() || *it != s)
    throw validation_error("set is not a member of the topology");
  ++it;
  if (it == t.sets.end()) return std::nullopt;
  return *it;
}

// Powersets double per element; refuse sizes that cannot materialize.
inline constexpr int kMaxStreamN = 24;

// The length-lex smallest topology on n elements: the full powerset, built
// by adjoining each element open-above the empty set.
inline NLT first(int n) {
  if (n < 0) throw validation_error("negative ground set");
  if (n > kMaxStreamN)
    throw capacity_error("powerset of this order cannot materialize");
  NLT t{0, {0}};
  for (int k = 0; k < n; ++k) t = grow(t, 0);
  return t;
}

// Length-lex successor topology, or nothing after the last one. Descends
// through Cut while the growth site under the top element cannot advance,
// then advances it and wraps each peeled layer back with a powerset-style
// grow at the empty set.
inline std::optional<NLT> next(const NLT& t) {
  NLT cur = t;
  int depth = 0;
  while (cur.n >= 1) {
    IndexSet s = 0;
    bool found = false;
    for (IndexSet u : cur.sets)
      if (contains(u, cur.n - 1)) { s = u; found = true; break; }
    if (!found) throw validation_error("topology misses its top element");
    NLT smaller = cut(cur);
    if (auto site = next_in(smaller, s & ~bit(cur.n - 1))) {
      NLT out = grow(smaller, *site);
      for (int k = 0; k < depth; ++k) out = grow(out, 0);
      return out;
    }
    cur = std::move(smaller);
    ++depth;
  }
  return std::nullopt;
}

// Forward iteration over all topologies of one order, optionally resumed
// from a known member of the sequence.
class NltStream {
 public:
  explicit NltStream(int n) : cur_(first(n)) {}

  explicit NltStream(NLT resume_from) : cur_(std::move(resume_from)) {
    if (!validate_nlt(cur_))
      throw validation_error("resume point is not a naturally labeled topology");
  }

  const NLT& current() const { return cur_; }
  bool done() const { return done_; }

  void advance() {
    if (done_) return;
    if (auto nx = next(cur_)) cur_ = std::move(*nx);
    else done_ = true;
  }

 private:
  NLT cur_;
  bool done_ = false;
};

enum class GenMode { recursive, stream };

namespace detail {

inline bool nlt_family_less(const std::vector<IndexSet>& a,
                            const std::vector<IndexSet>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      length_lex_less);
}

}  // namespace detail

// All topologies on n elements. Stream mode walks First/Next in sequence
// order with one topology live at a time; recursive mode rebuilds the family
// bottom-up, growing every smaller topology at every site and deduplicating,
// returned in sorted family order. Both modes produce the same set.
inline std::vector<NLT> generate_all(int n, GenMode mode) {
  if (mode == GenMode::stream) {
    std::vector<NLT> out;
    for (NltStream s(n); !s.done(); s.advance()) out.push_back(s.current());
    return out;
  }
  std::set<std::vector<IndexSet>, bool (*)(const std::vector<IndexSet>&,
                                           const std::vector<IndexSet>&)>
      fams(detail::nlt_family_less);
  fams.insert({0});
  for (int k = 0; k < n; ++k) {
    decltype(fams) bigger(detail::nlt_family_less);
    for (const auto& fam : fams) {
      NLT t{k, fam};
      for (IndexSet site : fam) bigger.insert(grow(t, site).sets);
    }
    fams = std::move(bigger);
  }
  std::vector<NLT> out;
  for (const auto& fam : fams) out.push_back(NLT{n, fam});
  return out;
}

// ---- text format: members in order, elements comma separated, empty "e" ----

inline std::string set_to_token(IndexSet s) {
  if (s == 0) return "e";
  std::string out;
  for (IndexSet t = s; t; t &= t - 1) {
    if (!out.empty()) out += ',';
    out += std::to_string(std::countr_zero(t));
  }
  return out;
}

inline std::string nlt_to_line(const NLT& t) {
  std::string out;
  for (IndexSet s : t.sets) {
    if (!out.empty()) out += ' ';
    out += set_to_token(s);
  }
  return out;
}

inline IndexSet parse_set_token(const std::string& tok) {
  if (tok == "e") return 0;
  if (tok.empty()) throw parse_error("empty set token");
  IndexSet s = 0;
  int prev = -1;
  std::size_t pos = 0;
  while (pos < tok.size()) {
    std::size_t comma = tok.find(',', pos);
    std::string part = tok.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("bad element '" + part + "' in set token");
    long e = std::stol(part);
    if (e >= kMaxN) throw parse_error("element " + part + " exceeds capacity");
    if (e <= prev) throw parse_error("set elements must increase: " + tok);
    s |= bit(static_cast<int>(e));
    prev = static_cast<int>(e);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return s;
}

// One topology per line; the ground-set order is read off the largest member
// (the full set, present in every valid topology).
inline NLT parse_nlt_line(const std::string& line) {
  std::vector<IndexSet> sets;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t sp = line.find(' ', pos);
    std::string tok = line.substr(pos, sp == std::string::npos ? std::string::npos
                                                               : sp - pos);
    if (tok.empty()) throw parse_error("doubled separator in topology line");
    sets.push_back(parse_set_token(tok));
    if (sp == std::string::npos) break;
    pos = sp + 1;
  }
  if (sets.empty()) throw parse_error("empty topology line");
  for (std::size_t i = 1; i < sets.size(); ++i)
    if (!length_lex_less(sets[i - 1], sets[i]))
      throw parse_error("topology members must increase in length-lex order");
  int n = 0;
  for (IndexSet s : sets)
    if (s) n = std::max(n, 64 - std::countl_zero(s));
  return NLT{n, std::move(sets)};
}

}  // namespace posetforge

#endif
