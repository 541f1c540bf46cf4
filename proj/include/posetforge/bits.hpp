#ifndef POSETFORGE_BITS_HPP
#define POSETFORGE_BITS_HPP

// Index sets over ground sets {0, ..., n-1} with n <= 64, packed into one
// machine word. Bit j set means element j is present. Two orderings matter
// throughout the library:
//   - length_lex_less: shorter sets first, ties broken by the increasing
//     element sequence (the enumeration order of ideal lists and topologies)
//   - lex_bits_less: position-by-position comparison of the bit sequence
//     b_0, b_1, ..., used when matrix rows are compared as 0/1 strings

#include <bit>
#include <cstdint>
#include <string>

#include "posetforge/errors.hpp"

namespace posetforge {

using IndexSet = std::uint64_t;

inline constexpr int kMaxN = 64;

constexpr IndexSet bit(int i) { return IndexSet{1} << i; }

constexpr bool contains(IndexSet s, int i) { return (s >> i) & 1u; }

constexpr bool is_subset(IndexSet a, IndexSet b) { return (a & ~b) == 0; }

constexpr int set_size(IndexSet s) { return std::popcount(s); }

// Mask of all elements below n.
constexpr IndexSet full_set(int n) {
  return n >= kMaxN ? ~IndexSet{0} : bit(n) - 1;
}

constexpr int lowest(IndexSet s) { return std::countr_zero(s); }

// Shorter sets first; same size compares element sequences numerically.
// For equal popcounts the set containing the lowest differing element wins.
constexpr bool length_lex_less(IndexSet a, IndexSet b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  return contains(a, std::countr_zero(a ^ b));
}

// Bit strings read from position 0 upward; the one with 0 at the first
// differing position is smaller.
constexpr bool lex_bits_less(IndexSet a, IndexSet b) {
  if (a == b) return false;
  return !contains(a, std::countr_zero(a ^ b));
}

// One character per element, so words stay parseable for every n <= 64.
// Elements 0..9 keep their digit form.
inline constexpr char kElementAlphabet[65] =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ+/";

// Renders a set as its increasing element word, the empty set as "e".
inline std::string subset_word(IndexSet s) {
  if (s == 0) return "e";
  std::string out;
  for (IndexSet t = s; t; t &= t - 1) out += kElementAlphabet[std::countr_zero(t)];
  return out;
}

inline int element_of_char(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return 10 + (c - 'a');
  if (c >= 'A' && c <= 'Z') return 36 + (c - 'A');
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

inline IndexSet parse_subset_word(const std::string& w) {
  if (w == "e") return 0;
  if (w.empty()) throw parse_error("empty subset word");
  IndexSet s = 0;
  int prev = -1;
  for (char c : w) {
    int e = element_of_char(c);
    if (e < 0) throw parse_error(std::string("bad element character '") + c + "' in subset word");
    if (e <= prev) throw parse_error("subset word elements must increase: " + w);
    s |= bit(e);
    prev = e;
  }
  return s;
}

}  // namespace posetforge

#endif
