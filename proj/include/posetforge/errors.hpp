#ifndef POSETFORGE_ERRORS_HPP
#define POSETFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace posetforge {

// Base for everything the library throws on bad input. The CLI maps
// subclasses to exit codes: capacity_error -> 3, everything else -> 2.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input exceeds a hard limit (ground set over 64, group too large to list,
// topology too large to materialize).
struct capacity_error : error {
  using error::error;
};

// Malformed textual input.
struct parse_error : error {
  using error::error;
};

// Structurally well-formed input violating a mathematical precondition.
struct validation_error : error {
  using error::error;
};

// Vector rejected by v-extension: supp(v) is not downward closed. Carries
// the first witness, an i in supp(v) with a predecessor j outside supp(v).
struct extension_error : validation_error {
  extension_error(const std::string& msg, int i, int j)
      : validation_error(msg), witness_i(i), witness_j(j) {}
  int witness_i;
  int witness_j;
};

}  // namespace posetforge

#endif
