#ifndef POSETFORGE_JSONL_HPP
#define POSETFORGE_JSONL_HPP

// JSON-lines serialization of ideal lattices: first one line per vector as a
// quoted subset word ("e" for the empty set), then one line per Hasse edge
// as a two-element index array. The ground-set order is recovered from the
// full set, which every ideal lattice contains as its last vector.

#include <string>

#include <nlohmann/json.hpp>

#include "posetforge/bits.hpp"
#include "posetforge/errors.hpp"
#include "posetforge/ideals.hpp"

namespace posetforge {

inline std::string ideal_lattice_to_jsonl(const IdealLattice& lat) {
  std::string out;
  for (IndexSet v : lat.vectors)
    out += nlohmann::json(subset_word(v)).dump() + "\n";
  for (auto [lo, hi] : lat.hasse)
    out += nlohmann::json::array({lo, hi}).dump() + "\n";
  return out;
}

inline IdealLattice parse_ideal_lattice_jsonl(const std::string& text) {
  IdealLattice lat;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw parse_error("bad JSON on line " + std::to_string(lineno));
    }
    if (j.is_string()) {
      if (!lat.hasse.empty())
        throw parse_error("vector line after edge lines on line " +
                          std::to_string(lineno));
      lat.vectors.push_back(parse_subset_word(j.get<std::string>()));
    } else if (j.is_array() && j.size() == 2 && j[0].is_number_integer() &&
               j[1].is_number_integer()) {
      lat.hasse.emplace_back(j[0].get<int>(), j[1].get<int>());
    } else {
      throw parse_error("line " + std::to_string(lineno) +
                        " is neither a vector nor an edge");
    }
  }
  if (lat.vectors.empty()) throw parse_error("no vectors in lattice input");
  for (std::size_t i = 1; i < lat.vectors.size(); ++i)
    if (!length_lex_less(lat.vectors[i - 1], lat.vectors[i]))
      throw parse_error("vectors must increase in length-lex order");
  const int count = static_cast<int>(lat.vectors.size());
  for (auto [lo, hi] : lat.hasse)
    if (lo < 0 || hi < 0 || lo >= count || hi >= count)
      throw parse_error("edge index out of range");
  lat.n = set_size(lat.vectors.back());
  return lat;
}

}  // namespace posetforge

#endif
