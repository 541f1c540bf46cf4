#ifndef POSETFORGE_CLI_HPP
#define POSETFORGE_CLI_HPP

// Command dispatch behind the posetforge binary. The binary itself only
// parses flags into a CommandConfig; everything observable happens here so
// the behavior is testable without a subprocess. Exit codes: 0 success,
// 1 usage, 2 parse or validation failure, 3 capacity exceeded.

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "posetforge/enumerate.hpp"
#include "posetforge/ideals.hpp"
#include "posetforge/jsonl.hpp"
#include "posetforge/poset_matrix.hpp"
#include "posetforge/symmetry.hpp"
#include "posetforge/topology.hpp"
#include "posetforge/verify.hpp"

namespace posetforge {

enum class Command { count, list, extend, ideals, aut, nlt, verify, dot };
enum class OutputFormat { text, jsonl, csv, dot };
enum class ListKind { pm, nlt };

struct CommandConfig {
  Command command = Command::count;
  int n = -1;  // unset
  std::string input_path;
  std::string output_path;  // empty writes to the provided stream
  std::optional<OutputFormat> format;
  std::optional<CountMethod> method;
  int shards = 1;
  std::optional<std::uint64_t> limit;
  ListKind kind = ListKind::pm;
  std::string resume;        // nlt: topology line to continue after
  bool lattice = false;      // dot: render the ideal lattice instead
  std::string keystore_dir;  // count: disk-backed class keys
};

inline int default_verify_ceiling() {
  if (const char* env = std::getenv("POSETFORGE_MAX_N")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      return 5;
    }
  }
  return 5;
}

// ---- DOT export: Hasse diagrams drawn upward, one rank per level ----

inline std::string hasse_dot(const PosetMatrix& a) {
  const int n = a.n();
  std::vector<int> level(n, 1);
  for (int i = 0; i < n; ++i)
    for (IndexSet t = a.row(i) & ~bit(i); t; t &= t - 1)
      level[i] = std::max(level[i], level[std::countr_zero(t)] + 1);
  int height = 0;
  for (int i = 0; i < n; ++i) height = std::max(height, level[i]);
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (int lv = 1; lv <= height; ++lv) {
    out << "  { rank=same;";
    for (int i = 0; i < n; ++i)
      if (level[i] == lv) out << " e" << i << ";";
    out << " }\n";
  }
  for (int i = 0; i < n; ++i) out << "  e" << i << " [label=\"" << i << "\"];\n";
  for (auto [lo, hi] : cover_relations(a))
    out << "  e" << lo << " -> e" << hi << " [dir=none];\n";
  out << "}\n";
  return out.str();
}

inline std::string lattice_dot(const IdealLattice& lat) {
  int top = lat.vectors.empty() ? 0 : set_size(lat.vectors.back());
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (int lv = 0; lv <= top; ++lv) {
    out << "  { rank=same;";
    for (std::size_t i = 0; i < lat.vectors.size(); ++i)
      if (set_size(lat.vectors[i]) == lv) out << " v" << i << ";";
    out << " }\n";
  }
  for (std::size_t i = 0; i < lat.vectors.size(); ++i)
    out << "  v" << i << " [label=\"" << subset_word(lat.vectors[i]) << "\"];\n";
  for (auto [lo, hi] : lat.hasse)
    out << "  v" << lo << " -> v" << hi << " [dir=none];\n";
  out << "}\n";
  return out.str();
}

namespace detail {

inline std::string twin_classes_line(const TwinDecomposition& d) {
  std::string out = "classes ";
  for (std::size_t c = 0; c < d.classes.size(); ++c) {
    if (c) out += " | ";
    bool first = true;
    for (IndexSet t = d.classes[c]; t; t &= t - 1) {
      if (!first) out += ',';
      out += std::to_string(std::countr_zero(t));
      first = false;
    }
  }
  return out;
}

inline PosetMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_poset_matrix(buf.str());
}

}  // namespace detail

inline int run(const CommandConfig& cfg, std::ostream& out_stream,
               std::ostream& err) {
  auto usage = [&](const std::string& msg) {
    err << "usage error: " << msg << "\n";
    return 1;
  };
  if (cfg.shards < 1) return usage("shards must be at least 1");
  if (cfg.n != -1 && cfg.n < 0) return usage("n cannot be negative");
  if (cfg.n > kMaxN) {
    err << "capacity error: n exceeds the 64-element ceiling\n";
    return 3;
  }
  static const std::map<Command, OutputFormat> kVerbFormat = {
      {Command::count, OutputFormat::csv},   {Command::list, OutputFormat::text},
      {Command::extend, OutputFormat::text}, {Command::ideals, OutputFormat::jsonl},
      {Command::aut, OutputFormat::text},    {Command::nlt, OutputFormat::text},
      {Command::verify, OutputFormat::text}, {Command::dot, OutputFormat::dot}};
  if (cfg.format && *cfg.format != kVerbFormat.at(cfg.command))
    return usage("format not valid for this verb");

  std::ofstream file_out;
  if (!cfg.output_path.empty()) {
    file_out.open(cfg.output_path, std::ios::trunc);
    if (!file_out) return usage("cannot open output " + cfg.output_path);
  }
  std::ostream& out = cfg.output_path.empty() ? out_stream : file_out;

  try {
    switch (cfg.command) {
      case Command::count: {
        if (cfg.n < 1) return usage("count needs --n of at least 1");
        if (cfg.method) {
          out << count_nl(cfg.n, *cfg.method, cfg.shards) << "\n";
          return 0;
        }
        CountReport r = orbit_sum_report(cfg.n, cfg.shards, cfg.keystore_dir);
        out << count_report_header() << "\n" << count_report_to_csv(r) << "\n";
        return 0;
      }
      case Command::list: {
        if (cfg.n < 0) return usage("list needs --n");
        std::uint64_t left = cfg.limit.value_or(~std::uint64_t{0});
        if (cfg.kind == ListKind::pm) {
          if (cfg.n < 1) return usage("list --kind pm needs --n of at least 1");
          for_each_pm(cfg.n, [&](std::span<const IndexSet> rows) -> bool {
            if (left == 0) return false;
            --left;
            write_matrix_block(out, PosetMatrix::from_rows_unchecked(
                                        std::vector<IndexSet>(rows.begin(),
                                                              rows.end())));
            return true;
          });
        } else {
          for (NltStream s(cfg.n); !s.done() && left > 0; s.advance(), --left)
            out << nlt_to_line(s.current()) << "\n";
        }
        return 0;
      }
      case Command::extend: {
        PosetMatrix a = detail::read_matrix_file(cfg.input_path);
        std::uint64_t left = cfg.limit.value_or(~std::uint64_t{0});
        for (IndexSet v : poset_vector_words(a)) {
          if (left == 0) break;
          --left;
          write_matrix_block(out, v_extension(a, v));
        }
        return 0;
      }
      case Command::ideals: {
        PosetMatrix a = detail::read_matrix_file(cfg.input_path);
        out << ideal_lattice_to_jsonl(enumerate_poset_vectors(a));
        return 0;
      }
      case Command::aut: {
        PosetMatrix a = detail::read_matrix_file(cfg.input_path);
        std::uint64_t order = aut_order_via_twins(a);
        out << "order " << order << "\n";
        out << detail::twin_classes_line(twin_decomposition(a)) << "\n";
        for (const auto& orbit : orbits_on_vectors(a).orbits) {
          out << "orbit";
          for (IndexSet v : orbit) out << " " << subset_word(v);
          out << "\n";
        }
        return 0;
      }
      case Command::nlt: {
        std::uint64_t left = cfg.limit.value_or(~std::uint64_t{0});
        if (!cfg.resume.empty()) {
          NLT t = parse_nlt_line(cfg.resume);
          if (cfg.n != -1 && cfg.n != t.n)
            return usage("resume topology disagrees with --n");
          NltStream s(std::move(t));
          // The resume point was already emitted by the previous run.
          for (s.advance(); !s.done() && left > 0; s.advance(), --left)
            out << nlt_to_line(s.current()) << "\n";
        } else {
          if (cfg.n < 0) return usage("nlt needs --n or --resume");
          for (NltStream s(cfg.n); !s.done() && left > 0; s.advance(), --left)
            out << nlt_to_line(s.current()) << "\n";
        }
        return 0;
      }
      case Command::verify: {
        int ceiling = cfg.n != -1 ? cfg.n : default_verify_ceiling();
        return run_verification(ceiling, out) ? 0 : 2;
      }
      case Command::dot: {
        PosetMatrix a = detail::read_matrix_file(cfg.input_path);
        if (cfg.lattice)
          out << lattice_dot(enumerate_poset_vectors(a));
        else
          out << hasse_dot(a);
        return 0;
      }
    }
  } catch (const capacity_error& e) {
    err << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return usage("unknown command");
}

}  // namespace posetforge

#endif
