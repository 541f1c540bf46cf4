// posetforge: enumerate, count, and classify naturally labeled posets.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "posetforge/cli.hpp"

namespace {

using posetforge::CommandConfig;

void add_output(CLI::App* sc, CommandConfig& cfg) {
  sc->add_option("--output", cfg.output_path, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"naturally labeled poset toolkit"};
  app.require_subcommand(1);

  CommandConfig cfg;

  const std::map<std::string, posetforge::CountMethod> method_names{
      {"extension", posetforge::CountMethod::extension},
      {"stream", posetforge::CountMethod::stream}};
  const std::map<std::string, posetforge::ListKind> kind_names{
      {"pm", posetforge::ListKind::pm}, {"nlt", posetforge::ListKind::nlt}};
  const std::map<std::string, posetforge::OutputFormat> format_names{
      {"text", posetforge::OutputFormat::text},
      {"jsonl", posetforge::OutputFormat::jsonl},
      {"csv", posetforge::OutputFormat::csv},
      {"dot", posetforge::OutputFormat::dot}};

  auto* count = app.add_subcommand(
      "count", "census row for one order: both labeled counts, classes, orbit sum");
  count->add_option("--n", cfg.n, "number of elements")->required();
  count->add_option("--shards", cfg.shards, "parallel shards over parents");
  count->add_option("--method", cfg.method, "emit a single count by this method")
      ->transform(CLI::CheckedTransformer(method_names));
  count->add_option("--keystore", cfg.keystore_dir,
                    "directory for disk-backed class keys");
  add_output(count, cfg);

  auto* list = app.add_subcommand("list", "stream all matrices or topologies");
  list->add_option("--n", cfg.n, "number of elements")->required();
  list->add_option("--kind", cfg.kind, "pm or nlt")
      ->transform(CLI::CheckedTransformer(kind_names));
  list->add_option("--limit", cfg.limit, "stop after this many");
  add_output(list, cfg);

  auto* extend = app.add_subcommand("extend", "emit every one-element extension");
  extend->add_option("--input", cfg.input_path, "matrix file")->required();
  extend->add_option("--limit", cfg.limit, "stop after this many");
  add_output(extend, cfg);

  auto* ideals = app.add_subcommand("ideals", "ideal lattice as JSON lines");
  ideals->add_option("--input", cfg.input_path, "matrix file")->required();
  add_output(ideals, cfg);

  auto* aut = app.add_subcommand(
      "aut", "automorphism order, twin classes, vector orbits");
  aut->add_option("--input", cfg.input_path, "matrix file")->required();
  add_output(aut, cfg);

  auto* nlt = app.add_subcommand("nlt", "stream topologies, optionally resumed");
  nlt->add_option("--n", cfg.n, "number of elements");
  nlt->add_option("--resume", cfg.resume,
                  "topology line to continue after (its successors are emitted)");
  nlt->add_option("--limit", cfg.limit, "stop after this many");
  add_output(nlt, cfg);

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option(
      "--n", cfg.n,
      "exhaustive ceiling (default 5, or the POSETFORGE_MAX_N variable)");
  add_output(verify, cfg);

  auto* dot = app.add_subcommand("dot", "Hasse diagram in DOT form");
  dot->add_option("--input", cfg.input_path, "matrix file")->required();
  dot->add_flag("--lattice", cfg.lattice, "draw the ideal lattice instead");
  add_output(dot, cfg);

  for (CLI::App* sc : {count, list, extend, ideals, aut, nlt, verify, dot})
    sc->add_option("--format", cfg.format, "output format (fixed per verb)")
        ->transform(CLI::CheckedTransformer(format_names));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::map<const CLI::App*, posetforge::Command> verb{
      {count, posetforge::Command::count},   {list, posetforge::Command::list},
      {extend, posetforge::Command::extend}, {ideals, posetforge::Command::ideals},
      {aut, posetforge::Command::aut},       {nlt, posetforge::Command::nlt},
      {verify, posetforge::Command::verify}, {dot, posetforge::Command::dot}};
  for (const auto& [sc, cmd] : verb)
    if (sc->parsed()) cfg.command = cmd;

  return posetforge::run(cfg, std::cout, std::cerr);
}
