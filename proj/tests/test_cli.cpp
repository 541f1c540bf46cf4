#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "posetforge/cli.hpp"
#include "test_util.hpp"

using namespace posetforge;
using testutil::w;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const CommandConfig& cfg) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run(cfg, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string write_file(const std::string& name, const std::string& content) {
  std::ofstream out(name, std::ios::trunc);
  out << content;
  return name;
}

std::string read_file(const std::string& name) {
  std::ifstream in(name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

const char* kNShapeText = "1000\n0100\n1110\n0101\n";

}  // namespace

TEST_CASE("count emits the report table") {
  CommandConfig cfg;
  cfg.command = Command::count;
  cfg.n = 4;
  auto r = run_cli(cfg);
  REQUIRE(r.code == 0);
  auto lines = split_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == count_report_header());
  auto report = parse_count_report_csv(r.out);
  CHECK(report.nl_extension == 40);
  CHECK(report.nl_stream == 40);
  CHECK(report.nip == 16);
  CHECK(report.orbit_sum == 34);
  CHECK(report.gap == 18);
}

TEST_CASE("count with a fixed method prints one number") {
  CommandConfig cfg;
  cfg.command = Command::count;
  cfg.n = 5;
  cfg.method = CountMethod::extension;
  auto r = run_cli(cfg);
  CHECK(r.code == 0);
  CHECK(r.out == "357\n");
  cfg.n = 3;
  cfg.method = CountMethod::stream;
  CHECK(run_cli(cfg).out == "7\n");
}

TEST_CASE("count rejects missing or zero n") {
  CommandConfig cfg;
  cfg.command = Command::count;
  auto r = run_cli(cfg);
  CHECK(r.code == 1);
  CHECK(r.err.find("usage error") != std::string::npos);
  cfg.n = 0;
  CHECK(run_cli(cfg).code == 1);
}

TEST_CASE("list pm streams matrix blocks") {
  CommandConfig cfg;
  cfg.command = Command::list;
  cfg.n = 3;
  auto r = run_cli(cfg);
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  auto blocks = parse_matrix_blocks(in);
  auto want = enumerate_nl(3);
  REQUIRE(blocks.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(blocks[i] == want[i]);
  cfg.limit = 2;
  std::istringstream limited(run_cli(cfg).out);
  CHECK(parse_matrix_blocks(limited).size() == 2);
  cfg.limit.reset();
  cfg.n = 0;
  CHECK(run_cli(cfg).code == 1);
}

TEST_CASE("list nlt streams topology lines") {
  CommandConfig cfg;
  cfg.command = Command::list;
  cfg.kind = ListKind::nlt;
  cfg.n = 3;
  auto lines = split_lines(run_cli(cfg).out);
  auto want = generate_all(3, GenMode::stream);
  REQUIRE(lines.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(lines[i] == nlt_to_line(want[i]));
  CHECK(lines[0] == "e 0 1 2 0,1 0,2 1,2 0,1,2");
}

TEST_CASE("extend lists the one-point extensions") {
  auto path = write_file("cli_tmp_nshape.txt", kNShapeText);
  CommandConfig cfg;
  cfg.command = Command::extend;
  cfg.input_path = path;
  auto r = run_cli(cfg);
  REQUIRE(r.code == 0);
  auto a = testutil::n_shape();
  std::ostringstream want;
  for (IndexSet v : poset_vector_words(a))
    write_matrix_block(want, v_extension(a, v));
  CHECK(r.out == want.str());
  CHECK(r.out.rfind("10000\n01000\n11100\n01010\n00001\n\n", 0) == 0);
  cfg.limit = 3;
  std::istringstream limited(run_cli(cfg).out);
  CHECK(parse_matrix_blocks(limited).size() == 3);
  std::remove(path.c_str());
}

TEST_CASE("ideals emits the lattice as jsonl") {
  auto path = write_file("cli_tmp_nshape.txt", kNShapeText);
  CommandConfig cfg;
  cfg.command = Command::ideals;
  cfg.input_path = path;
  auto r = run_cli(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        ideal_lattice_to_jsonl(enumerate_poset_vectors(testutil::n_shape())));
  CHECK(r.out.rfind("\"e\"\n", 0) == 0);
  auto back = parse_ideal_lattice_jsonl(r.out);
  CHECK(back.vectors.size() == 8);
  CHECK(back.hasse.size() == 10);
  std::remove(path.c_str());
}

TEST_CASE("aut prints order, classes, and orbits") {
  auto path = write_file("cli_tmp_vshape.txt", "100\n110\n101\n");
  CommandConfig cfg;
  cfg.command = Command::aut;
  cfg.input_path = path;
  auto r = run_cli(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.out ==
        "order 2\n"
        "classes 0 | 1,2\n"
        "orbit e\n"
        "orbit 0\n"
        "orbit 01 02\n"
        "orbit 012\n");
  std::remove(path.c_str());

  auto a8path = write_file("cli_tmp_a8.txt", matrix_to_text(testutil::a8()));
  cfg.input_path = a8path;
  auto lines = split_lines(run_cli(cfg).out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "order 12");
  CHECK(lines[1] == "classes 0 | 1,2 | 3,5,6 | 4 | 7");
  CHECK(lines.size() == 2 + burnside_count(testutil::a8()));
  std::remove(a8path.c_str());
}

TEST_CASE("nlt resumes where a previous run stopped") {
  CommandConfig cfg;
  cfg.command = Command::nlt;
  cfg.n = 4;
  auto full = split_lines(run_cli(cfg).out);
  auto golden = testutil::load_lines("nlt_stream_n4.txt");
  CHECK(full == golden);

  cfg.limit = 10;
  auto head = split_lines(run_cli(cfg).out);
  REQUIRE(head.size() == 10);
  cfg.limit.reset();
  cfg.resume = head.back();
  auto tail = split_lines(run_cli(cfg).out);
  CHECK(head.size() + tail.size() == full.size());
  head.insert(head.end(), tail.begin(), tail.end());
  CHECK(head == full);

  cfg.n = 3;
  CHECK(run_cli(cfg).code == 1);  // resume line disagrees with --n
  cfg.n = -1;
  cfg.resume = "0 e";
  CHECK(run_cli(cfg).code == 2);
  cfg.resume.clear();
  CHECK(run_cli(cfg).code == 1);  // neither --n nor --resume
}

TEST_CASE("verify runs the suites") {
  CommandConfig cfg;
  cfg.command = Command::verify;
  cfg.n = 2;
  auto r = run_cli(cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("ok") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify ceiling falls back to the environment") {
  unsetenv("POSETFORGE_MAX_N");
  CHECK(default_verify_ceiling() == 5);
  setenv("POSETFORGE_MAX_N", "3", 1);
  CHECK(default_verify_ceiling() == 3);
  setenv("POSETFORGE_MAX_N", "junk", 1);
  CHECK(default_verify_ceiling() == 5);
  unsetenv("POSETFORGE_MAX_N");
}

TEST_CASE("dot renders diagrams") {
  auto path = write_file("cli_tmp_nshape.txt", kNShapeText);
  CommandConfig cfg;
  cfg.command = Command::dot;
  cfg.input_path = path;
  auto r = run_cli(cfg);
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("digraph poset {", 0) == 0);
  CHECK(r.out.find("e1 -> e3 [dir=none];") != std::string::npos);
  cfg.lattice = true;
  auto lat = run_cli(cfg);
  CHECK(lat.out.rfind("digraph lattice {", 0) == 0);
  CHECK(lat.out.find("v5 -> v7 [dir=none];") != std::string::npos);
  CHECK(lat.out.find("[label=\"13\"]") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("error paths map to exit codes") {
  CommandConfig cfg;
  cfg.command = Command::extend;
  cfg.input_path = "cli_tmp_does_not_exist.txt";
  CHECK(run_cli(cfg).code == 2);

  auto bad = write_file("cli_tmp_bad.txt", "100\n110\n011\n");
  cfg.input_path = bad;
  auto r = run_cli(cfg);
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);
  std::remove(bad.c_str());

  CommandConfig over;
  over.command = Command::count;
  over.n = 70;
  CHECK(run_cli(over).code == 3);

  CommandConfig nlt_over;
  nlt_over.command = Command::nlt;
  nlt_over.n = 30;
  CHECK(run_cli(nlt_over).code == 3);

  CommandConfig fmt;
  fmt.command = Command::count;
  fmt.n = 3;
  fmt.format = OutputFormat::text;
  CHECK(run_cli(fmt).code == 1);
  fmt.format = OutputFormat::csv;
  CHECK(run_cli(fmt).code == 0);

  CommandConfig shards;
  shards.command = Command::count;
  shards.n = 3;
  shards.shards = 0;
  CHECK(run_cli(shards).code == 1);
}

TEST_CASE("output flag writes to a file") {
  CommandConfig cfg;
  cfg.command = Command::count;
  cfg.n = 3;
  cfg.method = CountMethod::extension;
  cfg.output_path = "cli_tmp_out.txt";
  auto r = run_cli(cfg);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(read_file(cfg.output_path) == "7\n");
  std::remove(cfg.output_path.c_str());
  cfg.output_path = "cli_tmp_missing_dir/out.txt";
  CHECK(run_cli(cfg).code == 1);
}

TEST_CASE("installed binary wires the flags through") {
  const std::string bin = POSETFORGE_CLI_BIN;
  auto shell = [&](const std::string& args) {
    std::string cmd = bin + " " + args + " > cli_tmp_sub.txt 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };
  CHECK(shell("count --n 3 --method extension") == 0);
  CHECK(read_file("cli_tmp_sub.txt") == "7\n");
  CHECK(shell("count --n 3 --method stream") == 0);
  CHECK(read_file("cli_tmp_sub.txt") == "7\n");
  CHECK(shell("count --n 4 --format csv") == 0);
  CHECK(split_lines(read_file("cli_tmp_sub.txt")).size() == 2);
  CHECK(shell("count --n 4 --format text") == 1);
  CHECK(shell("list --n 2 --kind nlt") == 0);
  CHECK(read_file("cli_tmp_sub.txt") == "e 0 1 0,1\ne 0 0,1\n");
  CHECK(shell("--help") == 0);
  CHECK(shell("count") == 1);          // missing required --n
  CHECK(shell("count --n 70") == 3);
  CHECK(shell("bogus-verb") != 0);
  std::remove("cli_tmp_sub.txt");
}
