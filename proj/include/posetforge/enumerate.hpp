#ifndef POSETFORGE_ENUMERATE_HPP
#define POSETFORGE_ENUMERATE_HPP

// Census operations. Every naturally labeled poset on n+1 elements arises
// from exactly one parent on n elements (drop the last row), so the whole
// family is a tree rooted at the empty matrix, walked depth first with one
// row pushed per level. Counts come two independent ways: summing lattice
// sizes over parents, and streaming the topology generator. Isomorphism
// classes are counted by canonical-key dedup, and the per-parent orbit
// counts tie extensions to classes through Burnside.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <type_traits>
#include <unordered_set>
#include <vector>

#include "posetforge/bits.hpp"
#include "posetforge/errors.hpp"
#include "posetforge/ideals.hpp"
#include "posetforge/poset_matrix.hpp"
#include "posetforge/symmetry.hpp"
#include "posetforge/topology.hpp"

namespace posetforge {

// Stable across runs and platforms, for partitioning matrices into shards.
inline std::uint64_t stable_matrix_hash(std::span<const IndexSet> rows) {
  std::uint64_t h = 1469598103934665603ull;
  for (IndexSet r : rows)
    for (int b = 0; b < 8; ++b) {
      h ^= (r >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  return h;
}

// Visits every poset matrix of order n exactly once, children of one parent
// in length-lex order of the extending vector, parents recursively in the
// same order. The visitor receives the rows of the current matrix; a visitor
// returning bool stops the walk by returning false.
template <class F>
void for_each_pm(int n, F&& fn) {
  if (n < 0 || n > kMaxN) throw capacity_error("order must be between 0 and 64");
  std::vector<IndexSet> rows;
  rows.reserve(n);
  bool stop = false;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(rows.size()) == n) {
      if constexpr (std::is_void_v<
                        std::invoke_result_t<F&, std::span<const IndexSet>>>) {
        fn(std::span<const IndexSet>(rows));
      } else {
        if (!fn(std::span<const IndexSet>(rows))) stop = true;
      }
      return;
    }
    const int k = static_cast<int>(rows.size());
    for (IndexSet v : detail::ideal_words(rows)) {
      rows.push_back(v | bit(k));
      self(self);
      rows.pop_back();
      if (stop) return;
    }
  };
  rec(rec);
}

inline constexpr int kMaxMaterializeN = 8;

// The full family, materialized. Streaming callers should use for_each_pm.
inline std::vector<PosetMatrix> enumerate_nl(int n) {
  if (n > kMaxMaterializeN)
    throw capacity_error("family too large to materialize; stream instead");
  std::vector<PosetMatrix> out;
  for_each_pm(n, [&](std::span<const IndexSet> rows) {
    out.push_back(PosetMatrix::from_rows_unchecked(
        std::vector<IndexSet>(rows.begin(), rows.end())));
  });
  return out;
}

enum class CountMethod { extension, stream };

namespace detail {

// Runs fn(worker_index) on `shards` workers and sums the returned counts.
// Workers partition matrices by stable hash, so each matrix is counted by
// exactly one worker and the per-shard counts add.
template <class F>
std::uint64_t sharded_sum(int shards, F&& fn) {
  if (shards <= 1) return fn(0, 1);
  std::vector<std::uint64_t> totals(shards, 0);
  std::vector<std::thread> workers;
  for (int w = 0; w < shards; ++w)
    workers.emplace_back([&, w] { totals[w] = fn(w, shards); });
  for (auto& th : workers) th.join();
  std::uint64_t sum = 0;
  for (std::uint64_t t : totals) sum += t;
  return sum;
}

inline bool owns(std::span<const IndexSet> rows, int worker, int shards) {
  return shards <= 1 ||
         stable_matrix_hash(rows) % static_cast<std::uint64_t>(shards) ==
             static_cast<std::uint64_t>(worker);
}

}  // namespace detail

// Number of naturally labeled posets on n elements. The extension method
// sums lattice sizes over the parents; the stream method counts topologies.
inline std::uint64_t count_nl(int n, CountMethod method, int shards = 1) {
  if (n == 0) return 1;
  if (method == CountMethod::extension) {
    return detail::sharded_sum(shards, [n](int w, int s) {
      std::uint64_t total = 0;
      for_each_pm(n - 1, [&](std::span<const IndexSet> rows) {
        if (detail::owns(rows, w, s)) total += detail::ideal_count(rows);
      });
      return total;
    });
  }
  std::uint64_t total = 0;
  for (NltStream s(n); !s.done(); s.advance()) ++total;
  return total;
}

namespace detail {

// External distinct-count for canonical keys: sorted runs spilled to disk,
// then a k-way merge. Lets the census outgrow memory.
class DiskKeyStore {
 public:
  explicit DiskKeyStore(std::string dir) : dir_(std::move(dir)) {}

  void add(std::string key) {
    std::lock_guard<std::mutex> lock(mu_);
    buf_.push_back(std::move(key));
    if (buf_.size() >= kRunSize) spill();
  }

  std::uint64_t distinct_count() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!buf_.empty()) spill();
    struct Cursor {
      std::ifstream in;
      std::string line;
    };
    std::vector<Cursor> runs(paths_.size());
    using Head = std::pair<std::string, int>;
    std::priority_queue<Head, std::vector<Head>, std::greater<>> heap;
    for (std::size_t i = 0; i < paths_.size(); ++i) {
      runs[i].in.open(paths_[i]);
      if (!runs[i].in) throw error("cannot reopen key run " + paths_[i]);
      if (std::getline(runs[i].in, runs[i].line))
        heap.emplace(runs[i].line, static_cast<int>(i));
    }
    std::uint64_t distinct = 0;
    std::string prev;
    bool any = false;
    while (!heap.empty()) {
      auto [key, i] = heap.top();
      heap.pop();
      if (!any || key != prev) {
        ++distinct;
        prev = key;
        any = true;
      }
      if (std::getline(runs[i].in, runs[i].line)) heap.emplace(runs[i].line, i);
    }
    for (const std::string& p : paths_) std::remove(p.c_str());
    paths_.clear();
    return distinct;
  }

 private:
  static constexpr std::size_t kRunSize = 1u << 20;

  void spill() {
    std::sort(buf_.begin(), buf_.end());
    buf_.erase(std::unique(buf_.begin(), buf_.end()), buf_.end());
    std::string path = dir_ + "/keys_run_" + std::to_string(paths_.size()) + ".txt";
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw error("cannot write key run " + path);
    for (const std::string& k : buf_) out << k << '\n';
    paths_.push_back(path);
    buf_.clear();
  }

  std::string dir_;
  std::mutex mu_;
  std::vector<std::string> buf_;
  std::vector<std::string> paths_;
};

}  // namespace detail

// Number of isomorphism classes (unlabeled posets) on n elements, by
// canonical-key dedup over the labeled family. An empty keystore directory
// keeps the key set in memory.
inline std::uint64_t count_nip(int n, int shards = 1,
                               const std::string& keystore_dir = "") {
  if (!keystore_dir.empty()) {
    detail::DiskKeyStore store(keystore_dir);
    detail::sharded_sum(shards, [&](int w, int s) -> std::uint64_t {
      for_each_pm(n, [&](std::span<const IndexSet> rows) {
        if (!detail::owns(rows, w, s)) return;
        store.add(canonical_key(PosetMatrix::from_rows_unchecked(
            std::vector<IndexSet>(rows.begin(), rows.end()))));
      });
      return 0;
    });
    return store.distinct_count();
  }
  std::unordered_set<std::string> keys;
  std::mutex mu;
  detail::sharded_sum(shards, [&](int w, int s) -> std::uint64_t {
    for_each_pm(n, [&](std::span<const IndexSet> rows) {
      if (!detail::owns(rows, w, s)) return;
      std::string key = canonical_key(PosetMatrix::from_rows_unchecked(
          std::vector<IndexSet>(rows.begin(), rows.end())));
      if (s > 1) {
        std::lock_guard<std::mutex> lock(mu);
        keys.insert(std::move(key));
      } else {
        keys.insert(std::move(key));
      }
    });
    return 0;
  });
  return keys.size();
}

struct CountReport {
  int n = 0;
  std::uint64_t nl_extension = 0;
  std::uint64_t nl_stream = 0;
  std::uint64_t nip = 0;
  std::uint64_t orbit_sum = 0;
  std::uint64_t gap = 0;
  double seconds_extension = 0.0;
  double seconds_stream = 0.0;
};

// Counts everything for one order. The orbit pass also checks, parent by
// parent, that the Burnside orbit count equals the number of distinct
// isomorphism classes among that parent's own extensions; the global sum
// over-counts classes reachable from several parents, and the report carries
// that gap against the census.
inline CountReport orbit_sum_report(int n, int shards = 1,
                                    const std::string& keystore_dir = "") {
  if (n < 1) throw validation_error("report needs at least one element");
  CountReport r;
  r.n = n;
  auto timed = [](auto&& body) {
    auto start = std::chrono::steady_clock::now();
    std::uint64_t value = body();
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return std::pair<std::uint64_t, double>(value, dt.count());
  };
  std::tie(r.nl_extension, r.seconds_extension) =
      timed([&] { return count_nl(n, CountMethod::extension, shards); });
  std::tie(r.nl_stream, r.seconds_stream) =
      timed([&] { return count_nl(n, CountMethod::stream); });
  r.nip = count_nip(n, shards, keystore_dir);
  r.orbit_sum = detail::sharded_sum(shards, [n](int w, int s) {
    std::uint64_t total = 0;
    for_each_pm(n - 1, [&](std::span<const IndexSet> rows) {
      if (!detail::owns(rows, w, s)) return;
      PosetMatrix parent = PosetMatrix::from_rows_unchecked(
          std::vector<IndexSet>(rows.begin(), rows.end()));
      std::uint64_t orbit_count = burnside_count(parent);
      std::unordered_set<std::string> child_keys;
      for (IndexSet v : poset_vector_words(parent))
        child_keys.insert(canonical_key(v_extension(parent, v)));
      if (child_keys.size() != orbit_count)
        throw std::logic_error("orbit count differs from child class count");
      total += orbit_count;
    });
    return total;
  });
  r.gap = r.orbit_sum - r.nip;
  return r;
}

// ---- CSV format ----

inline std::string count_report_header() {
  return "n,nl_extension,nl_stream,nip,orbit_sum,gap,seconds_extension,seconds_stream";
}

inline std::string count_report_to_csv(const CountReport& r) {
  char secs[64];
  std::snprintf(secs, sizeof secs, "%.6f,%.6f", r.seconds_extension,
                r.seconds_stream);
  return std::to_string(r.n) + "," + std::to_string(r.nl_extension) + "," +
         std::to_string(r.nl_stream) + "," + std::to_string(r.nip) + "," +
         std::to_string(r.orbit_sum) + "," + std::to_string(r.gap) + "," + secs;
}

inline CountReport parse_count_report_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.rfind("n,", 0) == 0) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string::npos
                                            ? std::string::npos
                                            : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 8) throw parse_error("report row needs 8 fields");
    try {
      CountReport r;
      r.n = std::stoi(fields[0]);
      r.nl_extension = std::stoull(fields[1]);
      r.nl_stream = std::stoull(fields[2]);
      r.nip = std::stoull(fields[3]);
      r.orbit_sum = std::stoull(fields[4]);
      r.gap = std::stoull(fields[5]);
      r.seconds_extension = std::stod(fields[6]);
      r.seconds_stream = std::stod(fields[7]);
      return r;
    } catch (const std::exception&) {
      throw parse_error("malformed report row: " + line);
    }
  }
  throw parse_error("no report row found");
}

}  // namespace posetforge

#endif
