#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "posetforge/ideals.hpp"
#include "posetforge/jsonl.hpp"
#include "test_util.hpp"

using namespace posetforge;
using testutil::w;

namespace {

// Oracle: v is an order ideal iff its support is closed under going down.
bool oracle_is_ideal(const PosetMatrix& a, IndexSet v) {
  for (int i = 0; i < a.n(); ++i) {
    if (!contains(v, i)) continue;
    for (int j = 0; j < i; ++j)
      if (a.entry(i, j) && !contains(v, j)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("fixed point test matches down-closure oracle") {
  for (int n = 0; n <= 4; ++n)
    for (auto& m : testutil::all_pm(n))
      for (IndexSet v = 0; v < (IndexSet{1} << n); ++v) {
        CHECK(is_poset_vector(m, v) == oracle_is_ideal(m, v));
        CHECK((bool_vector_product(v, m.rows()) == v) ==
              oracle_is_ideal(m, v));
      }
  CHECK_THROWS_AS(is_poset_vector(testutil::n_shape(), bit(5)),
                  validation_error);
}

TEST_CASE("poset vectors of the N shape") {
  std::vector<IndexSet> want{0,       w("0"),   w("1"),   w("01"),
                             w("13"), w("012"), w("013"), w("0123")};
  CHECK(poset_vector_words(testutil::n_shape()) == want);
  CHECK(count_poset_vectors(testutil::n_shape()) == 8);
}

TEST_CASE("vector counts for chains and antichains") {
  for (int n = 0; n <= 6; ++n) {
    CHECK(count_poset_vectors(standard_poset(n, PosetKind::chain)) ==
          static_cast<std::uint64_t>(n) + 1);
    CHECK(count_poset_vectors(standard_poset(n, PosetKind::antichain)) ==
          std::uint64_t{1} << n);
  }
}

TEST_CASE("lattice of the N shape") {
  auto lat = enumerate_poset_vectors(testutil::n_shape());
  REQUIRE(lat.vectors.size() == 8);
  CHECK(lat.vectors[0] == 0);
  CHECK(lat.vectors[7] == w("0123"));
  std::vector<std::pair<int, int>> want{{0, 1}, {0, 2}, {1, 3}, {2, 3},
                                        {2, 4}, {3, 5}, {3, 6}, {4, 6},
                                        {5, 7}, {6, 7}};
  CHECK(lat.hasse == want);
}

TEST_CASE("lattice order and edges are consistent") {
  for (int n = 0; n <= 4; ++n)
    for (auto& m : testutil::all_pm(n)) {
      auto lat = enumerate_poset_vectors(m);
      for (std::size_t i = 1; i < lat.vectors.size(); ++i)
        CHECK(length_lex_less(lat.vectors[i - 1], lat.vectors[i]));
      for (auto [lo, hi] : lat.hasse) {
        CHECK(is_subset(lat.vectors[lo], lat.vectors[hi]));
        CHECK(set_size(lat.vectors[hi]) == set_size(lat.vectors[lo]) + 1);
      }
    }
}

TEST_CASE("antichain to ideal and back") {
  auto a = testutil::n_shape();
  CHECK(antichain_to_vector(a, w("23")) == w("0123"));
  CHECK(antichain_to_vector(a, w("3")) == w("13"));
  CHECK(antichain_to_vector(a, 0) == 0);
  CHECK_THROWS_AS(antichain_to_vector(a, w("12")), validation_error);
  CHECK(ideal_to_max_antichain(a, w("013")) == w("03"));
  CHECK(ideal_to_max_antichain(a, 0) == 0);
  CHECK_THROWS_AS(ideal_to_max_antichain(a, w("3")), validation_error);
}

TEST_CASE("antichains and ideals are in bijection") {
  for (int n = 0; n <= 4; ++n)
    for (auto& m : testutil::all_pm(n)) {
      std::set<IndexSet> ideals;
      for (IndexSet v = 0; v < (IndexSet{1} << n); ++v)
        if (is_poset_vector(m, v)) ideals.insert(v);
      std::set<IndexSet> seen;
      for (IndexSet s = 0; s < (IndexSet{1} << n); ++s) {
        bool antichain = true;
        for (int i = 0; i < n && antichain; ++i)
          for (int j = 0; j < i && antichain; ++j)
            if (contains(s, i) && contains(s, j) && m.entry(i, j))
              antichain = false;
        if (!antichain) continue;
        IndexSet v = antichain_to_vector(m, s);
        CHECK(ideals.count(v) == 1);
        CHECK(ideal_to_max_antichain(m, v) == s);
        seen.insert(v);
      }
      CHECK(seen == ideals);
    }
}

TEST_CASE("join and meet in the vector lattice") {
  auto a = testutil::n_shape();
  auto [j, m] = lattice_join_meet(a, w("13"), w("012"));
  CHECK(j == w("0123"));
  CHECK(m == w("1"));
  CHECK_THROWS_AS(lattice_join_meet(a, w("3"), w("01")), validation_error);
}

TEST_CASE("join irreducibles are the principal ideals") {
  for (int n = 0; n <= 4; ++n)
    for (auto& m : testutil::all_pm(n)) {
      auto got = join_irreducibles(enumerate_poset_vectors(m));
      std::vector<IndexSet> want(m.rows().begin(), m.rows().end());
      std::sort(want.begin(), want.end(), length_lex_less);
      CHECK(got == want);
    }
}

TEST_CASE("lattice jsonl round trips") {
  auto lat = enumerate_poset_vectors(testutil::n_shape());
  auto text = ideal_lattice_to_jsonl(lat);
  auto first = text.substr(0, text.find('\n'));
  CHECK(first == "\"e\"");
  CHECK(text.find("[5,7]") != std::string::npos);
  auto back = parse_ideal_lattice_jsonl(text);
  CHECK(back.n == 4);
  CHECK(back.vectors == lat.vectors);
  CHECK(back.hasse == lat.hasse);
}

TEST_CASE("lattice jsonl rejects malformed input") {
  CHECK_THROWS_AS(parse_ideal_lattice_jsonl("[0,1]\n\"e\"\n"), parse_error);
  CHECK_THROWS_AS(parse_ideal_lattice_jsonl("\"0\"\n\"e\"\n"), parse_error);
  CHECK_THROWS_AS(parse_ideal_lattice_jsonl("\"e\"\n\"0\"\n[0,5]\n"),
                  parse_error);
  CHECK_THROWS_AS(parse_ideal_lattice_jsonl("not json\n"), parse_error);
  CHECK_THROWS_AS(parse_ideal_lattice_jsonl(""), parse_error);
}
