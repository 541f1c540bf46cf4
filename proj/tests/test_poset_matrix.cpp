#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "posetforge/poset_matrix.hpp"
#include "test_util.hpp"

using namespace posetforge;
using testutil::w;

TEST_CASE("validate accepts transitive triangular fillings") {
  CHECK(validate_poset_matrix({0b1, 0b11}));
  CHECK(validate_poset_matrix({0b1}));
  CHECK(validate_poset_matrix({}));
  // 0<1, 1<2 without 0<2
  CHECK_FALSE(validate_poset_matrix({0b1, 0b11, 0b110}));
}

TEST_CASE("validate rejects malformed shapes") {
  CHECK_FALSE(validate_poset_matrix({0b10, 0b11}));   // missing diagonal
  CHECK_FALSE(validate_poset_matrix({0b11, 0b11}));   // above diagonal
  CHECK_FALSE(validate_poset_matrix({0b1, 0b111}));   // out of range column
}

TEST_CASE("validate agrees with reachability closure oracle") {
  for (int n = 0; n <= 4; ++n) {
    for (auto& rows : testutil::all_triangular_fillings(n)) {
      CHECK(validate_poset_matrix(rows) ==
            testutil::oracle_is_transitive(rows));
    }
  }
}

TEST_CASE("from_rows validates and from_rows_unchecked trusts") {
  auto a = PosetMatrix::from_rows({0b1, 0b11});
  CHECK(a.n() == 2);
  CHECK(a.entry(1, 0));
  CHECK_FALSE(a.entry(0, 1));
  CHECK_THROWS_AS(PosetMatrix::from_rows({0b1, 0b11, 0b110}),
                  validation_error);
}

TEST_CASE("from_relations closes and checks labeling") {
  auto a = from_relations(4, {{0, 2}, {1, 2}, {1, 3}});
  CHECK(matrix_to_text(a) == "1000\n0100\n1110\n0101\n");
  auto chain = from_relations(3, {{0, 1}, {1, 2}});
  CHECK(chain.entry(2, 0));
  CHECK_THROWS_AS(from_relations(3, {{2, 1}}), validation_error);
  CHECK_THROWS_AS(from_relations(3, {{1, 1}}), validation_error);
  CHECK_THROWS_AS(from_relations(3, {{0, 3}}), validation_error);
}

TEST_CASE("v_extension appends a maximal element") {
  auto a = testutil::n_shape();
  auto ext = v_extension(a, w("13"));
  CHECK(ext.n() == 5);
  CHECK(matrix_to_text(ext) == "10000\n01000\n11100\n01010\n01011\n");
  // support must be a down set
  auto c2 = standard_poset(2, PosetKind::chain);
  try {
    v_extension(c2, bit(1));
    FAIL("expected extension_error");
  } catch (const extension_error& e) {
    CHECK(e.witness_i == 1);
    CHECK(e.witness_j == 0);
  }
  CHECK_THROWS_AS(v_extension(a, bit(4)), validation_error);
}

TEST_CASE("strict up and down sets") {
  auto a = testutil::a8();
  auto [down1, up1] = strict_sets(a, 1);
  CHECK(down1 == w("0"));
  CHECK(up1 == w("34567"));
  auto [down4, up4] = strict_sets(a, 4);
  CHECK(down4 == w("012"));
  CHECK(up4 == w("7"));
  CHECK_THROWS_AS(strict_sets(a, 8), validation_error);
  auto ups = strict_up_sets(a);
  REQUIRE(ups.size() == 8);
  CHECK(ups[7] == 0);
  CHECK(ups[0] == w("1234567"));
}

TEST_CASE("standard posets") {
  auto c3 = standard_poset(3, PosetKind::chain);
  CHECK(matrix_to_text(c3) == "100\n110\n111\n");
  auto i3 = standard_poset(3, PosetKind::antichain);
  CHECK(matrix_to_text(i3) == "100\n010\n001\n");
  CHECK(standard_poset(0, PosetKind::chain).n() == 0);
}

TEST_CASE("disjoint_sum stacks blocks") {
  auto c2 = standard_poset(2, PosetKind::chain);
  auto s = disjoint_sum(c2, c2);
  CHECK(matrix_to_text(s) == "1000\n1100\n0010\n0011\n");
  CHECK(disjoint_sum(standard_poset(0, PosetKind::chain), c2).n() == 2);
}

TEST_CASE("boolean product and idempotence") {
  auto a = testutil::n_shape();
  CHECK(bool_product(a, a) == a.bool_matrix());
  for (auto& m : testutil::all_pm(4))
    CHECK(bool_product(m, m) == m.bool_matrix());
  BoolMatrix two{2, {0b1, 0b10}};
  BoolMatrix other{3, {0b1, 0b10, 0b100}};
  CHECK_THROWS_AS(bool_product(two, other), validation_error);
}

TEST_CASE("cover_relations lists edges in label order") {
  auto a = testutil::n_shape();
  std::vector<std::pair<int, int>> want{{0, 2}, {1, 2}, {1, 3}};
  CHECK(cover_relations(a) == want);
  std::vector<std::pair<int, int>> a8_want{
      {0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4},
      {1, 5}, {2, 5}, {1, 6}, {2, 6}, {4, 7}};
  CHECK(cover_relations(testutil::a8()) == a8_want);
  CHECK(cover_relations(standard_poset(3, PosetKind::antichain)).empty());
}

TEST_CASE("cover_relations regenerate the matrix") {
  for (int n = 0; n <= 4; ++n)
    for (auto& m : testutil::all_pm(n))
      CHECK(from_relations(n, cover_relations(m)) == m);
}

TEST_CASE("height_and_width matches subset-scan oracle") {
  for (int n = 0; n <= 4; ++n)
    for (auto& m : testutil::all_pm(n))
      CHECK(height_and_width(m) == testutil::oracle_height_width(m));
  CHECK(height_and_width(testutil::n_shape()) == std::pair{2, 2});
  CHECK(height_and_width(testutil::a8()) == std::pair{4, 4});
  CHECK(height_and_width(standard_poset(3, PosetKind::chain)) ==
        std::pair{3, 1});
}

TEST_CASE("text format round trips") {
  for (auto& m : testutil::all_pm(3)) {
    auto text = matrix_to_text(m);
    CHECK(matrix_to_text(parse_poset_matrix(text)) == text);
  }
  CHECK_THROWS_AS(parse_poset_matrix("10\n110\n"), parse_error);
  CHECK_THROWS_AS(parse_poset_matrix("1x\n11\n"), parse_error);
  CHECK_THROWS_AS(parse_poset_matrix("100\n110\n011\n"), validation_error);
  // blank lines around a block are tolerated
  CHECK(parse_poset_matrix("\n10\n01\n\n").n() == 2);
}

TEST_CASE("matrix blocks round trip") {
  std::vector<PosetMatrix> ms{testutil::n_shape(),
                              standard_poset(2, PosetKind::chain),
                              standard_poset(3, PosetKind::antichain)};
  std::ostringstream out;
  for (auto& m : ms) write_matrix_block(out, m);
  std::istringstream in(out.str());
  auto back = parse_matrix_blocks(in);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back[i] == ms[i]);
  std::istringstream empty("");
  CHECK(parse_matrix_blocks(empty).empty());
  std::istringstream bad("10\n11\n\n10\n");
  CHECK_THROWS_AS(parse_matrix_blocks(bad), parse_error);
}
