#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include <gtest/gtest.h>

#include "dfs_oracle.hpp"
#include "pegtwin/board.hpp"
#include "pegtwin/error.hpp"
#include "test_support.hpp"

namespace pegtwin {
namespace {

using testing::random_board;
using testing::random_reachable_board;

std::vector<std::tuple<int, int, int>> as_tuples(const std::vector<Move>& moves) {
  std::vector<std::tuple<int, int, int>> out;
  for (const Move& m : moves) out.emplace_back(m.from, m.over, m.to);
  return out;
}

std::vector<std::tuple<int, int, int>> oracle_tuples(Board b, HoleMask mask) {
  std::vector<std::tuple<int, int, int>> out;
  for (const auto& j : oracle::brute_force_jumps(oracle::cells_of_bits(mask.bits()),
                                                 oracle::cells_of_bits(b.bits())))
    out.emplace_back(j.from, j.over, j.to);
  return out;
}

TEST(HoleMaskTest, EnglishHas33Holes) {
  EXPECT_EQ(kEnglishMask.hole_count(), 33);
  for (int i = 0; i < kCellCount; ++i) {
    const int r = row_of(i), c = col_of(i);
    const bool expected = (r >= 2 && r <= 4) || (c >= 2 && c <= 4);
    EXPECT_EQ(kEnglishMask.contains(i), expected) << i;
  }
}

TEST(HoleMaskTest, RectangleBounds) {
  const HoleMask m = HoleMask::rectangle(2, 4, 1, 5);
  EXPECT_EQ(m.hole_count(), 15);
  EXPECT_TRUE(m.contains(index_of(2, 1)));
  EXPECT_FALSE(m.contains(index_of(1, 1)));
  EXPECT_FALSE(m.contains(-1));
  EXPECT_FALSE(m.contains(49));
}

TEST(BoardTest, InitialBoard) {
  const Board b = initial_board();
  EXPECT_EQ(b.peg_count(), 32);
  EXPECT_FALSE(b.has_peg(kCenterHole));
  EXPECT_EQ(b.bits() & ~kEnglishMask.bits(), 0u);
  EXPECT_EQ(legal_moves(b).size(), 4u);
}

TEST(BoardTest, IsValidHole) {
  EXPECT_TRUE(is_valid_hole(24));
  EXPECT_FALSE(is_valid_hole(0));
  EXPECT_TRUE(is_valid_hole(26));
  EXPECT_FALSE(is_valid_hole(48));
  EXPECT_THROW(is_valid_hole(-1), std::out_of_range);
  EXPECT_THROW(is_valid_hole(49), std::out_of_range);
}

TEST(BoardTest, InitialLegalMovesInDocumentedOrder) {
  const std::vector<Move> moves = legal_moves(initial_board());
  const std::vector<Move> expected = {{38, 31, 24}, {10, 17, 24}, {22, 23, 24}, {26, 25, 24}};
  EXPECT_EQ(moves, expected);
}

TEST(BoardTest, MovesAfterFirstSampleGameRow) {
  const Board b = apply_move(initial_board(), {26, 25, 24});
  const std::vector<Move> moves = legal_moves(b);
  EXPECT_NE(std::find(moves.begin(), moves.end(), Move{11, 18, 25}), moves.end());
  EXPECT_EQ(std::find(moves.begin(), moves.end(), Move{24, 25, 26}), moves.end());
  auto sorted = as_tuples(moves);
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, oracle_tuples(b, kEnglishMask));
}

TEST(BoardTest, SinglePegHasNoMoves) {
  const Board b(std::uint64_t{1} << 24);
  EXPECT_TRUE(legal_moves(b).empty());
  EXPECT_FALSE(has_legal_move(b));
}

TEST(BoardTest, ApplyMoveFirstSampleGameRow) {
  const Board b = apply_move(initial_board(), {26, 25, 24});
  EXPECT_EQ(b.peg_count(), 31);
  EXPECT_FALSE(b.has_peg(26));
  EXPECT_FALSE(b.has_peg(25));
  EXPECT_TRUE(b.has_peg(24));
}

TEST(BoardTest, ApplyMoveNamesViolatedCondition) {
  using Reason = IllegalMoveError::Reason;
  auto reason_of = [](Board b, Move m) {
    try {
      apply_move(b, m);
    } catch (const IllegalMoveError& e) {
      return e.reason();
    }
    ADD_FAILURE() << "no error for " << to_string(m);
    return Reason::kGeometry;
  };
  const Board start = initial_board();
  const Board after = apply_move(start, {26, 25, 24});
  EXPECT_EQ(reason_of(Board(std::uint64_t{1} << 25), {24, 25, 26}), Reason::kFromEmpty);
  EXPECT_EQ(reason_of(after, {24, 25, 26}), Reason::kOverEmpty);
  EXPECT_EQ(reason_of(start, {8, 9, 10}), Reason::kGeometry);     // 8 is off the cross
  EXPECT_EQ(reason_of(start, {16, 24, 32}), Reason::kGeometry);   // diagonal
  EXPECT_EQ(reason_of(start, {20, 21, 22}), Reason::kGeometry);   // wraps a row
  EXPECT_EQ(reason_of(start, {17, 18, 19}), Reason::kToOccupied);
}

TEST(BoardTest, ReflectionExamples) {
  const Board start = initial_board();
  EXPECT_EQ(reflect_cols(start), start);
  EXPECT_EQ(reflect_rows(start), start);
  const Board after = apply_move(start, {26, 25, 24});
  EXPECT_TRUE(is_symmetric_rows(after));
  EXPECT_FALSE(is_symmetric_cols(after));
}

TEST(BoardTest, RenderUsesThreeGlyphs) {
  const std::string text = render(initial_board());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 7);
  const std::string first_line = text.substr(0, text.find('\n'));
  EXPECT_EQ(first_line, "··●●●··");
  const std::string middle = "●●●○●●●";
  EXPECT_NE(text.find(middle), std::string::npos);
}

TEST(BoardTest, MoveToStringAndGeometry) {
  EXPECT_TRUE(is_jump_geometry({26, 25, 24}));
  EXPECT_TRUE(is_jump_geometry({10, 17, 24}));
  EXPECT_FALSE(is_jump_geometry({26, 24, 25}));
  EXPECT_FALSE(is_jump_geometry({5, 6, 7}));
}

TEST(BoardProperty, LegalMovesMatchBruteForceOnRandomBoards) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Board b = i % 2 ? random_board(rng) : random_reachable_board(rng);
    auto ours = as_tuples(legal_moves(b));
    std::sort(ours.begin(), ours.end());
    ASSERT_EQ(ours, oracle_tuples(b, kEnglishMask)) << b.bits();
  }
}

TEST(BoardProperty, LegalMoveOrderIsDestinationThenDirection) {
  std::mt19937_64 rng(12);
  auto direction = [](const Move& m) {
    if (m.from == m.to + 14) return 0;
    if (m.from == m.to - 14) return 1;
    if (m.from == m.to - 2) return 2;
    return 3;
  };
  for (int i = 0; i < 1000; ++i) {
    const std::vector<Move> moves = legal_moves(random_reachable_board(rng));
    for (std::size_t k = 1; k < moves.size(); ++k) {
      const auto prev = std::make_pair(moves[k - 1].to, direction(moves[k - 1]));
      const auto cur = std::make_pair(moves[k].to, direction(moves[k]));
      ASSERT_LT(prev, cur);
    }
  }
}

TEST(BoardProperty, PegCountDecrementLaw) {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const Board b = random_reachable_board(rng);
    for (const Move& m : legal_moves(b)) {
      const Board next = apply_move(b, m);
      ASSERT_EQ(next.peg_count(), b.peg_count() - 1);
      ASSERT_EQ(next.bits() & ~kEnglishMask.bits(), 0u);
      ++checked;
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(BoardProperty, ReflectionsAreCommutingInvolutions) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 1000; ++i) {
    const Board b = random_board(rng);
    ASSERT_EQ(reflect_cols(reflect_cols(b)), b);
    ASSERT_EQ(reflect_rows(reflect_rows(b)), b);
    ASSERT_EQ(reflect_cols(reflect_rows(b)), reflect_rows(reflect_cols(b)));
    ASSERT_EQ(transpose(transpose(b)), b);
    ASSERT_EQ(reflect_cols(b).bits() & ~kEnglishMask.bits(), 0u);
    ASSERT_EQ(reflect_rows(b).bits() & ~kEnglishMask.bits(), 0u);
    ASSERT_EQ(is_symmetric_cols(b), reflect_cols(b) == b);
    ASSERT_EQ(is_symmetric_rows(b), reflect_rows(b) == b);
  }
}

TEST(BoardProperty, ReflectionMapsCellsAsDocumented) {
  for (int i = 0; i < kCellCount; ++i) {
    const Board b(std::uint64_t{1} << i);
    EXPECT_EQ(reflect_cols(b).bits(), std::uint64_t{1} << index_of(row_of(i), 6 - col_of(i)));
    EXPECT_EQ(reflect_rows(b).bits(), std::uint64_t{1} << index_of(6 - row_of(i), col_of(i)));
    EXPECT_EQ(transpose(b).bits(), std::uint64_t{1} << index_of(col_of(i), row_of(i)));
  }
}

TEST(BoardProperty, MoveSetEquivariance) {
  std::mt19937_64 rng(15);
  auto as_set = [](const std::vector<Move>& moves) {
    std::set<std::tuple<int, int, int>> out;
    for (const Move& m : moves) out.emplace(m.from, m.over, m.to);
    return out;
  };
  for (int i = 0; i < 1000; ++i) {
    const Board b = random_reachable_board(rng);
    std::vector<Move> cols, rows;
    for (const Move& m : legal_moves(b)) {
      cols.push_back(reflect_cols(m));
      rows.push_back(reflect_rows(m));
    }
    ASSERT_EQ(as_set(cols), as_set(legal_moves(reflect_cols(b))));
    ASSERT_EQ(as_set(rows), as_set(legal_moves(reflect_rows(b))));
  }
}

TEST(BoardProperty, CanonicalIsClassInvariant) {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 1000; ++i) {
    const Board b = random_reachable_board(rng);
    const Board c = canonical(b);
    ASSERT_LE(c.bits(), b.bits());
    ASSERT_EQ(canonical(c), c);
    ASSERT_EQ(canonical(reflect_cols(b)), c);
    ASSERT_EQ(canonical(reflect_rows(b)), c);
    ASSERT_EQ(canonical(transpose(b)), c);
    ASSERT_EQ(c.peg_count(), b.peg_count());
  }
}

TEST(BoardProperty, CanonicalRespectsAsymmetricMask) {
  // A 3x5 block is not transpose-symmetric, so transposed images are not
  // valid boards on it.
  const HoleMask mask = HoleMask::rectangle(2, 4, 1, 5);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Board b = random_board(rng, mask);
    const Board c = canonical(b, mask);
    ASSERT_EQ(c.bits() & ~mask.bits(), 0u);
    ASSERT_EQ(canonical(reflect_cols(b), mask), c);
  }
}

}  // namespace
}  // namespace pegtwin
