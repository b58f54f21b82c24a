#pragma once

// English peg solitaire on a 7x7 bounding grid. Hole index = row * 7 + col.
//
//        0  1  2  3  4  5  6
//   0    .  .  2  3  4  .  .
//   1    .  .  9 10 11  .  .
//   2   14 15 16 17 18 19 20
//   3   21 22 23 24 25 26 27
//   4   28 29 30 31 32 33 34
//   5    .  . 37 38 39  .  .
//   6    .  . 44 45 46  .  .

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace pegtwin {

inline constexpr int kGridSize = 7;
inline constexpr int kCellCount = kGridSize * kGridSize;
inline constexpr int kCenterHole = 24;

constexpr int row_of(int index) { return index / kGridSize; }
constexpr int col_of(int index) { return index % kGridSize; }
constexpr int index_of(int row, int col) { return row * kGridSize + col; }

// Set of cells of the 7x7 grid that are holes.
class HoleMask {
 public:
  constexpr HoleMask() = default;
  constexpr explicit HoleMask(std::uint64_t bits) : bits_(bits & kGridBits) {}

  static constexpr HoleMask english() {
    std::uint64_t bits = 0;
    for (int i = 0; i < kCellCount; ++i) {
      const int r = row_of(i), c = col_of(i);
      const bool corner = (r < 2 || r > 4) && (c < 2 || c > 4);
      if (!corner) bits |= std::uint64_t{1} << i;
    }
    return HoleMask(bits);
  }

  // Axis-aligned rectangle of holes; inclusive bounds.
  static constexpr HoleMask rectangle(int row_lo, int row_hi, int col_lo,
                                      int col_hi) {
    std::uint64_t bits = 0;
    for (int r = row_lo; r <= row_hi; ++r)
      for (int c = col_lo; c <= col_hi; ++c)
        bits |= std::uint64_t{1} << index_of(r, c);
    return HoleMask(bits);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int hole_count() const { return std::popcount(bits_); }
  constexpr bool contains(int index) const {
    return index >= 0 && index < kCellCount && ((bits_ >> index) & 1) != 0;
  }

  friend constexpr bool operator==(HoleMask, HoleMask) = default;

  static constexpr std::uint64_t kGridBits = (std::uint64_t{1} << kCellCount) - 1;

 private:
  std::uint64_t bits_ = 0;
};

inline constexpr HoleMask kEnglishMask = HoleMask::english();

// One jump: the peg at `from` jumps `over` into the empty hole `to`.
struct Move {
  int from = 0;
  int over = 0;
  int to = 0;

  friend constexpr bool operator==(const Move&, const Move&) = default;
};

std::string to_string(const Move& m);

// True iff from/over/to are collinear grid neighbours on one row or column
// with `over` in the middle. Hole membership is not checked.
bool is_jump_geometry(const Move& m);

// Peg occupancy; bit i set iff a peg sits in hole i.
class Board {
 public:
  constexpr Board() = default;
  constexpr explicit Board(std::uint64_t occupancy) : bits_(occupancy) {}

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int peg_count() const { return std::popcount(bits_); }
  constexpr bool has_peg(int index) const { return ((bits_ >> index) & 1) != 0; }

  friend constexpr bool operator==(Board, Board) = default;

 private:
  std::uint64_t bits_ = 0;
};

// All holes filled except the centre.
Board initial_board(HoleMask mask = kEnglishMask);

// Throws std::out_of_range unless 0 <= index <= 48.
bool is_valid_hole(int index);

// Ordered by destination hole ascending, then Up, Down, Right, Left where
// Up means the peg two rows below jumps upward into the hole.
std::vector<Move> legal_moves(Board b, HoleMask mask = kEnglishMask);

// Destination holes of every legal jump, split by direction.
struct JumpTargets {
  std::uint64_t up = 0, down = 0, right = 0, left = 0;

  std::uint64_t any() const { return up | down | right | left; }
};

JumpTargets jump_targets(Board b, HoleMask mask = kEnglishMask);

// Calls fn(Move) for each legal move in legal_moves() order.
template <class Fn>
void for_each_legal_move(Board b, HoleMask mask, Fn&& fn) {
  const JumpTargets t = jump_targets(b, mask);
  std::uint64_t any = t.any();
  while (any) {
    const int h = std::countr_zero(any);
    const std::uint64_t bit = std::uint64_t{1} << h;
    any &= any - 1;
    if (t.up & bit) fn(Move{h + 14, h + 7, h});
    if (t.down & bit) fn(Move{h - 14, h - 7, h});
    if (t.right & bit) fn(Move{h - 2, h - 1, h});
    if (t.left & bit) fn(Move{h + 2, h + 1, h});
  }
}

// Cheaper than legal_moves().empty().
bool has_legal_move(Board b, HoleMask mask = kEnglishMask);

// Throws IllegalMoveError naming the first violated condition.
Board apply_move(Board b, const Move& m, HoleMask mask = kEnglishMask);

// (row, col) -> (row, 6 - col)
Board reflect_cols(Board b);
// (row, col) -> (6 - row, col)
Board reflect_rows(Board b);
Move reflect_cols(const Move& m);
Move reflect_rows(const Move& m);

inline bool is_symmetric_cols(Board b) { return reflect_cols(b) == b; }
inline bool is_symmetric_rows(Board b) { return reflect_rows(b) == b; }

// (row, col) -> (col, row)
Board transpose(Board b);

// Smallest occupancy among the images of `b` under the grid symmetries
// (reflections, transpose, rotations) that map `mask` onto itself.
Board canonical(Board b, HoleMask mask = kEnglishMask);

// Seven lines of seven glyphs: peg, empty hole, or off-board cell.
std::string render(Board b, HoleMask mask = kEnglishMask);

}  // namespace pegtwin
