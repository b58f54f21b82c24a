#include "pegtwin/board.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>

#include "pegtwin/error.hpp"

namespace pegtwin {
namespace {

constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

constexpr std::uint64_t column_band(int col_lo, int col_hi) {
  std::uint64_t bits = 0;
  for (int r = 0; r < kGridSize; ++r)
    for (int c = col_lo; c <= col_hi; ++c) bits |= bit(index_of(r, c));
  return bits;
}

// Destinations reachable by a rightward jump need col >= 2, leftward col <= 4.
constexpr std::uint64_t kRightTargets = column_band(2, 6);
constexpr std::uint64_t kLeftTargets = column_band(0, 4);

constexpr std::array<std::uint8_t, 128> make_row_reversal() {
  std::array<std::uint8_t, 128> table{};
  for (unsigned v = 0; v < 128; ++v) {
    unsigned r = 0;
    for (int c = 0; c < kGridSize; ++c)
      if (v & (1u << c)) r |= 1u << (kGridSize - 1 - c);
    table[v] = static_cast<std::uint8_t>(r);
  }
  return table;
}

constexpr auto kRowReversal = make_row_reversal();

// kRowToColumn[v] places the 7 bits of a row value down column 0.
constexpr std::array<std::uint64_t, 128> make_row_to_column() {
  std::array<std::uint64_t, 128> table{};
  for (unsigned v = 0; v < 128; ++v)
    for (int c = 0; c < kGridSize; ++c)
      if (v & (1u << c)) table[v] |= bit(index_of(c, 0));
  return table;
}

constexpr auto kRowToColumn = make_row_to_column();

std::string describe(const Move& m) { return "move " + to_string(m); }

}  // namespace

const char* to_string(IllegalMoveError::Reason reason) {
  switch (reason) {
    case IllegalMoveError::Reason::kFromEmpty: return "from-empty";
    case IllegalMoveError::Reason::kOverEmpty: return "over-empty";
    case IllegalMoveError::Reason::kToOccupied: return "to-occupied";
    case IllegalMoveError::Reason::kGeometry: return "geometry";
  }
  return "unknown";
}

std::string to_string(const Move& m) {
  return "(" + std::to_string(m.from) + "," + std::to_string(m.over) + "," +
         std::to_string(m.to) + ")";
}

bool is_jump_geometry(const Move& m) {
  for (int i : {m.from, m.over, m.to})
    if (i < 0 || i >= kCellCount) return false;
  const int delta = std::abs(m.from - m.to);
  if (m.over * 2 != m.from + m.to) return false;
  if (delta == 2) return row_of(m.from) == row_of(m.to);
  if (delta == 14) return col_of(m.from) == col_of(m.to);
  return false;
}

Board initial_board(HoleMask mask) {
  return Board(mask.bits() & ~bit(kCenterHole));
}

bool is_valid_hole(int index) {
  if (index < 0 || index >= kCellCount)
    throw std::out_of_range("hole index " + std::to_string(index) +
                            " outside 0..48");
  return kEnglishMask.contains(index);
}

JumpTargets jump_targets(Board b, HoleMask mask) {
  const std::uint64_t pegs = b.bits() & mask.bits();
  const std::uint64_t empty = mask.bits() & ~pegs;
  JumpTargets t;
  t.up = empty & (pegs >> 7) & (pegs >> 14);
  t.down = empty & (pegs << 7) & (pegs << 14) & HoleMask::kGridBits;
  t.right = empty & (pegs << 1) & (pegs << 2) & kRightTargets;
  t.left = empty & (pegs >> 1) & (pegs >> 2) & kLeftTargets;
  return t;
}

std::vector<Move> legal_moves(Board b, HoleMask mask) {
  std::vector<Move> moves;
  for_each_legal_move(b, mask, [&](const Move& m) { moves.push_back(m); });
  return moves;
}

bool has_legal_move(Board b, HoleMask mask) { return jump_targets(b, mask).any() != 0; }

Board apply_move(Board b, const Move& m, HoleMask mask) {
  using Reason = IllegalMoveError::Reason;
  if (!is_jump_geometry(m) || !mask.contains(m.from) ||
      !mask.contains(m.over) || !mask.contains(m.to))
    throw IllegalMoveError(Reason::kGeometry,
                           describe(m) + " is not a straight jump between holes");
  if (!b.has_peg(m.from))
    throw IllegalMoveError(Reason::kFromEmpty,
                           describe(m) + ": no peg at " + std::to_string(m.from));
  if (!b.has_peg(m.over))
    throw IllegalMoveError(Reason::kOverEmpty,
                           describe(m) + ": no peg to jump at " +
                               std::to_string(m.over));
  if (b.has_peg(m.to))
    throw IllegalMoveError(Reason::kToOccupied,
                           describe(m) + ": hole " + std::to_string(m.to) +
                               " is occupied");
  return Board((b.bits() & ~bit(m.from) & ~bit(m.over)) | bit(m.to));
}

Board reflect_cols(Board b) {
  std::uint64_t out = 0;
  for (int r = 0; r < kGridSize; ++r) {
    const auto row = static_cast<unsigned>((b.bits() >> (r * kGridSize)) & 0x7f);
    out |= std::uint64_t{kRowReversal[row]} << (r * kGridSize);
  }
  return Board(out);
}

Board reflect_rows(Board b) {
  std::uint64_t out = 0;
  for (int r = 0; r < kGridSize; ++r) {
    const std::uint64_t row = (b.bits() >> (r * kGridSize)) & 0x7f;
    out |= row << ((kGridSize - 1 - r) * kGridSize);
  }
  return Board(out);
}

Board transpose(Board b) {
  std::uint64_t out = 0;
  for (int r = 0; r < kGridSize; ++r) {
    const auto row = static_cast<unsigned>((b.bits() >> (r * kGridSize)) & 0x7f);
    out |= kRowToColumn[row] << r;
  }
  return Board(out);
}

Board canonical(Board b, HoleMask mask) {
  const Board m(mask.bits());
  const bool square = transpose(m) == m;
  const bool cols = reflect_cols(m) == m;
  const bool rows = reflect_rows(m) == m;
  std::uint64_t best = b.bits();
  auto consider = [&](Board x) { best = std::min(best, x.bits()); };
  auto reflections = [&](Board x) {
    if (cols) consider(reflect_cols(x));
    if (rows) consider(reflect_rows(x));
    if (cols && rows) consider(reflect_rows(reflect_cols(x)));
  };
  reflections(b);
  if (square) {
    const Board t = transpose(b);
    consider(t);
    reflections(t);
  }
  return Board(best);
}

namespace {
int mirror_col(int i) { return index_of(row_of(i), kGridSize - 1 - col_of(i)); }
int mirror_row(int i) { return index_of(kGridSize - 1 - row_of(i), col_of(i)); }
}  // namespace

Move reflect_cols(const Move& m) {
  return {mirror_col(m.from), mirror_col(m.over), mirror_col(m.to)};
}

Move reflect_rows(const Move& m) {
  return {mirror_row(m.from), mirror_row(m.over), mirror_row(m.to)};
}

std::string render(Board b, HoleMask mask) {
  std::string out;
  for (int r = 0; r < kGridSize; ++r) {
    for (int c = 0; c < kGridSize; ++c) {
      const int i = index_of(r, c);
      if (!mask.contains(i))
        out += "·";
      else
        out += b.has_peg(i) ? "●" : "○";
    }
    out += '\n';
  }
  return out;
}

}  // namespace pegtwin
