#pragma once

// Reference implementations for tests. Boards are sets
// of (row, col) cells and moves are found by trying every cell triple.

#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

using Cell = std::pair<int, int>;  // (row, col)
using Cells = std::set<Cell>;

struct Jump {
  int from;
  int over;
  int to;
  friend auto operator<=>(const Jump&, const Jump&) = default;
};

Cells cells_of_bits(std::uint64_t bits);
std::uint64_t bits_of_cells(const Cells& cells);

// All jumps on `pegs` within `holes`, sorted by (from, over, to).
std::vector<Jump> brute_force_jumps(const Cells& holes, const Cells& pegs);

Cells play(const Cells& pegs, const Jump& j);

struct Census {
  // Index = level; index 0 unused. Level 1 is the start board.
  std::vector<std::uint64_t> level_nodes;
  // (score, level) -> leaf count
  std::map<std::pair<int, int>, std::uint64_t> leaves;
  std::uint64_t total_nodes = 0;
};

// Every move sequence from the start board, depth first, down to
// `max_level` (the start board is level 1).
Census enumerate_tree(const Cells& holes, const Cell& empty, int max_level = 64);

// Distinct positions per level, breadth first.
Census enumerate_distinct(const Cells& holes, const Cell& empty, int max_level = 64);

Cells english_holes();
Cells rectangle_holes(int row_lo, int row_hi, int col_lo, int col_hi);

}  // namespace oracle
