#include "dfs_oracle.hpp"

#include <algorithm>

namespace oracle {
namespace {

int index_of(const Cell& c) { return c.first * 7 + c.second; }
Cell cell_of(int index) { return {index / 7, index % 7}; }

void descend(const Cells& holes, const Cells& pegs, int level, int max_level, Census& census) {
  if (census.level_nodes.size() <= static_cast<std::size_t>(level))
    census.level_nodes.resize(level + 1, 0);
  ++census.level_nodes[level];
  ++census.total_nodes;
  const std::vector<Jump> jumps = brute_force_jumps(holes, pegs);
  if (jumps.empty()) {
    ++census.leaves[{static_cast<int>(pegs.size()), level}];
    return;
  }
  if (level == max_level) return;
  for (const Jump& j : jumps) descend(holes, play(pegs, j), level + 1, max_level, census);
}

Cells start_pegs(const Cells& holes, const Cell& empty) {
  Cells pegs = holes;
  pegs.erase(empty);
  return pegs;
}

}  // namespace

Cells cells_of_bits(std::uint64_t bits) {
  Cells out;
  for (int i = 0; i < 49; ++i)
    if ((bits >> i) & 1) out.insert(cell_of(i));
  return out;
}

std::uint64_t bits_of_cells(const Cells& cells) {
  std::uint64_t bits = 0;
  for (const Cell& c : cells) bits |= std::uint64_t{1} << index_of(c);
  return bits;
}

std::vector<Jump> brute_force_jumps(const Cells& holes, const Cells& pegs) {
  std::vector<Jump> out;
  for (const Cell& a : pegs) {
    for (const Cell& b : pegs) {
      for (const Cell& c : holes) {
        if (pegs.count(c)) continue;
        // b must sit exactly halfway between a and c on a row or column.
        const int dr = c.first - a.first;
        const int dc = c.second - a.second;
        const bool straight = (dr == 0 && (dc == 2 || dc == -2)) ||
                              (dc == 0 && (dr == 2 || dr == -2));
        if (!straight) continue;
        if (b.first * 2 != a.first + c.first || b.second * 2 != a.second + c.second) continue;
        out.push_back({index_of(a), index_of(b), index_of(c)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cells play(const Cells& pegs, const Jump& j) {
  Cells next = pegs;
  next.erase(cell_of(j.from));
  next.erase(cell_of(j.over));
  next.insert(cell_of(j.to));
  return next;
}

Census enumerate_tree(const Cells& holes, const Cell& empty, int max_level) {
  Census census;
  descend(holes, start_pegs(holes, empty), 1, max_level, census);
  return census;
}

Census enumerate_distinct(const Cells& holes, const Cell& empty, int max_level) {
  Census census;
  census.level_nodes.push_back(0);
  std::set<Cells> level{start_pegs(holes, empty)};
  for (int depth = 1; !level.empty(); ++depth) {
    census.level_nodes.push_back(level.size());
    census.total_nodes += level.size();
    std::set<Cells> next;
    for (const Cells& pegs : level) {
      const std::vector<Jump> jumps = brute_force_jumps(holes, pegs);
      if (jumps.empty()) ++census.leaves[{static_cast<int>(pegs.size()), depth}];
      for (const Jump& j : jumps) next.insert(play(pegs, j));
    }
    if (depth == max_level) break;
    level.swap(next);
  }
  return census;
}

Cells english_holes() {
  Cells out;
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c)
      if ((r >= 2 && r <= 4) || (c >= 2 && c <= 4)) out.insert({r, c});
  return out;
}

Cells rectangle_holes(int row_lo, int row_hi, int col_lo, int col_hi) {
  Cells out;
  for (int r = row_lo; r <= row_hi; ++r)
    for (int c = col_lo; c <= col_hi; ++c) out.insert({r, c});
  return out;
}

}  // namespace oracle
