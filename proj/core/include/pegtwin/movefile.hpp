#pragma once

// The CSV transmission file carrying a solved game from the solver to the
// simulator:
//
//   game_id,game_score,move_index_1,move_index_2,move_index_3
//   101,1,26,24,25
//
// Column meaning, which the header names do not convey:
//   move_index_1  hole the peg is picked up from
//   move_index_2  hole the peg is released into
//   move_index_3  hole of the jumped peg, removed after the release
//
// ASCII, comma separated decimal integers, no quoting or padding. CRLF is
// accepted on input; output always uses LF and ends with a newline.

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pegtwin/board.hpp"

namespace pegtwin {

class TreeStore;

inline constexpr std::string_view kMoveFileHeader =
    "game_id,game_score,move_index_1,move_index_2,move_index_3";

struct MoveRow {
  std::int64_t game_id = 0;
  int game_score = 0;
  int from = 0;  // move_index_1
  int to = 0;    // move_index_2
  int over = 0;  // move_index_3

  Move move() const { return {from, over, to}; }
  static MoveRow from_move(std::int64_t game_id, int game_score, const Move& m) {
    return {game_id, game_score, m.from, m.to, m.over};
  }

  friend bool operator==(const MoveRow&, const MoveRow&) = default;
};

// Throws ParseError with the offending line number.
std::vector<MoveRow> parse_move_file(std::string_view text);
std::vector<MoveRow> parse_move_file(std::istream& in);

// Throws pegtwin::Error on a row that parse_move_file would reject.
std::string serialize_move_file(std::span<const MoveRow> rows);

struct SequenceOutcome {
  Board final_board;
  int score = 0;
};

// Replays the rows from the initial board. Throws SequenceError on mixed
// game ids, an illegal move, or a final peg count differing from game_score.
SequenceOutcome validate_sequence(std::span<const MoveRow> rows,
                                  HoleMask mask = kEnglishMask);

// Rows for the first leaf with `target_score` pegs, lowest level then lowest
// ordinal. Throws NotFoundError listing the achievable scores.
std::vector<MoveRow> export_solution(const TreeStore& store, int target_score,
                                     std::int64_t game_id);

}  // namespace pegtwin
