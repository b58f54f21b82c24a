#include "pegtwin/movefile.hpp"

#include <array>
#include <charconv>
#include <iterator>
#include <optional>

#include "pegtwin/error.hpp"
#include "pegtwin/solver.hpp"
#include "pegtwin/treestore.hpp"

namespace pegtwin {
namespace {

constexpr int kMaxScore = 32;

std::optional<std::int64_t> parse_int(std::string_view field) {
  std::int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (first == last) return std::nullopt;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

// Empty string when the row is well formed.
std::string check_row(const MoveRow& row) {
  if (row.game_score < 1 || row.game_score > kMaxScore)
    return "game_score " + std::to_string(row.game_score) + " outside 1..32";
  for (int index : {row.from, row.to, row.over}) {
    if (index < 0 || index >= kCellCount)
      return "index " + std::to_string(index) + " outside board";
    if (!kEnglishMask.contains(index)) return "index " + std::to_string(index) + " is not a hole";
  }
  if (!is_jump_geometry(row.move()))
    return "indices " + std::to_string(row.from) + "," + std::to_string(row.to) + "," +
           std::to_string(row.over) + " are not a straight jump";
  return {};
}

MoveRow parse_row(std::string_view line, int line_no) {
  std::array<std::int64_t, 5> values{};
  std::size_t field = 0;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::string_view text = line.substr(start, comma == std::string_view::npos
                                                          ? std::string_view::npos
                                                          : comma - start);
    if (field >= values.size())
      throw ParseError(line_no, "expected 5 fields");
    const auto v = parse_int(text);
    if (!v) throw ParseError(line_no, "field " + std::to_string(field + 1) + " '" +
                                          std::string(text) + "' is not an integer");
    values[field++] = *v;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (field != values.size())
    throw ParseError(line_no, "expected 5 fields, got " + std::to_string(field));

  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < -1000 || values[i] > 1000)
      throw ParseError(line_no, "field " + std::to_string(i + 1) + " out of range");
  MoveRow row{values[0], static_cast<int>(values[1]), static_cast<int>(values[2]),
              static_cast<int>(values[3]), static_cast<int>(values[4])};
  if (std::string problem = check_row(row); !problem.empty())
    throw ParseError(line_no, problem);
  return row;
}

}  // namespace

std::vector<MoveRow> parse_move_file(std::string_view text) {
  std::vector<MoveRow> rows;
  int line_no = 0;
  bool saw_header = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!saw_header) {
      if (line != kMoveFileHeader)
        throw ParseError(line_no, "expected header '" + std::string(kMoveFileHeader) + "'");
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    rows.push_back(parse_row(line, line_no));
  }
  if (!saw_header) throw ParseError(1, "missing header");
  return rows;
}

std::vector<MoveRow> parse_move_file(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_move_file(text);
}

std::string serialize_move_file(std::span<const MoveRow> rows) {
  std::string out(kMoveFileHeader);
  out += '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const MoveRow& r = rows[i];
    if (std::string problem = check_row(r); !problem.empty())
      throw Error("row " + std::to_string(i + 1) + ": " + problem);
    out += std::to_string(r.game_id) + ',' + std::to_string(r.game_score) + ',' +
           std::to_string(r.from) + ',' + std::to_string(r.to) + ',' + std::to_string(r.over) +
           '\n';
  }
  return out;
}

SequenceOutcome validate_sequence(std::span<const MoveRow> rows, HoleMask mask) {
  Board board = initial_board(mask);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int row_no = static_cast<int>(i + 1);
    if (rows[i].game_id != rows.front().game_id)
      throw SequenceError(row_no, "game_id " + std::to_string(rows[i].game_id) +
                                      " differs from " + std::to_string(rows.front().game_id));
    try {
      board = apply_move(board, rows[i].move(), mask);
    } catch (const IllegalMoveError& e) {
      throw SequenceError(row_no, std::string(to_string(e.reason())) + ": " + e.what(),
                          e.reason());
    }
  }
  const int score = board.peg_count();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].game_score != score)
      throw SequenceError(static_cast<int>(i + 1),
                          "game_score " + std::to_string(rows[i].game_score) +
                              " but the replay ends with " + std::to_string(score) + " pegs");
  }
  return {board, score};
}

std::vector<MoveRow> export_solution(const TreeStore& store, int target_score,
                                     std::int64_t game_id) {
  const HoleMask mask = store.header().hole_mask;
  const int level = mask.hole_count() - target_score;
  if (level >= 1 && level <= store.depth()) {
    for (const TreeRecord& r : store.read_level(level)) {
      if (r.board.peg_count() != target_score || has_legal_move(r.board, mask)) continue;
      std::vector<MoveRow> rows;
      for (const Move& m : reconstruct_path(store, r.level, r.ordinal))
        rows.push_back(MoveRow::from_move(game_id, target_score, m));
      validate_sequence(rows, mask);
      return rows;
    }
  }
  std::string achievable;
  for (int s : census_report(store).achievable_scores())
    achievable += (achievable.empty() ? "" : ", ") + std::to_string(s);
  throw NotFoundError("no solution with score " + std::to_string(target_score) +
                      "; achievable scores: " + (achievable.empty() ? "none" : achievable));
}

}  // namespace pegtwin
