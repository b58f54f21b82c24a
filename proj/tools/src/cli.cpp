#include "pegtwin/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "pegtwin/error.hpp"
#include "pegtwin/metrics.hpp"
#include "pegtwin/movefile.hpp"
#include "pegtwin/simulator.hpp"
#include "pegtwin/solver.hpp"
#include "pegtwin/treestore.hpp"

namespace pegtwin::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  usage error\n"
    "  2  I/O error (store or file cannot be read or written)\n"
    "  3  requested score has no solution in the store\n"
    "  4  invalid move file";

struct SolveOptions {
  std::string store;
  std::string cap = "3000000";
  std::string symmetry = "on";
  std::string dedup = "exact";
  std::string board = "english";
  int max_level = 32;
  unsigned threads = 0;
};

struct ExportOptions {
  std::string store;
  int score = 1;
  std::string out;
  std::int64_t game_id = 101;
};

struct ReplayOptions {
  std::string csv;
  std::string trace = "-";
  std::string metrics;
  double dt = 1.0 / 60.0;
  int ascii = 0;
};

// Thrown for bad option values that CLI11 cannot check on its own.
struct UsageError : Error {
  using Error::Error;
};

HoleMask board_mask(const std::string& name) {
  if (name == "english") return kEnglishMask;
  if (name == "square3") return HoleMask::rectangle(2, 4, 2, 4);
  if (name == "rect3x5") return HoleMask::rectangle(2, 4, 1, 5);
  if (name == "square4") return HoleMask::rectangle(2, 5, 2, 5);
  throw UsageError("unknown board '" + name + "'");
}

std::uint64_t parse_cap(const std::string& text) {
  if (text == "unlimited") return SolverConfig::kUnlimited;
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
    throw UsageError("--cap must be a positive integer or 'unlimited'");
  return value;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StoreError("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw StoreError("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw StoreError("read failed: " + path.string());
  return text.str();
}

std::string describe_header(const StoreHeader& h) {
  const std::string cap = h.level_child_cap >= SolverConfig::kUnlimited
                              ? std::string("unlimited")
                              : std::to_string(h.level_child_cap);
  return fmt::format(
      "holes={} cap={} symmetry={} dedup={} max_level={} levels={} complete={}\n",
      h.hole_mask.hole_count(), cap, h.symmetry_filter ? "on" : "off",
      to_string(static_cast<Dedup>(h.dedup)), h.max_level, h.sealed_levels,
      h.complete ? 1 : 0);
}

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  SolverConfig config;
  config.level_child_cap = parse_cap(o.cap);
  config.symmetry_filter = o.symmetry == "on";
  try {
    config.dedup = parse_dedup(o.dedup);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.max_level = o.max_level;
  config.threads = o.threads;
  if (o.board != "english") config.reduced_hole_mask = board_mask(o.board);

  const fs::path dir(o.store);
  TreeStore store = TreeStore::create(dir, make_store_header(config));
  SolverStats stats;
  const Census census = run_bfs(config, store, stats);
  const std::string census_text = format_census(census);
  const std::string stats_text = solver_report(stats);
  write_text(dir / "census.txt", census_text);
  write_text(dir / "solver_stats.txt", stats_text);
  out << census_text << '\n' << stats_text;
  return kOk;
}

int cmd_report(const std::string& store_dir, std::ostream& out) {
  const TreeStore store = TreeStore::open(store_dir);
  out << describe_header(store.header()) << format_census(census_report(store));
  return kOk;
}

int cmd_export(const ExportOptions& o, std::ostream& out, std::ostream& err) {
  const TreeStore store = TreeStore::open(o.store);
  std::vector<MoveRow> rows;
  try {
    rows = export_solution(store, o.score, o.game_id);
  } catch (const NotFoundError& e) {
    err << "export: " << e.what() << '\n';
    return kScoreUnachievable;
  }
  const std::string text = serialize_move_file(rows);
  if (o.out.empty() || o.out == "-") {
    out << text;
  } else {
    write_text(o.out, text);
    out << fmt::format("wrote {} rows to {}\n", rows.size(), o.out);
  }
  return kOk;
}

// Parses and validates a move file; reports problems on `err`.
std::optional<std::vector<MoveRow>> load_moves(const std::string& path, const char* command,
                                               std::ostream& err) {
  const std::string text = read_text(path);
  try {
    std::vector<MoveRow> rows = parse_move_file(text);
    validate_sequence(rows);
    return rows;
  } catch (const ParseError& e) {
    err << command << ": " << path << ": " << e.what() << '\n';
  } catch (const SequenceError& e) {
    err << command << ": " << path << ": " << e.what() << '\n';
  }
  return std::nullopt;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto rows = load_moves(path, "verify", err);
  if (!rows) return kInvalidMoveFile;
  out << "score " << validate_sequence(*rows).score << '\n';
  return kOk;
}

int cmd_replay(const ReplayOptions& o, std::ostream& out, std::ostream& err) {
  const auto rows = load_moves(o.csv, "replay", err);
  if (!rows) return kInvalidMoveFile;

  SimConfig config;
  config.dt = o.dt;
  config.ascii_every = o.ascii;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  FrameCollector collector(config.budget_ms());
  const ReplayResult result = run_replay(*rows, config, &collector);
  const std::string trace = format_trace(result.trace);
  // With the trace on stdout the summary moves to stderr.
  std::ostream& summary = o.trace == "-" ? err : out;
  if (o.trace == "-")
    out << trace;
  else
    write_text(o.trace, trace);

  const FrameStats stats = collector.stats();
  const BudgetVerdict verdict = budget_check(stats);
  summary << fmt::format("final_score={} final_state={}\n", result.final_score,
                         to_string(result.final_state))
          << verdict.report;
  if (!o.metrics.empty()) write_text(o.metrics, verdict.report);
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Peg solitaire solution-tree generator and headless replay twin", "pegtwin");
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  SolveOptions solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Generate the solution tree into a store");
  solve_cmd->add_option("--store", solve.store, "Store directory")->required();
  solve_cmd->add_option("--cap", solve.cap, "Per-level child cap, or 'unlimited'")
      ->capture_default_str();
  solve_cmd->add_option("--symmetry", solve.symmetry, "Symmetric-hole filter")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  solve_cmd->add_option("--dedup", solve.dedup, "Duplicate elimination within a level")
      ->check(CLI::IsMember({"none", "exact", "symmetry"}))
      ->capture_default_str();
  solve_cmd->add_option("--max-level", solve.max_level, "Deepest level to generate")
      ->check(CLI::Range(1, 32))
      ->capture_default_str();
  solve_cmd->add_option("--threads", solve.threads, "Expansion threads; 0 uses every core")
      ->capture_default_str();
  solve_cmd->add_option("--board", solve.board, "Hole layout")
      ->check(CLI::IsMember({"english", "square3", "rect3x5", "square4"}))
      ->capture_default_str();

  std::string report_store;
  CLI::App* report_cmd = app.add_subcommand("report", "Print the census of a store");
  report_cmd->add_option("--store", report_store, "Store directory")->required();

  ExportOptions exp;
  CLI::App* export_cmd = app.add_subcommand("export", "Write the first solution with a score");
  export_cmd->add_option("--store", exp.store, "Store directory")->required();
  export_cmd->add_option("--score", exp.score, "Remaining peg count")
      ->required()
      ->check(CLI::Range(1, 32));
  export_cmd->add_option("--out", exp.out, "CSV path; stdout when omitted");
  export_cmd->add_option("--game-id", exp.game_id, "game_id column value")
      ->capture_default_str();

  std::string verify_csv;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a move file from the initial board");
  verify_cmd->add_option("csv", verify_csv, "Move file")->required();

  ReplayOptions replay;
  CLI::App* replay_cmd = app.add_subcommand("replay", "Replay a move file headlessly");
  replay_cmd->add_option("csv", replay.csv, "Move file")->required();
  replay_cmd->add_option("--trace", replay.trace, "Trace path; '-' for stdout")
      ->capture_default_str();
  replay_cmd->add_option("--dt", replay.dt, "Seconds per frame")->capture_default_str();
  replay_cmd->add_option("--ascii", replay.ascii, "Render the board every N frames; 0 disables")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  replay_cmd->add_option("--metrics", replay.metrics, "Write the frame-budget record here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out);
    if (*report_cmd) return cmd_report(report_store, out);
    if (*export_cmd) return cmd_export(exp, out, err);
    if (*verify_cmd) return cmd_verify(verify_csv, out, err);
    if (*replay_cmd) return cmd_replay(replay, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const StoreError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace pegtwin::cli
