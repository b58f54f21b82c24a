#include <filesystem>
#include <random>

#include <benchmark/benchmark.h>

#include "pegtwin/board.hpp"
#include "pegtwin/movefile.hpp"
#include "pegtwin/simulator.hpp"
#include "pegtwin/solver.hpp"
#include "pegtwin/treestore.hpp"

namespace {

using namespace pegtwin;

std::vector<Board> sample_boards(std::size_t n) {
  std::mt19937_64 rng(7);
  std::vector<Board> out;
  while (out.size() < n) {
    Board b = initial_board();
    const int steps = static_cast<int>(rng() % 20);
    for (int i = 0; i < steps; ++i) {
      const auto moves = legal_moves(b);
      if (moves.empty()) break;
      b = apply_move(b, moves[rng() % moves.size()]);
    }
    out.push_back(b);
  }
  return out;
}

// Greedy first-move game until the board is stuck.
std::vector<MoveRow> first_move_game() {
  std::vector<Move> moves;
  Board b = initial_board();
  for (auto legal = legal_moves(b); !legal.empty(); legal = legal_moves(b)) {
    moves.push_back(legal.front());
    b = apply_move(b, legal.front());
  }
  std::vector<MoveRow> rows;
  for (const Move& m : moves) rows.push_back(MoveRow::from_move(1, b.peg_count(), m));
  return rows;
}

void BM_LegalMoves(benchmark::State& state) {
  const auto boards = sample_boards(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(legal_moves(boards[i++ & 1023]));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LegalMoves);

void BM_ApplyMove(benchmark::State& state) {
  const Board b = initial_board();
  const Move m = legal_moves(b).front();
  for (auto _ : state) benchmark::DoNotOptimize(apply_move(b, m));
}
BENCHMARK(BM_ApplyMove);

void BM_Canonical(benchmark::State& state) {
  const auto boards = sample_boards(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(canonical(boards[i++ & 1023]));
}
BENCHMARK(BM_Canonical);

void BM_ExpandBoard(benchmark::State& state) {
  const auto boards = sample_boards(1024);
  ChildBatches out;
  std::size_t i = 0;
  for (auto _ : state) {
    expand_board_into(boards[i++ & 1023], kEnglishMask, true, out);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ExpandBoard);

void BM_SmallBfs(benchmark::State& state) {
  const auto dir = std::filesystem::temp_directory_path() / "pegtwin-bench-bfs";
  SolverConfig config;
  config.max_level = static_cast<int>(state.range(0));
  std::uint64_t nodes = 0;
  for (auto _ : state) {
    std::filesystem::remove_all(dir);
    TreeStore store = TreeStore::create(dir, make_store_header(config));
    nodes = run_bfs(config, store).total_nodes;
  }
  std::filesystem::remove_all(dir);
  state.counters["nodes"] = static_cast<double>(nodes);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(nodes));
}
BENCHMARK(BM_SmallBfs)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ProcessFrame(benchmark::State& state) {
  const auto rows = first_move_game();
  const SimConfig config;
  SceneState scene = make_scene(rows, config);
  for (auto _ : state) {
    if (scene.phase == Phase::kDone) {
      state.PauseTiming();
      scene = make_scene(rows, config);
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(process_frame(scene, config));
  }
}
BENCHMARK(BM_ProcessFrame);

void BM_ParseMoveFile(benchmark::State& state) {
  const std::string text = serialize_move_file(first_move_game());
  for (auto _ : state) benchmark::DoNotOptimize(parse_move_file(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseMoveFile);

}  // namespace

BENCHMARK_MAIN();
