#include "pegtwin/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "pegtwin/error.hpp"
#include "pegtwin/metrics.hpp"

namespace pegtwin {
namespace {

// Parents handed to each worker per wave in threaded runs.
constexpr std::size_t kChunkSize = 4096;

void count_leaves(const std::vector<Board>& boards, int level, HoleMask mask, Census& census) {
  for (Board b : boards) {
    if (!has_legal_move(b, mask)) {
      ++census.leaves[{b.peg_count(), level}];
      ++census.total_solutions;
    }
  }
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

const char* to_string(Dedup dedup) {
  switch (dedup) {
    case Dedup::kNone: return "none";
    case Dedup::kExact: return "exact";
    case Dedup::kSymmetry: return "symmetry";
  }
  return "unknown";
}

Dedup parse_dedup(std::string_view text) {
  if (text == "none") return Dedup::kNone;
  if (text == "exact") return Dedup::kExact;
  if (text == "symmetry") return Dedup::kSymmetry;
  throw std::invalid_argument("unknown dedup mode '" + std::string(text) + "'");
}

void SolverConfig::validate() const {
  if (level_child_cap < 1) throw std::invalid_argument("level_child_cap must be >= 1");
  if (level_child_cap > kUnlimited)
    throw std::invalid_argument("level_child_cap exceeds the 32-bit ordinal range");
  if (max_level < 1 || max_level > 32)
    throw std::invalid_argument("max_level must be in [1, 32]");
  if (reduced_hole_mask && !reduced_hole_mask->contains(kCenterHole))
    throw std::invalid_argument("hole mask must contain the centre hole");
}

std::uint64_t Census::solutions_with_score(int score) const {
  std::uint64_t n = 0;
  for (const auto& [key, count] : leaves)
    if (key.first == score) n += count;
  return n;
}

std::vector<int> Census::achievable_scores() const {
  std::vector<int> scores;
  for (const auto& [key, count] : leaves)
    if (count > 0 && (scores.empty() || scores.back() != key.first)) scores.push_back(key.first);
  return scores;
}

bool check_symmetric_index(int hole, bool symmetric_cols, bool symmetric_rows) {
  return (symmetric_cols && col_of(hole) > 3) || (symmetric_rows && row_of(hole) > 3);
}

void expand_board_into(Board parent, HoleMask mask, bool symmetry_filter, ChildBatches& out) {
  out.boards.clear();
  out.batch_ends.clear();
  const bool sym_cols = symmetry_filter && is_symmetric_cols(parent);
  const bool sym_rows = symmetry_filter && is_symmetric_rows(parent);
  int current_hole = -1;
  for_each_legal_move(parent, mask, [&](const Move& m) {
    if (check_symmetric_index(m.to, sym_cols, sym_rows)) return;
    if (m.to != current_hole && current_hole != -1)
      out.batch_ends.push_back(static_cast<std::uint32_t>(out.boards.size()));
    current_hole = m.to;
    const std::uint64_t bits = (parent.bits() & ~(std::uint64_t{1} << m.from) &
                                ~(std::uint64_t{1} << m.over)) |
                               (std::uint64_t{1} << m.to);
    out.boards.emplace_back(bits);
  });
  if (current_hole != -1) out.batch_ends.push_back(static_cast<std::uint32_t>(out.boards.size()));
}

ChildBatches expand_board(Board parent, HoleMask mask, bool symmetry_filter) {
  ChildBatches out;
  expand_board_into(parent, mask, symmetry_filter, out);
  return out;
}

LevelExpander::LevelExpander(const SolverConfig& config, TreeStore& store, int child_level)
    : config_(config), store_(store), child_level_(child_level), mask_(config.hole_mask()) {
  if (config_.dedup != Dedup::kNone) {
    for (const TreeRecord& r : store_.read_level(child_level_)) admit(r.board);
  }
}

bool LevelExpander::admit(Board child) {
  switch (config_.dedup) {
    case Dedup::kNone: return true;
    case Dedup::kExact: return seen_.insert(child.bits()).second;
    case Dedup::kSymmetry: return seen_.insert(canonical(child, mask_).bits()).second;
  }
  return true;
}

std::uint32_t LevelExpander::commit(const ChildBatches& batches, std::uint32_t parent_ordinal,
                                    std::vector<Board>* inserted) {
  std::uint32_t count = 0;
  std::uint32_t begin = 0;
  for (std::uint32_t end : batches.batch_ends) {
    if (store_.level_child_count(child_level_) >= config_.level_child_cap) {
      capped_ = true;
      break;
    }
    accepted_.clear();
    for (std::uint32_t i = begin; i < end; ++i)
      if (admit(batches.boards[i])) accepted_.push_back(batches.boards[i]);
    store_.append_children(child_level_, parent_ordinal, accepted_);
    if (inserted) inserted->insert(inserted->end(), accepted_.begin(), accepted_.end());
    count += static_cast<std::uint32_t>(accepted_.size());
    begin = end;
  }
  return count;
}

std::uint32_t LevelExpander::generate_children(const TreeRecord& parent) {
  if (parent.level != child_level_ - 1 || parent.level >= config_.max_level) return 0;
  return commit(expand_board(parent.board, mask_, config_.symmetry_filter), parent.ordinal);
}

std::uint32_t generate_children(const TreeRecord& parent, const SolverConfig& config,
                                TreeStore& store) {
  return LevelExpander(config, store, parent.level + 1).generate_children(parent);
}

int score_of(const TreeRecord& record) { return record.board.peg_count(); }

StoreHeader make_store_header(const SolverConfig& config) {
  StoreHeader h;
  h.hole_mask = config.hole_mask();
  h.level_child_cap = config.level_child_cap;
  h.symmetry_filter = config.symmetry_filter;
  h.max_level = config.max_level;
  h.dedup = static_cast<std::uint8_t>(config.dedup);
  return h;
}

Census run_bfs(const SolverConfig& config, TreeStore& store) {
  SolverStats stats;
  return run_bfs(config, store, stats);
}

Census run_bfs(const SolverConfig& config, TreeStore& store, SolverStats& stats) {
  config.validate();
  if (!store.writable() || store.depth() != 0)
    throw StoreError("solver needs an empty writable store");
  const StoreHeader expected = make_store_header(config);
  const StoreHeader& actual = store.header();
  if (actual.hole_mask != expected.hole_mask ||
      actual.level_child_cap != expected.level_child_cap ||
      actual.symmetry_filter != expected.symmetry_filter || actual.dedup != expected.dedup)
    throw StoreError("store header does not match the solver configuration");

  const Stopwatch clock;
  const HoleMask mask = config.hole_mask();
  const unsigned threads = resolve_threads(config.threads);
  stats = SolverStats{};
  stats.level_counts.assign(kMaxLevel + 1, 0);

  Census census;
  census.level_nodes.assign(kMaxLevel + 1, 0);

  const Board root = initial_board(mask);
  store.append({1, 1, 0, root});
  std::vector<Board> frontier{root};
  std::vector<Board> next;
  std::vector<ChildBatches> scratch(threads > 1 ? threads * kChunkSize : 1);

  for (int level = 1; !frontier.empty(); ++level) {
    store.seal_level(level);
    census.level_nodes[level] = frontier.size();
    census.total_nodes += frontier.size();
    stats.level_counts[level] = frontier.size();
    stats.peak_level_size = std::max<std::uint64_t>(stats.peak_level_size, frontier.size());
    count_leaves(frontier, level, mask, census);
    if (level >= config.max_level) break;

    const int child_level = level + 1;
    next.clear();
    LevelExpander expander(config, store, child_level);
    if (threads <= 1) {
      for (std::size_t i = 0; i < frontier.size() && !expander.capped(); ++i) {
        expand_board_into(frontier[i], mask, config.symmetry_filter, scratch[0]);
        expander.commit(scratch[0], static_cast<std::uint32_t>(i + 1), &next);
      }
    } else {
      // Workers expand a wave of parents; children are committed in parent
      // order so the store is identical to a single-threaded run.
      for (std::size_t wave = 0; wave < frontier.size() && !expander.capped();
           wave += scratch.size()) {
        const std::size_t wave_end = std::min(frontier.size(), wave + scratch.size());
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
          workers.emplace_back([&, t] {
            for (std::size_t i = wave + t; i < wave_end; i += threads)
              expand_board_into(frontier[i], mask, config.symmetry_filter, scratch[i - wave]);
          });
        }
        workers.clear();
        for (std::size_t i = wave; i < wave_end && !expander.capped(); ++i)
          expander.commit(scratch[i - wave], static_cast<std::uint32_t>(i + 1), &next);
      }
    }
    if (expander.capped()) stats.capped_levels.push_back(child_level);
    frontier.swap(next);
  }

  store.finish();
  stats.nodes_generated = census.total_nodes;
  stats.elapsed_seconds = clock.elapsed_ms() / 1000.0;
  stats.complete = true;
  return census;
}

Census census_report(const TreeStore& store) {
  Census census;
  census.level_nodes.assign(kMaxLevel + 1, 0);
  const HoleMask mask = store.header().hole_mask;
  std::vector<Board> boards;
  for (int level = 1; level <= store.depth(); ++level) {
    const std::vector<TreeRecord> records = store.read_level(level);
    boards.clear();
    boards.reserve(records.size());
    for (const TreeRecord& r : records) boards.push_back(r.board);
    census.level_nodes[level] = boards.size();
    census.total_nodes += boards.size();
    count_leaves(boards, level, mask, census);
  }
  return census;
}

std::string format_census(const Census& census) {
  std::string out = "Score | Level | Total Number of Solutions\n";
  out += "------+-------+--------------------------\n";
  for (const auto& [key, count] : census.leaves)
    out += fmt::format("{:>5} | {:>5} | {:>25}\n", key.first, key.second, count);
  out += fmt::format("TOTAL |       | {:>25}\n", census.total_solutions);
  out += fmt::format("Total nodes generated: {}\n", census.total_nodes);
  return out;
}

}  // namespace pegtwin
