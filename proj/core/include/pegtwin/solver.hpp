#pragma once

// Level-synchronous breadth-first generation of the peg solitaire game tree
// with a per-level child cap and a symmetric-hole skip filter.
//
// Expansion order is fixed: parents by ordinal, then destination holes in
// ascending index, then directions Up, Down, Right, Left. The cap is checked
// before each destination hole's batch of children; once a level holds
// `level_child_cap` nodes no further batches are added to it.
//
// By default a child whose board already exists on its level is dropped, so
// every level holds distinct positions; Dedup::kSymmetry drops whole symmetry
// classes instead. With Dedup::kNone transpositions are kept and the tree
// enumerates move sequences.

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pegtwin/board.hpp"
#include "pegtwin/treestore.hpp"

namespace pegtwin {

struct SolverStats;

enum class Dedup {
  kNone,      // keep every child
  kExact,     // drop boards already on the level
  kSymmetry,  // drop boards whose canonical form is already on the level
};

const char* to_string(Dedup dedup);
// Accepts "none", "exact", "symmetry"; throws std::invalid_argument.
Dedup parse_dedup(std::string_view text);

struct SolverConfig {
  static constexpr std::uint64_t kDefaultCap = 3'000'000;
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint32_t>::max();

  std::uint64_t level_child_cap = kDefaultCap;
  int max_level = 32;
  bool symmetry_filter = true;
  Dedup dedup = Dedup::kExact;
  std::optional<HoleMask> reduced_hole_mask;
  // 0 = hardware concurrency. Output is independent of this value.
  unsigned threads = 1;

  HoleMask hole_mask() const { return reduced_hole_mask.value_or(kEnglishMask); }
  // Throws std::invalid_argument.
  void validate() const;
};

struct Census {
  // (score, level) -> number of leaves
  std::map<std::pair<int, int>, std::uint64_t> leaves;
  // Index = level; index 0 unused.
  std::vector<std::uint64_t> level_nodes;
  std::uint64_t total_nodes = 0;
  std::uint64_t total_solutions = 0;

  std::uint64_t solutions_with_score(int score) const;
  std::vector<int> achievable_scores() const;

  friend bool operator==(const Census&, const Census&) = default;
};

// True when destination hole `hole` lies outside the canonical half of a
// board symmetric about the given axes and must not be expanded.
bool check_symmetric_index(int hole, bool symmetric_cols, bool symmetric_rows);

// Children of one board grouped by destination hole, in expansion order.
struct ChildBatches {
  std::vector<Board> boards;
  // batches[i] = end offset into `boards` of the i-th non-empty hole batch
  std::vector<std::uint32_t> batch_ends;
};

ChildBatches expand_board(Board parent, HoleMask mask, bool symmetry_filter);
// Reuses the storage of `out`.
void expand_board_into(Board parent, HoleMask mask, bool symmetry_filter, ChildBatches& out);

// Inserts children into one level of a store, applying the cap and the
// duplicate filter. Boards already stored on the level are loaded on
// construction so duplicates are recognised across calls.
class LevelExpander {
 public:
  LevelExpander(const SolverConfig& config, TreeStore& store, int child_level);

  // Children of `parent` (which must sit on child_level - 1).
  std::uint32_t generate_children(const TreeRecord& parent);
  // Same, from batches already produced by expand_board().
  std::uint32_t commit(const ChildBatches& batches, std::uint32_t parent_ordinal,
                       std::vector<Board>* inserted = nullptr);

  // True once a batch has been refused because the level was full.
  bool capped() const { return capped_; }

 private:
  bool admit(Board child);

  const SolverConfig& config_;
  TreeStore& store_;
  int child_level_;
  HoleMask mask_;
  bool capped_ = false;
  std::unordered_set<std::uint64_t> seen_;
  std::vector<Board> accepted_;
};

// Expands `parent` into level parent.level + 1 of `store` honouring the cap.
// Returns the number of children inserted.
std::uint32_t generate_children(const TreeRecord& parent, const SolverConfig& config,
                                TreeStore& store);

// Peg count of the stored board.
int score_of(const TreeRecord& record);

// Header describing a store built with `config`.
StoreHeader make_store_header(const SolverConfig& config);

// Runs the search into an empty writable store and finishes it. The store
// header must match make_store_header(config) in mask, cap, filter and dedup.
Census run_bfs(const SolverConfig& config, TreeStore& store);
Census run_bfs(const SolverConfig& config, TreeStore& store, SolverStats& stats);

// Recomputes the census from a finished or partial store.
Census census_report(const TreeStore& store);

// Score | Level | Total Number of Solutions table with a TOTAL row.
std::string format_census(const Census& census);

}  // namespace pegtwin
