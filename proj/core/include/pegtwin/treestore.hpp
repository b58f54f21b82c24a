#pragma once

// Append-only, level-indexed persistence for the BFS solution tree.
//
// Layout under the store directory:
//   tree/header.bin     fixed 168-byte header (see kHeaderSize)
//   tree/level_{k}.bin  one 17-byte record per node of level k, in ordinal
//                       order: level u8, ordinal u32, parent u32, board u64,
//                       all little-endian.
//
// Levels are written strictly in order. The level being filled lives in
// memory until it is sealed; sealing writes its segment file and rewrites the
// header, so a crashed run leaves a header whose `sealed_levels` marks the
// last complete level and whose `complete` flag is unset.

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "pegtwin/board.hpp"

namespace pegtwin {

inline constexpr int kMaxLevel = 33;

struct TreeRecord {
  int level = 0;
  std::uint32_t ordinal = 0;         // 1-based within level
  std::uint32_t parent_ordinal = 0;  // ordinal at level - 1, 0 for the root
  Board board;

  friend bool operator==(const TreeRecord&, const TreeRecord&) = default;
};

struct StoreHeader {
  static constexpr std::uint32_t kVersion = 1;

  HoleMask hole_mask = kEnglishMask;
  std::uint64_t level_child_cap = 0;
  bool symmetry_filter = false;
  int max_level = 0;
  int sealed_levels = 0;
  bool complete = false;
  // Duplicate suppression used by the solver: 0 none, 1 exact, 2 symmetry.
  std::uint8_t dedup = 0;
  // Index 0 unused; counts of sealed levels.
  std::array<std::uint32_t, kMaxLevel + 1> level_counts{};

  friend bool operator==(const StoreHeader&, const StoreHeader&) = default;
};

inline constexpr std::size_t kRecordSize = 17;
inline constexpr std::size_t kHeaderSize = 8 + 4 + 8 + 8 + 8 + 4 * kMaxLevel;

class TreeStore {
 public:
  // Creates `dir/tree`; fails if it already holds a header.
  static TreeStore create(const std::filesystem::path& dir, StoreHeader header);
  // Opens an existing store read-only.
  static TreeStore open(const std::filesystem::path& dir);

  TreeStore(TreeStore&&) noexcept = default;
  TreeStore& operator=(TreeStore&&) noexcept = default;
  ~TreeStore();

  // `record.ordinal` may be 0 (assign next) or must equal the next ordinal.
  // Appending to the level after the open one seals the open level first.
  std::uint32_t append(const TreeRecord& record);
  // Appends siblings sharing one parent; returns the first ordinal assigned.
  std::uint32_t append_children(int level, std::uint32_t parent_ordinal,
                                std::span<const Board> boards);

  TreeRecord read(int level, std::uint32_t ordinal) const;
  std::vector<TreeRecord> read_level(int level) const;

  std::uint32_t level_child_count(int level) const;
  // Deepest level holding at least one record.
  int depth() const;

  void seal_level(int level);
  // Seals the open level and flags the store complete.
  void finish();

  const StoreHeader& header() const { return header_; }
  const std::filesystem::path& tree_dir() const { return tree_dir_; }
  bool writable() const { return writable_; }

 private:
  TreeStore(std::filesystem::path tree_dir, StoreHeader header, bool writable);

  std::filesystem::path level_path(int level) const;
  void write_header() const;
  int open_level() const { return header_.sealed_levels + 1; }

  std::filesystem::path tree_dir_;
  StoreHeader header_;
  bool writable_ = false;
  std::vector<TreeRecord> buffer_;  // records of the open level
};

std::vector<std::uint8_t> encode_record(const TreeRecord& r);
TreeRecord decode_record(std::span<const std::uint8_t, kRecordSize> bytes);

std::vector<std::uint8_t> encode_header(const StoreHeader& h);
StoreHeader decode_header(std::span<const std::uint8_t> bytes);

// Moves from the root to (level, ordinal), each recovered by diffing the
// boards of consecutive ancestors.
std::vector<Move> reconstruct_path(const TreeStore& store, int level,
                                   std::uint32_t ordinal);

// The unique jump turning `before` into `after`; throws CorruptionError.
Move diff_move(Board before, Board after);

}  // namespace pegtwin
