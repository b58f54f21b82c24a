#include "pegtwin/treestore.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <string>
#include <system_error>
#include <utility>

#include "pegtwin/error.hpp"

namespace pegtwin {
namespace fs = std::filesystem;

namespace {

constexpr std::array<char, 8> kMagic = {'P', 'E', 'G', 'T', 'R', 'E', 'E', '\0'};

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t at, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[at + i]} << (8 * i);
  return v;
}

void write_file_atomically(const fs::path& path, std::span<const std::uint8_t> bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw StoreError("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw StoreError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

bool level_in_range(int level) { return level >= 1 && level <= kMaxLevel; }

}  // namespace

std::vector<std::uint8_t> encode_record(const TreeRecord& r) {
  std::vector<std::uint8_t> out;
  out.reserve(kRecordSize);
  put_le(out, static_cast<std::uint64_t>(r.level), 1);
  put_le(out, r.ordinal, 4);
  put_le(out, r.parent_ordinal, 4);
  put_le(out, r.board.bits(), 8);
  return out;
}

TreeRecord decode_record(std::span<const std::uint8_t, kRecordSize> bytes) {
  TreeRecord r;
  r.level = static_cast<int>(bytes[0]);
  r.ordinal = static_cast<std::uint32_t>(get_le(bytes, 1, 4));
  r.parent_ordinal = static_cast<std::uint32_t>(get_le(bytes, 5, 4));
  r.board = Board(get_le(bytes, 9, 8));
  return r;
}

std::vector<std::uint8_t> encode_header(const StoreHeader& h) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.reserve(kHeaderSize);
  put_le(out, StoreHeader::kVersion, 4);
  put_le(out, h.hole_mask.bits(), 8);
  put_le(out, h.level_child_cap, 8);
  put_le(out, h.symmetry_filter ? 1 : 0, 1);
  put_le(out, static_cast<std::uint64_t>(h.max_level), 1);
  put_le(out, static_cast<std::uint64_t>(h.sealed_levels), 1);
  put_le(out, h.complete ? 1 : 0, 1);
  put_le(out, h.dedup, 1);
  put_le(out, 0, 3);
  for (int level = 1; level <= kMaxLevel; ++level) put_le(out, h.level_counts[level], 4);
  return out;
}

StoreHeader decode_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kHeaderSize)
    throw CorruptionError("header is " + std::to_string(bytes.size()) +
                          " bytes, expected " + std::to_string(kHeaderSize));
  if (!std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
    throw CorruptionError("bad header magic");
  const auto version = get_le(bytes, 8, 4);
  if (version != StoreHeader::kVersion)
    throw CorruptionError("unsupported store version " + std::to_string(version));
  StoreHeader h;
  h.hole_mask = HoleMask(get_le(bytes, 12, 8));
  h.level_child_cap = get_le(bytes, 20, 8);
  h.symmetry_filter = bytes[28] != 0;
  h.max_level = bytes[29];
  h.sealed_levels = bytes[30];
  h.complete = bytes[31] != 0;
  h.dedup = bytes[32];
  if (h.dedup > 2) throw CorruptionError("unknown dedup mode " + std::to_string(h.dedup));
  if (h.sealed_levels > kMaxLevel) throw CorruptionError("sealed level count out of range");
  for (int level = 1; level <= kMaxLevel; ++level)
    h.level_counts[level] = static_cast<std::uint32_t>(get_le(bytes, 36 + 4 * (level - 1), 4));
  return h;
}

TreeStore::TreeStore(fs::path tree_dir, StoreHeader header, bool writable)
    : tree_dir_(std::move(tree_dir)), header_(header), writable_(writable) {}

TreeStore::~TreeStore() = default;

TreeStore TreeStore::create(const fs::path& dir, StoreHeader header) {
  const fs::path tree_dir = dir / "tree";
  std::error_code ec;
  fs::create_directories(tree_dir, ec);
  if (ec) throw StoreError("cannot create " + tree_dir.string() + ": " + ec.message());
  if (fs::exists(tree_dir / "header.bin"))
    throw StoreError("store already exists at " + tree_dir.string());
  header.sealed_levels = 0;
  header.complete = false;
  header.level_counts.fill(0);
  TreeStore store(tree_dir, header, true);
  store.write_header();
  return store;
}

TreeStore TreeStore::open(const fs::path& dir) {
  const fs::path tree_dir = dir / "tree";
  const fs::path header_path = tree_dir / "header.bin";
  if (!fs::exists(header_path)) throw StoreError("no store at " + tree_dir.string());
  const StoreHeader header = decode_header(read_file(header_path));
  TreeStore store(tree_dir, header, false);
  for (int level = 1; level <= header.sealed_levels; ++level) {
    std::error_code ec;
    const auto size = fs::file_size(store.level_path(level), ec);
    if (ec) throw CorruptionError("missing segment for level " + std::to_string(level));
    if (size != std::uint64_t{header.level_counts[level]} * kRecordSize)
      throw CorruptionError("segment size mismatch at level " + std::to_string(level));
  }
  return store;
}

fs::path TreeStore::level_path(int level) const {
  return tree_dir_ / ("level_" + std::to_string(level) + ".bin");
}

void TreeStore::write_header() const {
  write_file_atomically(tree_dir_ / "header.bin", encode_header(header_));
}

std::uint32_t TreeStore::append(const TreeRecord& record) {
  if (!writable_) throw StoreError("store is read-only");
  if (!level_in_range(record.level))
    throw StoreError("level " + std::to_string(record.level) + " out of range");
  if (record.level == open_level() + 1 && !buffer_.empty()) seal_level(open_level());
  if (record.level != open_level())
    throw StoreError("level " + std::to_string(record.level) +
                     " appended out of order; open level is " +
                     std::to_string(open_level()));

  if (record.level == 1) {
    if (record.parent_ordinal != 0) throw StoreError("root must have parent 0");
    if (!buffer_.empty()) throw StoreError("duplicate root record");
  } else if (record.parent_ordinal == 0 ||
             record.parent_ordinal > header_.level_counts[record.level - 1]) {
    throw StoreError("missing parent " + std::to_string(record.parent_ordinal) +
                     " at level " + std::to_string(record.level - 1));
  }

  const auto next = static_cast<std::uint32_t>(buffer_.size() + 1);
  if (record.ordinal != 0 && record.ordinal != next) {
    if (record.ordinal < next)
      throw StoreError("duplicate record (" + std::to_string(record.level) + ", " +
                       std::to_string(record.ordinal) + ")");
    throw StoreError("ordinal " + std::to_string(record.ordinal) +
                     " leaves a gap; next is " + std::to_string(next));
  }
  TreeRecord stored = record;
  stored.ordinal = next;
  buffer_.push_back(stored);
  return next;
}

std::uint32_t TreeStore::append_children(int level, std::uint32_t parent_ordinal,
                                         std::span<const Board> boards) {
  if (boards.empty()) return 0;
  const std::uint32_t first = append({level, 0, parent_ordinal, boards.front()});
  for (Board b : boards.subspan(1)) buffer_.push_back({level, static_cast<std::uint32_t>(buffer_.size() + 1), parent_ordinal, b});
  return first;
}

TreeRecord TreeStore::read(int level, std::uint32_t ordinal) const {
  auto not_found = [&] {
    return NotFoundError("no record (" + std::to_string(level) + ", " +
                         std::to_string(ordinal) + ")");
  };
  if (!level_in_range(level) || ordinal == 0) throw not_found();
  if (level <= header_.sealed_levels) {
    if (ordinal > header_.level_counts[level]) throw not_found();
    std::ifstream in(level_path(level), std::ios::binary);
    if (!in) throw StoreError("cannot open " + level_path(level).string());
    in.seekg(static_cast<std::streamoff>((ordinal - 1) * kRecordSize));
    std::array<std::uint8_t, kRecordSize> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), kRecordSize);
    if (!in) throw CorruptionError("short read at level " + std::to_string(level));
    const TreeRecord r = decode_record(bytes);
    if (r.level != level || r.ordinal != ordinal)
      throw CorruptionError("record key mismatch at (" + std::to_string(level) + ", " +
                            std::to_string(ordinal) + ")");
    return r;
  }
  if (writable_ && level == open_level() && ordinal <= buffer_.size())
    return buffer_[ordinal - 1];
  throw not_found();
}

std::vector<TreeRecord> TreeStore::read_level(int level) const {
  if (!level_in_range(level)) return {};
  if (writable_ && level == open_level()) return buffer_;
  if (level > header_.sealed_levels) return {};
  const std::vector<std::uint8_t> bytes = read_file(level_path(level));
  const std::size_t count = header_.level_counts[level];
  if (bytes.size() != count * kRecordSize)
    throw CorruptionError("segment size mismatch at level " + std::to_string(level));
  std::vector<TreeRecord> records;
  records.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    records.push_back(decode_record(
        std::span<const std::uint8_t, kRecordSize>(bytes.data() + i * kRecordSize, kRecordSize)));
  }
  return records;
}

std::uint32_t TreeStore::level_child_count(int level) const {
  if (!level_in_range(level)) return 0;
  if (level <= header_.sealed_levels) return header_.level_counts[level];
  if (writable_ && level == open_level()) return static_cast<std::uint32_t>(buffer_.size());
  return 0;
}

int TreeStore::depth() const {
  for (int level = kMaxLevel; level >= 1; --level)
    if (level_child_count(level) > 0) return level;
  return 0;
}

void TreeStore::seal_level(int level) {
  if (!writable_) throw StoreError("store is read-only");
  if (level != open_level())
    throw StoreError("cannot seal level " + std::to_string(level) + "; open level is " +
                     std::to_string(open_level()));
  std::vector<std::uint8_t> bytes;
  bytes.reserve(buffer_.size() * kRecordSize);
  for (const TreeRecord& r : buffer_) {
    const auto enc = encode_record(r);
    bytes.insert(bytes.end(), enc.begin(), enc.end());
  }
  write_file_atomically(level_path(level), bytes);
  header_.level_counts[level] = static_cast<std::uint32_t>(buffer_.size());
  header_.sealed_levels = level;
  write_header();
  buffer_.clear();
  buffer_.shrink_to_fit();
}

void TreeStore::finish() {
  if (!writable_) throw StoreError("store is read-only");
  if (!buffer_.empty()) seal_level(open_level());
  header_.complete = true;
  write_header();
}

Move diff_move(Board before, Board after) {
  const std::uint64_t cleared = before.bits() & ~after.bits();
  const std::uint64_t set = after.bits() & ~before.bits();
  if (std::popcount(cleared) != 2 || std::popcount(set) != 1)
    throw CorruptionError("consecutive boards do not differ by one jump");
  const int to = std::countr_zero(set);
  const int a = std::countr_zero(cleared);
  const int b = 63 - std::countl_zero(cleared);
  for (const Move m : {Move{a, b, to}, Move{b, a, to}})
    if (is_jump_geometry(m)) return m;
  throw CorruptionError("consecutive boards differ by a non-jump");
}

std::vector<Move> reconstruct_path(const TreeStore& store, int level,
                                   std::uint32_t ordinal) {
  TreeRecord node = store.read(level, ordinal);
  std::vector<Board> boards{node.board};
  while (node.level > 1) {
    try {
      node = store.read(node.level - 1, node.parent_ordinal);
    } catch (const NotFoundError&) {
      throw CorruptionError("broken parent chain at level " + std::to_string(node.level));
    }
    boards.push_back(node.board);
  }
  std::reverse(boards.begin(), boards.end());
  std::vector<Move> moves;
  moves.reserve(boards.size() - 1);
  const HoleMask mask = store.header().hole_mask;
  for (std::size_t i = 1; i < boards.size(); ++i) {
    const Move m = diff_move(boards[i - 1], boards[i]);
    if (!mask.contains(m.from) || !mask.contains(m.over) || !mask.contains(m.to))
      throw CorruptionError("path move " + to_string(m) + " leaves the hole mask");
    moves.push_back(m);
  }
  return moves;
}

}  // namespace pegtwin
