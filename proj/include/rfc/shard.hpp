#ifndef RFC_SHARD_HPP
#define RFC_SHARD_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rfc/code.hpp"

namespace rfc::shard {

inline constexpr std::array<std::uint8_t, 4> kMagic = {'R', 'F', 'C', '1'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 55;  // including magic and crc

/// Self-describing shard header. All multi-byte integers little-endian.
/// Layout: magic(4) version(1) field_m(1) reduction_poly(4) k(4) c_num(4)
/// c_den(4) log_base(1) master_seed(8) column_index(8) symbol_size(4)
/// original_file_len(8) header_crc32(4).
struct ShardHeader {
  std::uint8_t version = kVersion;
  std::uint8_t field_m = 8;
  std::uint32_t reduction_poly = 0x11D;
  std::uint32_t k = 0;
  std::uint32_t c_num = 0;
  std::uint32_t c_den = 1;
  std::uint8_t log_base = 0;  // 0 = natural, 1 = base2
  std::uint64_t master_seed = 0;
  std::uint64_t column_index = 0;
  std::uint32_t symbol_size = 0;
  std::uint64_t original_file_len = 0;

  friend bool operator==(const ShardHeader&, const ShardHeader&) = default;

  static ShardHeader from_config(const code::CodeConfig& cfg, code::ColumnId id,
                                 std::uint32_t symbol_size,
                                 std::uint64_t original_file_len);

  /// Rebuilds the code description (throws ConfigInvalid on bad fields).
  code::CodeConfig to_config() const;

  /// True when two shards belong to the same encoding (everything but the
  /// column index matches).
  bool same_stream(const ShardHeader& o) const;
};

/// CRC-32 (IEEE, reflected 0xEDB88320).
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize(const ShardHeader& h);

/// Validates magic, version, header crc and field invariants.
/// Throws HeaderMismatch (not a shard / unknown version), CorruptShard
/// (crc failure), ConfigInvalid (bad field values).
ShardHeader parse(std::span<const std::uint8_t> bytes);

/// Shard file = header || payload || payload_crc32(LE).
void write_shard(const std::filesystem::path& path, const ShardHeader& h,
                 std::span<const std::uint8_t> payload);

/// Reads and fully validates one shard file (both crcs).
std::pair<ShardHeader, std::vector<std::uint8_t>> read_shard(
    const std::filesystem::path& path);

struct ManifestEntry {
  std::string name;
  std::uint64_t index = 0;
  std::uint64_t length = 0;
  std::uint32_t payload_crc = 0;
};

/// `name,index,len,crc32hex`
std::string manifest_line(const ManifestEntry& e);
ManifestEntry parse_manifest_line(const std::string& line);

std::string shard_filename(std::uint64_t index);

}  // namespace rfc::shard

#endif
