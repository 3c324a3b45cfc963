#include "rfc/shard.hpp"

#include <cstdio>
#include <fstream>

#include "rfc/error.hpp"

namespace rfc::shard {

namespace {

struct Writer {
  std::vector<std::uint8_t> out;

  void u8(std::uint8_t v) { out.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
};

struct Reader {
  std::span<const std::uint8_t> in;
  std::size_t pos = 0;

  std::uint8_t u8() { return in[pos++]; }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos++]) << (8 * i);
    return v;
  }
};

const std::array<std::uint32_t, 256>& crc_table() {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int b = 0; b < 8; ++b) c = (c & 1) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
      t[i] = c;
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  const auto& table = crc_table();
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::uint8_t b : bytes) c = table[(c ^ b) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

ShardHeader ShardHeader::from_config(const code::CodeConfig& cfg, code::ColumnId id,
                                     std::uint32_t symbol_size,
                                     std::uint64_t original_file_len) {
  ShardHeader h;
  h.field_m = static_cast<std::uint8_t>(cfg.field->m());
  h.reduction_poly = cfg.field->reduction_poly();
  h.k = cfg.k;
  h.c_num = cfg.c_num;
  h.c_den = cfg.c_den;
  h.log_base = static_cast<std::uint8_t>(cfg.log_base);
  h.master_seed = cfg.master_seed;
  h.column_index = id.index;
  h.symbol_size = symbol_size;
  h.original_file_len = original_file_len;
  return h;
}

code::CodeConfig ShardHeader::to_config() const {
  code::CodeConfig cfg;
  cfg.k = k;
  cfg.c_num = c_num;
  cfg.c_den = c_den;
  cfg.log_base = static_cast<code::LogBase>(log_base);
  cfg.master_seed = master_seed;
  cfg.field = galois::FieldSpec::make(field_m, reduction_poly);
  cfg.validate();
  return cfg;
}

bool ShardHeader::same_stream(const ShardHeader& o) const {
  return version == o.version && field_m == o.field_m &&
         reduction_poly == o.reduction_poly && k == o.k && c_num == o.c_num &&
         c_den == o.c_den && log_base == o.log_base && master_seed == o.master_seed &&
         symbol_size == o.symbol_size && original_file_len == o.original_file_len;
}

std::vector<std::uint8_t> serialize(const ShardHeader& h) {
  Writer w;
  w.out.reserve(kHeaderSize);
  for (std::uint8_t b : kMagic) w.u8(b);
  w.u8(h.version);
  w.u8(h.field_m);
  w.u32(h.reduction_poly);
  w.u32(h.k);
  w.u32(h.c_num);
  w.u32(h.c_den);
  w.u8(h.log_base);
  w.u64(h.master_seed);
  w.u64(h.column_index);
  w.u32(h.symbol_size);
  w.u64(h.original_file_len);
  w.u32(crc32(w.out));
  return w.out;
}

ShardHeader parse(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    raise(Errc::HeaderMismatch, "header truncated");
  }
  for (std::size_t i = 0; i < kMagic.size(); ++i) {
    if (bytes[i] != kMagic[i]) raise(Errc::HeaderMismatch, "bad magic");
  }
  const std::uint32_t want = crc32(bytes.first(kHeaderSize - 4));
  Reader r{bytes};
  r.pos = kMagic.size();
  ShardHeader h;
  h.version = r.u8();
  h.field_m = r.u8();
  h.reduction_poly = r.u32();
  h.k = r.u32();
  h.c_num = r.u32();
  h.c_den = r.u32();
  h.log_base = r.u8();
  h.master_seed = r.u64();
  h.column_index = r.u64();
  h.symbol_size = r.u32();
  h.original_file_len = r.u64();
  const std::uint32_t got = r.u32();
  if (got != want) raise(Errc::CorruptShard, "header crc mismatch");
  if (h.version != kVersion) {
    raise(Errc::HeaderMismatch, "unsupported version " + std::to_string(h.version));
  }
  if (h.c_den == 0) raise(Errc::ConfigInvalid, "c denominator is zero");
  if (h.field_m == 0 || h.field_m % 8 != 0 ||
      h.symbol_size % (h.field_m / 8) != 0) {
    raise(Errc::ConfigInvalid, "symbol_size not a multiple of the element size");
  }
  return h;
}

void write_shard(const std::filesystem::path& path, const ShardHeader& h,
                 std::span<const std::uint8_t> payload) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) raise(Errc::IoError, "cannot open " + path.string() + " for writing");
  const std::vector<std::uint8_t> header = serialize(h);
  os.write(reinterpret_cast<const char*>(header.data()),
           static_cast<std::streamsize>(header.size()));
  os.write(reinterpret_cast<const char*>(payload.data()),
           static_cast<std::streamsize>(payload.size()));
  const std::uint32_t crc = crc32(payload);
  std::uint8_t trailer[4];
  for (int i = 0; i < 4; ++i) trailer[i] = static_cast<std::uint8_t>(crc >> (8 * i));
  os.write(reinterpret_cast<const char*>(trailer), 4);
  if (!os) raise(Errc::IoError, "write failed: " + path.string());
}

std::pair<ShardHeader, std::vector<std::uint8_t>> read_shard(
    const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(Errc::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                                  std::istreambuf_iterator<char>());
  ShardHeader h = parse(bytes);
  if (bytes.size() != kHeaderSize + static_cast<std::size_t>(h.symbol_size) + 4) {
    raise(Errc::CorruptShard, "unexpected shard size: " + path.string());
  }
  std::vector<std::uint8_t> payload(bytes.begin() + kHeaderSize,
                                    bytes.begin() + kHeaderSize + h.symbol_size);
  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i) {
    stored |= static_cast<std::uint32_t>(bytes[kHeaderSize + h.symbol_size + i])
              << (8 * i);
  }
  if (stored != crc32(payload)) {
    raise(Errc::CorruptShard, "payload crc mismatch: " + path.string());
  }
  return {h, std::move(payload)};
}

std::string manifest_line(const ManifestEntry& e) {
  char buf[64];
  std::snprintf(buf, sizeof buf, ",%llu,%llu,%08x",
                static_cast<unsigned long long>(e.index),
                static_cast<unsigned long long>(e.length), e.payload_crc);
  return e.name + buf;
}

ManifestEntry parse_manifest_line(const std::string& line) {
  ManifestEntry e;
  const std::size_t c1 = line.find(',');
  const std::size_t c2 = (c1 == std::string::npos) ? std::string::npos : line.find(',', c1 + 1);
  const std::size_t c3 = (c2 == std::string::npos) ? std::string::npos : line.find(',', c2 + 1);
  if (c3 == std::string::npos) raise(Errc::HeaderMismatch, "bad manifest line: " + line);
  try {
    e.name = line.substr(0, c1);
    e.index = std::stoull(line.substr(c1 + 1, c2 - c1 - 1));
    e.length = std::stoull(line.substr(c2 + 1, c3 - c2 - 1));
    e.payload_crc = static_cast<std::uint32_t>(std::stoul(line.substr(c3 + 1), nullptr, 16));
  } catch (const std::exception&) {
    raise(Errc::HeaderMismatch, "bad manifest line: " + line);
  }
  return e;
}

std::string shard_filename(std::uint64_t index) {
  return "shard_" + std::to_string(index) + ".rfc";
}

}  // namespace rfc::shard
