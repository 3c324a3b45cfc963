#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rfc/codec.hpp"

using namespace rfc::code;
using namespace rfc::codec;
using rfc::galois::FieldSpec;

namespace {

CodeConfig make_cfg(std::uint32_t k, std::uint32_t c_num = 6,
                    std::uint64_t seed = 0xABCDEF0123456789ull) {
  CodeConfig cfg;
  cfg.k = k;
  cfg.c_num = c_num;
  cfg.c_den = 1;
  cfg.master_seed = seed;
  cfg.field = FieldSpec::gf256();
  return cfg;
}

SourceBlock random_block(const CodeConfig& cfg, std::uint32_t symbol_size,
                         std::mt19937_64& gen) {
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(cfg.k) * symbol_size);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(gen());
  return make_source_block(cfg, bytes, symbol_size);
}

}  // namespace

TEST_CASE("systematic encode copies the source symbol") {
  const CodeConfig cfg = make_cfg(8);
  std::mt19937_64 gen(1);
  const SourceBlock block = random_block(cfg, 16, gen);
  for (std::uint32_t i = 0; i < cfg.k; ++i) {
    const EncodedSymbol s = encode_symbol(cfg, block, ColumnId{i});
    const auto sym = block.symbol(i);
    CHECK(std::equal(s.payload.begin(), s.payload.end(), sym.begin(), sym.end()));
  }
}

TEST_CASE("unit-coefficient parity is the xor of its support") {
  const CodeConfig cfg = make_cfg(4);
  std::mt19937_64 gen(2);
  const SourceBlock block = random_block(cfg, 8, gen);
  ParityColumn col;
  col.entries = {{0, 1}, {1, 1}};
  const auto payload = apply_column(cfg, block, Column{col});
  for (std::size_t i = 0; i < payload.size(); ++i) {
    CHECK(payload[i] == (block.symbol(0)[i] ^ block.symbol(1)[i]));
  }
}

TEST_CASE("parity payload equals the element-wise dot product oracle") {
  const CodeConfig cfg = make_cfg(4);
  std::mt19937_64 gen(3);
  const SourceBlock block = random_block(cfg, 8, gen);
  const ColumnId id{7};
  const ParityColumn col = parity_column(cfg, id);
  const EncodedSymbol s = encode_symbol(cfg, block, id);

  for (std::uint32_t pos = 0; pos < 8; ++pos) {
    std::uint32_t acc = 0;
    for (const auto& e : col.entries) {
      acc ^= oracles::gf_mul(block.symbol(e.row)[pos], e.coeff, 0x11D, 8);
    }
    REQUIRE(s.payload[pos] == acc);
  }
}

TEST_CASE("decode from exactly the systematic symbols skips elimination") {
  const CodeConfig cfg = make_cfg(12);
  std::mt19937_64 gen(4);
  const SourceBlock block = random_block(cfg, 4, gen);
  std::vector<EncodedSymbol> received;
  for (std::uint32_t i = 0; i < cfg.k; ++i) {
    received.push_back(encode_symbol(cfg, block, ColumnId{i}));
  }
  const DecodeResult res = decode(cfg, received);
  REQUIRE(res.ok());
  CHECK(res.report.elimination_dim == 0);
  CHECK(res.report.peel_count == cfg.k);
  CHECK(*res.block == block);
}

TEST_CASE("fewer than k symbols fast-fails") {
  const CodeConfig cfg = make_cfg(12);
  std::mt19937_64 gen(5);
  const SourceBlock block = random_block(cfg, 4, gen);
  std::vector<EncodedSymbol> received;
  for (std::uint32_t i = 0; i + 1 < cfg.k; ++i) {
    received.push_back(encode_symbol(cfg, block, ColumnId{i}));
  }
  const DecodeResult res = decode(cfg, received);
  CHECK(res.report.outcome == DecodeOutcome::NotEnoughSymbols);
  CHECK(!res.block.has_value());

  // duplicates must not be double counted
  received.push_back(received.front());
  CHECK(decode(cfg, received).report.outcome == DecodeOutcome::NotEnoughSymbols);
}

TEST_CASE("decode success matches the rank oracle over seeded trials") {
  std::mt19937_64 gen(6);
  std::size_t successes = 0, failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const CodeConfig cfg = make_cfg(6, 4, gen());
    const std::size_t n = 12;  // rate 1/2
    const SourceBlock block = random_block(cfg, 2, gen);

    std::vector<std::uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    std::shuffle(ids.begin(), ids.end(), gen);
    const std::size_t take = 5 + gen() % (n - 4);  // sizes from k-1 to n

    std::vector<EncodedSymbol> received;
    std::vector<ColumnId> col_ids;
    for (std::size_t i = 0; i < take; ++i) {
      received.push_back(encode_symbol(cfg, block, ColumnId{ids[i]}));
      col_ids.push_back(ColumnId{ids[i]});
    }

    const DecodeResult res = decode(cfg, received);
    const bool full_rank = rfc::gflinalg::rank(assemble_matrix(cfg, col_ids)) == cfg.k;
    REQUIRE(res.ok() == full_rank);
    if (res.ok()) {
      REQUIRE(*res.block == block);
      ++successes;
    } else {
      ++failures;
    }
  }
  CHECK(successes > 100);  // both verdicts must actually occur
  CHECK(failures > 100);
}

TEST_CASE("rank-deficient report names unresolved rows") {
  const CodeConfig cfg = make_cfg(6, 4);
  std::mt19937_64 gen(7);
  const SourceBlock block = random_block(cfg, 2, gen);
  // k symbols but one systematic id duplicated in spirit: use k copies of
  // parities covering a strict subset is fiddly; instead drop one systematic
  // symbol and provide a parity that misses that row.
  std::vector<EncodedSymbol> received;
  for (std::uint32_t i = 1; i < cfg.k; ++i) {
    received.push_back(encode_symbol(cfg, block, ColumnId{i}));
  }
  std::uint64_t pid = cfg.k;
  while (true) {
    const ParityColumn col = parity_column(cfg, ColumnId{pid});
    if (!col.covers(0)) break;
    ++pid;
  }
  received.push_back(encode_symbol(cfg, block, ColumnId{pid}));

  const DecodeResult res = decode(cfg, received);
  REQUIRE(res.report.outcome == DecodeOutcome::RankDeficient);
  REQUIRE(res.report.missing_rows == std::vector<std::uint32_t>{0});
  CHECK(res.report.rank == cfg.k - 1);
}

TEST_CASE("peeling on and off produce identical blocks") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const CodeConfig cfg = make_cfg(10, 5, gen());
    const SourceBlock block = random_block(cfg, 4, gen);
    const std::size_t n = 20;
    std::vector<std::uint32_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    std::shuffle(ids.begin(), ids.end(), gen);

    std::vector<EncodedSymbol> received;
    for (std::size_t i = 0; i < 14; ++i) {
      received.push_back(encode_symbol(cfg, block, ColumnId{ids[i]}));
    }
    const DecodeResult with_peel = decode(cfg, received, {.peel_systematic = true});
    const DecodeResult no_peel = decode(cfg, received, {.peel_systematic = false});
    REQUIRE(with_peel.ok() == no_peel.ok());
    if (with_peel.ok()) {
      REQUIRE(with_peel.block->data == no_peel.block->data);
      CHECK(no_peel.report.peel_count == 0);
      CHECK(no_peel.report.elimination_dim == cfg.k);
    }
  }
}

TEST_CASE("m=16 roundtrip with multi-element payloads") {
  CodeConfig cfg = make_cfg(9, 6);
  cfg.field = FieldSpec::gf65536();
  std::mt19937_64 gen(9);
  const SourceBlock block = random_block(cfg, 6, gen);  // 3 elements per symbol
  std::vector<EncodedSymbol> received;
  for (std::uint32_t i = 0; i < 4; ++i) {
    received.push_back(encode_symbol(cfg, block, ColumnId{i}));
  }
  std::uint64_t pid = cfg.k;
  while (received.size() < 14) {
    received.push_back(encode_symbol(cfg, block, ColumnId{pid++}));
  }
  const DecodeResult res = decode(cfg, received);
  REQUIRE(res.ok());
  CHECK(*res.block == block);
}

TEST_CASE("assemble_matrix: identity prefix, duplicates, support match") {
  const CodeConfig cfg = make_cfg(6, 4);
  std::vector<ColumnId> ids;
  for (std::uint32_t i = 0; i < cfg.k; ++i) ids.push_back(ColumnId{i});
  ids.push_back(ColumnId{9});
  ids.push_back(ColumnId{9});  // duplicated column

  const auto m = assemble_matrix(cfg, ids);
  REQUIRE(m.rows() == 6);
  REQUIRE(m.cols() == 8);
  for (std::uint32_t r = 0; r < 6; ++r) {
    for (std::uint32_t c = 0; c < 6; ++c) {
      CHECK(m.at(r, c) == (r == c ? 1 : 0));
    }
  }
  const ParityColumn col = parity_column(cfg, ColumnId{9});
  for (std::uint32_t r = 0; r < 6; ++r) {
    const auto* e = col.find(r);
    CHECK(m.at(r, 6) == (e ? e->coeff : 0));
    CHECK(m.at(r, 7) == m.at(r, 6));
  }
  CHECK(rfc::gflinalg::rank(m) == rfc::gflinalg::rank(assemble_matrix(cfg, std::vector<ColumnId>(ids.begin(), ids.end() - 1))));
}

TEST_CASE("malformed payloads are rejected") {
  const CodeConfig cfg = make_cfg(4);
  std::mt19937_64 gen(10);
  const SourceBlock block = random_block(cfg, 4, gen);
  std::vector<EncodedSymbol> received;
  for (std::uint32_t i = 0; i < cfg.k; ++i) {
    received.push_back(encode_symbol(cfg, block, ColumnId{i}));
  }
  received[2].payload.pop_back();
  CHECK_THROWS_AS(decode(cfg, received), rfc::Error);

  CodeConfig cfg16 = cfg;
  cfg16.field = FieldSpec::gf65536();
  CHECK_THROWS_AS(make_source_block(cfg16, {}, 3), rfc::Error);  // odd size
}
