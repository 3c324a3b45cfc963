#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rfc/codec.hpp"
#include "rfc/repair.hpp"

using namespace rfc::code;
using namespace rfc::codec;
using namespace rfc::repair;
using rfc::galois::FieldSpec;

namespace {

CodeConfig make_cfg(std::uint32_t k, std::uint32_t c_num = 6,
                    std::uint64_t seed = 0x5EED5EED5EED5EEDull) {
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

std::vector<ColumnId> parity_range(std::uint32_t k, std::size_t count) {
  std::vector<ColumnId> ids;
  for (std::size_t j = 0; j < count; ++j) ids.push_back(ColumnId{k + j});
  return ids;
}

// Hand-built fixture: row 0 covered by four parities, three of which have
// pairwise disjoint footprints.
std::vector<LocalGroup> fixture_groups() {
  auto group = [](std::uint64_t id, std::vector<std::uint32_t> rows) {
    LocalGroup g;
    g.parity_id = ColumnId{id};
    g.target = 0;
    g.coeff_u = 1;
    for (std::uint32_t r : rows) g.footprint.push_back(ParityEntry{r, 1});
    return g;
  };
  return {
      group(100, {1, 2, 3}),
      group(101, {2, 3, 4}),  // overlaps the first and the third
      group(102, {4, 5}),
      group(103, {7, 8}),     // isolated from everything
  };
}

}  // namespace

TEST_CASE("find_covering_parities: empty when nothing covers the row") {
  // k = 2 with single-row parities: look for a row some parity misses.
  const CodeConfig cfg = make_cfg(4, 1);  // d = ceil(ln 4) = 2
  const auto ids = parity_range(cfg.k, 3);
  for (std::uint32_t u = 0; u < cfg.k; ++u) {
    const auto groups = find_covering_parities(cfg, u, ids);
    std::size_t expected = 0;
    for (const auto& id : ids) {
      if (parity_column(cfg, id).covers(u)) ++expected;
    }
    CHECK(groups.size() == expected);
    for (const auto& g : groups) {
      CHECK(g.target == u);
      CHECK(g.coeff_u != 0);
      for (const auto& e : g.footprint) CHECK(e.row != u);
    }
  }
  const auto none = find_covering_parities(cfg, 0, {});
  CHECK(none.empty());
}

TEST_CASE("overlap fixture: footprint contents and availability at least 3") {
  const auto groups = fixture_groups();
  CHECK(groups[0].footprint_rows() == std::vector<std::uint32_t>{1, 2, 3});

  const OverlapGraph h = overlap_graph(groups);
  REQUIRE(h.vertices.size() == 4);
  CHECK(h.adj[0] == std::vector<std::uint32_t>{1});
  CHECK(h.adj[1] == (std::vector<std::uint32_t>{0, 2}));
  CHECK(h.adj[2] == std::vector<std::uint32_t>{1});
  CHECK(h.adj[3].empty());

  const IndependentSet set = independent_groups(h);
  CHECK(set.exact);
  CHECK(set.count >= 3);
  CHECK(set.count == 3);  // first, third and fourth parity

  // returned members must be pairwise isolated
  for (std::size_t i = 0; i < set.members.size(); ++i) {
    for (std::size_t j = i + 1; j < set.members.size(); ++j) {
      const auto a = groups[set.members[i]].footprint_rows();
      const auto b = groups[set.members[j]].footprint_rows();
      std::vector<std::uint32_t> inter;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(inter));
      CHECK(inter.empty());
    }
  }
}

TEST_CASE("repair of a single-entry parity is a scaled copy") {
  const auto f = FieldSpec::gf256();
  LocalGroup g;
  g.parity_id = ColumnId{10};
  g.target = 5;
  g.coeff_u = 0x07;
  const std::vector<std::uint8_t> parity_payload = {0x10, 0x20, 0x30};
  const auto repaired = repair_symbol(*f, g, parity_payload, {});
  const auto inv = f->inv(0x07);
  for (std::size_t i = 0; i < repaired.size(); ++i) {
    CHECK(repaired[i] == f->mul(parity_payload[i], inv));
  }
}

TEST_CASE("unit-coefficient group repairs by xor") {
  const auto f = FieldSpec::gf256();
  LocalGroup g;
  g.target = 0;
  g.coeff_u = 1;
  g.footprint = {{1, 1}, {2, 1}};
  PayloadMap payloads;
  payloads[1] = {0xAA, 0x01};
  payloads[2] = {0x0F, 0x02};
  const std::vector<std::uint8_t> v = {0x55, 0x03};
  const auto repaired = repair_symbol(*f, g, v, payloads);
  CHECK(repaired == std::vector<std::uint8_t>{static_cast<std::uint8_t>(0x55 ^ 0xAA ^ 0x0F),
                                              static_cast<std::uint8_t>(0x03 ^ 0x01 ^ 0x02)});
}

TEST_CASE("missing footprint symbols are reported") {
  const auto f = FieldSpec::gf256();
  LocalGroup g;
  g.target = 0;
  g.coeff_u = 1;
  g.footprint = {{1, 1}, {2, 1}, {3, 1}};
  PayloadMap payloads;
  payloads[2] = {0x00};
  const std::vector<std::uint8_t> parity_payload = {0x00};
  try {
    repair_symbol(*f, g, parity_payload, payloads);
    FAIL("expected MissingFootprintSymbol");
  } catch (const rfc::Error& e) {
    CHECK(e.code() == rfc::Errc::MissingFootprintSymbol);
    CHECK(std::string(e.what()).find('1') != std::string::npos);
    CHECK(std::string(e.what()).find('3') != std::string::npos);
  }
}

TEST_CASE("seeded repair roundtrip: systematic symbol, k=32") {
  std::mt19937_64 gen(77);
  const CodeConfig cfg = make_cfg(32, 6, 0x1234);
  const SourceBlock block = random_block(cfg, 8, gen);
  const auto ids = parity_range(cfg.k, cfg.k);  // r = 1

  std::size_t repaired_rows = 0;
  for (std::uint32_t u = 0; u < cfg.k; ++u) {
    const auto groups = find_covering_parities(cfg, u, ids);
    if (groups.empty()) continue;
    const LocalGroup& g = groups.front();

    const EncodedSymbol parity = encode_symbol(cfg, block, g.parity_id);
    PayloadMap payloads;
    std::size_t reads = 1;  // the parity itself
    for (const auto& e : g.footprint) {
      const auto sym = block.symbol(e.row);
      payloads[e.row] = {sym.begin(), sym.end()};
      ++reads;
    }
    const auto repaired = repair_symbol(*cfg.field, g, parity.payload, payloads);
    const auto original = block.symbol(u);
    REQUIRE(std::equal(repaired.begin(), repaired.end(), original.begin(), original.end()));
    REQUIRE(reads <= degree(cfg) + 1);  // logarithmic locality
    ++repaired_rows;
  }
  CHECK(repaired_rows == cfg.k);  // with r=1, c=6 every row was coverable
}

TEST_CASE("repair_parity regenerates the stored payload from its support") {
  std::mt19937_64 gen(78);
  const CodeConfig cfg = make_cfg(24, 6, 0x4321);
  const SourceBlock block = random_block(cfg, 4, gen);
  for (std::uint64_t pid = cfg.k; pid < cfg.k + 10; ++pid) {
    const ParityColumn col = parity_column(cfg, ColumnId{pid});
    PayloadMap sys;
    for (const auto& e : col.entries) {
      const auto sym = block.symbol(e.row);
      sys[e.row] = {sym.begin(), sym.end()};
    }
    const auto regen = repair_parity(cfg, ColumnId{pid}, sys);
    const EncodedSymbol original = encode_symbol(cfg, block, ColumnId{pid});
    REQUIRE(regen == original.payload);
    REQUIRE(sys.size() <= degree(cfg));
  }

  // chained: repair a systematic symbol first, then the parity through it
  const std::uint32_t lost = 3;
  const auto ids = parity_range(cfg.k, cfg.k);
  const auto groups = find_covering_parities(cfg, lost, ids);
  REQUIRE(!groups.empty());
  const LocalGroup& g = groups.front();
  PayloadMap fp;
  for (const auto& e : g.footprint) {
    const auto sym = block.symbol(e.row);
    fp[e.row] = {sym.begin(), sym.end()};
  }
  const auto parity_payload = encode_symbol(cfg, block, g.parity_id).payload;
  const auto recovered = repair_symbol(*cfg.field, g, parity_payload, fp);

  std::uint64_t target_pid = cfg.k;
  while (!parity_column(cfg, ColumnId{target_pid}).covers(lost)) ++target_pid;
  const ParityColumn tcol = parity_column(cfg, ColumnId{target_pid});
  PayloadMap sys;
  for (const auto& e : tcol.entries) {
    if (e.row == lost) {
      sys[e.row] = recovered;
    } else {
      const auto sym = block.symbol(e.row);
      sys[e.row] = {sym.begin(), sym.end()};
    }
  }
  CHECK(repair_parity(cfg, ColumnId{target_pid}, sys) ==
        encode_symbol(cfg, block, ColumnId{target_pid}).payload);

  CHECK_THROWS_AS(repair_parity(cfg, ColumnId{target_pid}, {}), rfc::Error);
}

TEST_CASE("availability: clique collapses to one group") {
  auto clique_group = [](std::uint64_t id) {
    LocalGroup g;
    g.parity_id = ColumnId{id};
    g.target = 0;
    g.coeff_u = 1;
    g.footprint = {{9, 1}};  // shared row
    return g;
  };
  std::vector<LocalGroup> groups = {clique_group(10), clique_group(11), clique_group(12)};
  const auto set = independent_groups(overlap_graph(groups));
  CHECK(set.count == 1);
}

TEST_CASE("greedy lower-bounds exact on random overlap graphs") {
  std::mt19937_64 gen(79);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + gen() % 14;
    OverlapGraph g;
    g.vertices.resize(n);
    g.adj.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (gen() % 4 == 0) {
          g.adj[a].push_back(static_cast<std::uint32_t>(b));
          g.adj[b].push_back(static_cast<std::uint32_t>(a));
        }
      }
    }
    const auto exact = independent_groups(g, /*exact_limit=*/64);
    const auto greedy = independent_groups(g, /*exact_limit=*/0);
    REQUIRE(exact.exact);
    REQUIRE(!greedy.exact);
    REQUIRE(greedy.count <= exact.count);
    REQUIRE(exact.count <= n);
    REQUIRE(greedy.count >= 1);

    // both sets must be genuinely independent
    for (const auto& set : {exact, greedy}) {
      for (std::size_t x = 0; x < set.members.size(); ++x) {
        for (std::size_t y = x + 1; y < set.members.size(); ++y) {
          const auto& adj = g.adj[set.members[x]];
          REQUIRE(std::find(adj.begin(), adj.end(), set.members[y]) == adj.end());
        }
      }
    }
  }
}

TEST_CASE("availability over a generated code: groups disjoint, bounded by coverage") {
  const CodeConfig cfg = make_cfg(60, 4, 0x777);
  const auto ids = parity_range(cfg.k, cfg.k);
  for (std::uint32_t u = 0; u < 10; ++u) {
    const Availability av = availability(cfg, u, ids);
    CHECK(av.set.count <= av.coverage);
    if (av.coverage >= 1) CHECK(av.set.count >= 1);
    for (std::size_t i = 0; i < av.groups.size(); ++i) {
      for (std::size_t j = i + 1; j < av.groups.size(); ++j) {
        const auto a = av.groups[i].footprint_rows();
        const auto b = av.groups[j].footprint_rows();
        std::vector<std::uint32_t> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(inter));
        REQUIRE(inter.empty());
      }
    }
  }

  const AvailabilityReport rep = availability_report(cfg, ids);
  REQUIRE(rep.rows.size() == cfg.k);
  for (const auto& row : rep.rows) {
    CHECK(row.availability <= row.coverage);
    if (row.coverage >= 1) CHECK(row.availability >= 1);
  }
  CHECK(rep.mean_availability >= static_cast<double>(rep.min_availability));
}
