#include "rfc/codec.hpp"

#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_set>

#include "rfc/error.hpp"

namespace rfc::codec {

using galois::FieldElement;

namespace {

FieldElement load_elem(const galois::FieldSpec& f, const std::uint8_t* p) {
  if (f.element_bytes() == 1) return *p;
  return static_cast<FieldElement>(p[0] | (p[1] << 8));  // little-endian
}

void store_elem(const galois::FieldSpec& f, std::uint8_t* p, FieldElement v) {
  p[0] = static_cast<std::uint8_t>(v & 0xFF);
  if (f.element_bytes() == 2) p[1] = static_cast<std::uint8_t>(v >> 8);
}

}  // namespace

void payload_add_scaled(const galois::FieldSpec& f, std::span<std::uint8_t> dst,
                        std::span<const std::uint8_t> src, FieldElement w) {
  if (w == 0) return;
  const unsigned eb = f.element_bytes();
  if (w == 1) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
    return;
  }
  const std::uint32_t lw = f.log(w);
  for (std::size_t i = 0; i < dst.size(); i += eb) {
    const FieldElement s = load_elem(f, src.data() + i);
    if (s == 0) continue;
    const FieldElement prod = f.exp_at(lw + f.log(s));
    store_elem(f, dst.data() + i, load_elem(f, dst.data() + i) ^ prod);
  }
}

void payload_scale(const galois::FieldSpec& f, std::span<std::uint8_t> dst,
                   FieldElement w) {
  const unsigned eb = f.element_bytes();
  if (w == 1) return;
  for (std::size_t i = 0; i < dst.size(); i += eb) {
    store_elem(f, dst.data() + i, f.mul(load_elem(f, dst.data() + i), w));
  }
}

SourceBlock make_source_block(const code::CodeConfig& cfg,
                              std::span<const std::uint8_t> bytes,
                              std::uint32_t symbol_size) {
  cfg.validate();
  const unsigned eb = cfg.field->element_bytes();
  if (symbol_size == 0 || symbol_size % eb != 0) {
    raise(Errc::ConfigInvalid, "symbol_size must be a positive multiple of " +
                                   std::to_string(eb) + " bytes");
  }
  const std::size_t capacity = static_cast<std::size_t>(cfg.k) * symbol_size;
  if (bytes.size() > capacity) {
    raise(Errc::ConfigInvalid, "input larger than k * symbol_size");
  }
  SourceBlock block;
  block.k = cfg.k;
  block.symbol_size = symbol_size;
  block.data.assign(capacity, 0);
  std::copy(bytes.begin(), bytes.end(), block.data.begin());
  return block;
}

std::vector<std::uint8_t> apply_column(const code::CodeConfig& cfg,
                                       const SourceBlock& block,
                                       const code::Column& col) {
  if (block.k != cfg.k) raise(Errc::ConfigInvalid, "block does not match cfg.k");
  if (const auto* sys = std::get_if<code::SystematicColumn>(&col)) {
    auto s = block.symbol(sys->row);
    return {s.begin(), s.end()};
  }
  const auto& parity = std::get<code::ParityColumn>(col);
  std::vector<std::uint8_t> payload(block.symbol_size, 0);
  for (const auto& e : parity.entries) {
    payload_add_scaled(*cfg.field, payload, block.symbol(e.row), e.coeff);
  }
  return payload;
}

EncodedSymbol encode_symbol(const code::CodeConfig& cfg, const SourceBlock& block,
                            code::ColumnId id) {
  return EncodedSymbol{id, apply_column(cfg, block, code::column(cfg, id))};
}

gflinalg::GfMatrix assemble_matrix(const code::CodeConfig& cfg,
                                   std::span<const code::ColumnId> ids) {
  cfg.validate();
  gflinalg::GfMatrix m(cfg.field, cfg.k, ids.size());
  for (std::size_t j = 0; j < ids.size(); ++j) {
    const code::Column col = code::column(cfg, ids[j]);
    if (const auto* sys = std::get_if<code::SystematicColumn>(&col)) {
      m.at(sys->row, j) = 1;
    } else {
      for (const auto& e : std::get<code::ParityColumn>(col).entries) {
        m.at(e.row, j) = e.coeff;
      }
    }
  }
  return m;
}

DecodeResult decode(const code::CodeConfig& cfg,
                    std::span<const EncodedSymbol> received, DecodeOptions opts) {
  cfg.validate();
  const galois::FieldSpec& f = *cfg.field;
  const unsigned eb = f.element_bytes();

  DecodeResult res;

  // Deduplicate ids, first occurrence wins; validate payload sizes.
  std::vector<const EncodedSymbol*> symbols;
  symbols.reserve(received.size());
  {
    std::unordered_set<std::uint64_t> seen;
    for (const auto& s : received) {
      if (seen.insert(s.id.index).second) symbols.push_back(&s);
    }
  }
  std::uint32_t symbol_size = 0;
  for (const auto* s : symbols) {
    if (symbol_size == 0) symbol_size = static_cast<std::uint32_t>(s->payload.size());
    if (s->payload.size() != symbol_size || symbol_size == 0 || symbol_size % eb != 0) {
      raise(Errc::MalformedSymbol,
            "payload size mismatch at column " + std::to_string(s->id.index));
    }
  }

  res.report.symbols_used = symbols.size();
  if (symbols.size() < cfg.k) {
    res.report.outcome = DecodeOutcome::NotEnoughSymbols;
    return res;
  }

  SourceBlock out;
  out.k = cfg.k;
  out.symbol_size = symbol_size;
  out.data.assign(static_cast<std::size_t>(cfg.k) * symbol_size, 0);

  // Phase 1: systematic symbols fix their rows directly.
  std::vector<bool> resolved(cfg.k, false);
  std::vector<const EncodedSymbol*> equations;
  for (const auto* s : symbols) {
    if (opts.peel_systematic && s->id.index < cfg.k) {
      const auto row = static_cast<std::uint32_t>(s->id.index);
      std::copy(s->payload.begin(), s->payload.end(), out.symbol(row).begin());
      resolved[row] = true;
    } else {
      equations.push_back(s);
    }
  }
  std::size_t peel_count = 0;
  for (bool r : resolved) peel_count += r;
  res.report.peel_count = peel_count;

  std::vector<std::uint32_t> unresolved;
  std::vector<std::uint32_t> col_of_row(cfg.k, 0);
  for (std::uint32_t r = 0; r < cfg.k; ++r) {
    if (!resolved[r]) {
      col_of_row[r] = static_cast<std::uint32_t>(unresolved.size());
      unresolved.push_back(r);
    }
  }
  const std::size_t t = unresolved.size();
  res.report.elimination_dim = t;
  if (t == 0) {
    res.report.rank = cfg.k;
    res.block = std::move(out);
    return res;
  }

  // Phase 2: restrict remaining columns to unresolved rows and subtract the
  // known contributions from the payloads.
  const std::size_t npos = symbol_size / eb;
  gflinalg::GfMatrix a(cfg.field, equations.size(), t);
  gflinalg::GfMatrix b(cfg.field, equations.size(), npos);
  std::vector<std::uint8_t> adjusted;
  for (std::size_t e = 0; e < equations.size(); ++e) {
    const EncodedSymbol& s = *equations[e];
    adjusted = s.payload;
    const code::Column col = code::column(cfg, s.id);
    if (const auto* sys = std::get_if<code::SystematicColumn>(&col)) {
      a.at(e, col_of_row[sys->row]) = 1;  // only reachable with peeling off
    } else {
      for (const auto& entry : std::get<code::ParityColumn>(col).entries) {
        if (resolved[entry.row]) {
          payload_add_scaled(f, adjusted, out.symbol(entry.row), entry.coeff);
        } else {
          a.at(e, col_of_row[entry.row]) = entry.coeff;
        }
      }
    }
    for (std::size_t p = 0; p < npos; ++p) {
      b.at(e, p) = load_elem(f, adjusted.data() + p * eb);
    }
  }

  gflinalg::BlockSolveResult sol = gflinalg::solve_block(std::move(a), std::move(b));
  res.report.rank = peel_count + sol.report.rank;
  if (!sol.report.free_cols.empty()) {
    res.report.outcome = DecodeOutcome::RankDeficient;
    for (std::size_t c : sol.report.free_cols) {
      res.report.missing_rows.push_back(unresolved[c]);
    }
    return res;
  }
  if (!sol.report.consistent) {
    raise(Errc::InconsistentSystem,
          "received payloads are mutually inconsistent (corrupted symbols?)");
  }

  for (std::size_t i = 0; i < t; ++i) {
    auto dst = out.symbol(unresolved[i]);
    for (std::size_t p = 0; p < npos; ++p) {
      store_elem(f, dst.data() + p * eb, sol.solution.at(i, p));
    }
  }
  res.report.rank = cfg.k;
  res.block = std::move(out);
  return res;
}

}  // namespace rfc::codec
