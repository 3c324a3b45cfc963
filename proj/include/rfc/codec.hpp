#ifndef RFC_CODEC_HPP
#define RFC_CODEC_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rfc/code.hpp"
#include "rfc/gflinalg.hpp"

namespace rfc::codec {

/// k equally sized symbols; each symbol is symbol_size bytes holding
/// symbol_size / (m/8) field elements (little-endian within an element).
struct SourceBlock {
  std::uint32_t k = 0;
  std::uint32_t symbol_size = 0;
  std::vector<std::uint8_t> data;  // k * symbol_size bytes

  std::span<const std::uint8_t> symbol(std::uint32_t i) const {
    return {data.data() + static_cast<std::size_t>(i) * symbol_size, symbol_size};
  }
  std::span<std::uint8_t> symbol(std::uint32_t i) {
    return {data.data() + static_cast<std::size_t>(i) * symbol_size, symbol_size};
  }

  friend bool operator==(const SourceBlock&, const SourceBlock&) = default;
};

/// Zero-pads bytes up to k * symbol_size. Throws ConfigInvalid when
/// symbol_size is not a positive multiple of the field element size or the
/// input does not fit.
SourceBlock make_source_block(const code::CodeConfig& cfg,
                              std::span<const std::uint8_t> bytes,
                              std::uint32_t symbol_size);

struct EncodedSymbol {
  code::ColumnId id;
  std::vector<std::uint8_t> payload;
};

enum class DecodeOutcome { Success, NotEnoughSymbols, RankDeficient };

struct DecodeReport {
  DecodeOutcome outcome = DecodeOutcome::Success;
  std::size_t symbols_used = 0;
  std::size_t peel_count = 0;       // rows fixed directly by systematic symbols
  std::size_t elimination_dim = 0;  // unknowns in the residual dense solve
  std::size_t rank = 0;             // realized rank (peel + residual pivots)
  std::vector<std::uint32_t> missing_rows;  // unresolved rows without a pivot
};

struct DecodeResult {
  DecodeReport report;
  std::optional<SourceBlock> block;

  bool ok() const { return report.outcome == DecodeOutcome::Success; }
};

struct DecodeOptions {
  bool peel_systematic = true;  // test knob; results must not depend on it
};

/// v_id: systematic ids copy the source symbol, parity ids compute the sparse
/// linear combination element-wise across the payload.
EncodedSymbol encode_symbol(const code::CodeConfig& cfg, const SourceBlock& block,
                            code::ColumnId id);

/// Apply an already-realized column to a block (exposed for tests/fixtures).
std::vector<std::uint8_t> apply_column(const code::CodeConfig& cfg,
                                       const SourceBlock& block,
                                       const code::Column& col);

/// Maximum-likelihood decode: peel systematic symbols, then solve the
/// residual dense system over the unresolved rows (exact arithmetic).
/// Duplicate ids are ignored beyond the first occurrence.
/// Throws MalformedSymbol on payload size mismatch; rank deficiency is a
/// report, not an exception.
DecodeResult decode(const code::CodeConfig& cfg,
                    std::span<const EncodedSymbol> received,
                    DecodeOptions opts = {});

/// k x |ids| matrix whose j-th column realizes column(cfg, ids[j]).
gflinalg::GfMatrix assemble_matrix(const code::CodeConfig& cfg,
                                   std::span<const code::ColumnId> ids);

// Element-wise payload kernels shared with the repair module.
// pre: dst.size() == src.size(), a multiple of the element size.
void payload_add_scaled(const galois::FieldSpec& f, std::span<std::uint8_t> dst,
                        std::span<const std::uint8_t> src, galois::FieldElement w);
void payload_scale(const galois::FieldSpec& f, std::span<std::uint8_t> dst,
                   galois::FieldElement w);

}  // namespace rfc::codec

#endif
