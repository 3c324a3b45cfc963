#ifndef RFC_CODE_HPP
#define RFC_CODE_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rfc/galois.hpp"

namespace rfc::code {

enum class LogBase : std::uint8_t { Natural = 0, Base2 = 1 };

/// Complete description of an (unbounded) code: any column of the generator
/// matrix G = [I | P] is a pure function of this config and its index.
struct CodeConfig {
  std::uint32_t k = 0;                                // input symbol count
  std::uint32_t c_num = 0;                            // sparsity constant c =
  std::uint32_t c_den = 1;                            //   c_num / c_den > 0
  LogBase log_base = LogBase::Natural;
  std::uint64_t master_seed = 0;
  std::shared_ptr<const galois::FieldSpec> field;

  double c() const { return static_cast<double>(c_num) / c_den; }

  /// Throws ConfigInvalid on k = 0, c <= 0, or missing field.
  void validate() const;

  /// Soft warnings: q <= k (field smaller than the guarantee wants),
  /// d(k) > k (degree exceeds the row count).
  std::vector<std::string> warnings() const;
};

/// Parity degree d(k) = max(1, ceil(c * log(k))).
std::uint32_t degree(const CodeConfig& cfg);

/// Index into the encoded stream: [0, k) systematic, >= k parity.
struct ColumnId {
  std::uint64_t index = 0;
  friend bool operator==(const ColumnId&, const ColumnId&) = default;
  friend auto operator<=>(const ColumnId&, const ColumnId&) = default;
};

struct ParityEntry {
  std::uint32_t row = 0;
  galois::FieldElement coeff = 0;
  friend bool operator==(const ParityEntry&, const ParityEntry&) = default;
};

/// Sparse generator column: sorted by row, rows distinct, coefficients
/// nonzero. Repeated draws of one row collapse by field addition, so the
/// realized support can be smaller than d(k).
struct ParityColumn {
  std::vector<ParityEntry> entries;

  bool covers(std::uint32_t row) const { return find(row) != nullptr; }
  const ParityEntry* find(std::uint32_t row) const;
};

struct SystematicColumn {
  std::uint32_t row = 0;
};

using Column = std::variant<SystematicColumn, ParityColumn>;

/// Canonicalize raw (row, coeff) draws: accumulate repeated rows in F_q,
/// drop zero coefficients, sort by row.
ParityColumn column_from_draws(const galois::FieldSpec& field,
                               std::span<const ParityEntry> draws);

/// Realize the parity column for id with an explicit draw count.
/// pre: id.index >= cfg.k.
ParityColumn parity_column_d(const CodeConfig& cfg, ColumnId id, std::uint32_t d);

/// Realize the parity column for id at the configured degree d(k).
ParityColumn parity_column(const CodeConfig& cfg, ColumnId id);

/// Realize any generator column; indices below k are the identity block.
Column column(const CodeConfig& cfg, ColumnId id);

}  // namespace rfc::code

#endif
