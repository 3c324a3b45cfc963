#ifndef RFC_REPAIR_HPP
#define RFC_REPAIR_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "rfc/code.hpp"

namespace rfc::repair {

/// A parity that covers `target` together with its footprint: the other rows
/// it covers with nonzero coefficients. Reading the parity plus the
/// footprint symbols (at most d(k) reads total) reconstructs the target.
struct LocalGroup {
  code::ColumnId parity_id;
  std::uint32_t target = 0;
  galois::FieldElement coeff_u = 0;             // nonzero
  std::vector<code::ParityEntry> footprint;     // sorted by row, excludes target

  std::vector<std::uint32_t> footprint_rows() const;
};

/// Build the group for a realized column. pre: col.covers(target).
LocalGroup group_from_column(const code::ParityColumn& col, code::ColumnId id,
                             std::uint32_t target);

/// P_u: one group per parity whose realized column has a nonzero coefficient
/// on target.
std::vector<LocalGroup> find_covering_parities(const code::CodeConfig& cfg,
                                               std::uint32_t target,
                                               std::span<const code::ColumnId> parity_ids);

using PayloadMap = std::map<std::uint32_t, std::vector<std::uint8_t>>;

/// u = inv(coeff_u) * (v - sum_i w_i * u_i), element-wise over the payload.
/// Throws MissingFootprintSymbol listing absent rows, MalformedSymbol on
/// payload length mismatch.
std::vector<std::uint8_t> repair_symbol(const galois::FieldSpec& field,
                                        const LocalGroup& group,
                                        std::span<const std::uint8_t> parity_payload,
                                        const PayloadMap& footprint_payloads);

/// Regenerate a parity from the systematic symbols in its support
/// (locality <= d(k)). Throws MissingFootprintSymbol on absent rows.
std::vector<std::uint8_t> repair_parity(const code::CodeConfig& cfg, code::ColumnId id,
                                        const PayloadMap& systematic_payloads);

/// H_u: vertices are the parities covering u, edges join overlapping
/// footprints.
struct OverlapGraph {
  std::vector<code::ColumnId> vertices;
  std::vector<std::vector<std::uint32_t>> adj;  // symmetric, no self-loops
};

OverlapGraph overlap_graph(std::span<const LocalGroup> groups);

struct IndependentSet {
  std::size_t count = 0;
  std::vector<std::size_t> members;  // vertex indices, pairwise non-adjacent
  bool exact = false;                // true: branch-and-bound; false: greedy
};

/// Pairwise-isolated parity selection: exact maximum independent set for at
/// most exact_limit vertices, greedy minimum-degree otherwise (a certified
/// lower bound either way).
IndependentSet independent_groups(const OverlapGraph& g, std::size_t exact_limit = 20);

struct Availability {
  std::size_t coverage = 0;            // |P_u|
  IndependentSet set;
  std::vector<LocalGroup> groups;      // the chosen pairwise-isolated groups
};

Availability availability(const code::CodeConfig& cfg, std::uint32_t target,
                          std::span<const code::ColumnId> parity_ids);

struct AvailabilityRow {
  std::uint32_t row = 0;
  std::size_t coverage = 0;
  std::size_t availability = 0;
  bool exact = false;
};

struct AvailabilityReport {
  std::vector<AvailabilityRow> rows;
  std::size_t min_availability = 0;
  double mean_availability = 0.0;

  /// CSV rows: u,coverage,availability,method
  void write_csv(std::ostream& os) const;
};

AvailabilityReport availability_report(const code::CodeConfig& cfg,
                                       std::span<const code::ColumnId> parity_ids);

}  // namespace rfc::repair

#endif
