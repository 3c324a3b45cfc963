#ifndef RFC_SIM_HPP
#define RFC_SIM_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rfc/code.hpp"

namespace rfc::sim {

enum class SweepMode : std::uint8_t {
  IidErasure,   // each of the n symbols erased independently with prob p_e
  FixedSubset,  // decoding set of ceil((1+eps)k) symbols drawn uniformly
};

struct ErasureExperiment {
  code::CodeConfig cfg;  // master_seed is ignored; instances derive their own
  double rate = 0.5;     // encoded count n = round(k / rate)
  SweepMode mode = SweepMode::IidErasure;
  std::size_t instances = 200;
  std::size_t trials = 100;  // per instance, per grid point
  std::uint64_t sweep_seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency

  std::size_t encoded_count() const;
  void validate(std::span<const double> grid) const;  // throws ConfigInvalid
};

struct GridPoint {
  double grid_value = 0.0;
  std::size_t failures = 0;
  std::size_t trials = 0;
  double failure_rate = 0.0;
  double ci_lo = 0.0;  // Wilson 95% interval
  double ci_hi = 0.0;
};

struct ExperimentResult {
  ErasureExperiment exp;
  std::vector<GridPoint> points;
  double wall_seconds = 0.0;
};

/// One decode per (grid value, instance, trial); failure means decode()
/// reported RankDeficient or NotEnoughSymbols. Fully deterministic given
/// sweep_seed, independent of thread count.
ExperimentResult run_erasure_sweep(const ErasureExperiment& exp,
                                   std::span<const double> grid);

/// grid_value,k,c,q,rate,mode,instances,trials,failures,rate_est,ci_lo,ci_hi
void write_csv(std::ostream& os, const ExperimentResult& result);

/// Wilson score interval at 95%.
std::pair<double, double> wilson95(std::size_t failures, std::size_t trials);

struct CoverageStats {
  std::uint32_t k = 0;
  double r = 0.0;
  std::size_t parities = 0;                        // per seed
  std::vector<std::vector<std::uint32_t>> counts;  // [seed][u] = |P_u|
  std::vector<double> seed_means;
  std::vector<std::uint32_t> seed_mins;
  double mean = 0.0;         // grand mean of per-seed means
  double stderr_mean = 0.0;  // sd(seed means) / sqrt(seeds)
  std::uint32_t min_coverage = 0;
  double bound_lo = 0.0;  // rc log k - rc log^2 k / k
  double bound_hi = 0.0;  // rc log k

  void write_csv(std::ostream& os) const;  // seed,u,coverage
};

/// Coverage |P_u| over r*k parities, per seed; the bounds use the config's
/// log base.
CoverageStats coverage_stats(const code::CodeConfig& cfg, double r,
                             std::size_t seeds, std::uint64_t sweep_seed);

struct ConverseResult {
  std::uint32_t k = 0;
  std::uint32_t d = 0;
  double epsilon = 0.0;
  std::size_t trials = 0;
  std::size_t uncovered = 0;
  std::size_t failures = 0;
  bool implication_held = true;  // every uncovered trial was also a failure
  double uncovered_rate = 0.0;
  double failure_rate = 0.0;
  double analytic_uncovered = 0.0;  // 1 - exp(-k (1-1/k)^(k'd))
};

/// Constant-degree parities only: estimates the probability that some input
/// row is uncovered by a random (1+eps)k parity set, and the induced
/// decode-failure (rank) rate.
ConverseResult converse_check(const code::CodeConfig& cfg, std::uint32_t d_const,
                              double epsilon, std::size_t trials,
                              std::uint64_t sweep_seed);

struct CrosscheckRow {
  std::uint32_t s = 0;
  std::size_t samples = 0;
  std::size_t match_fullrank = 0;
  std::size_t match_singular = 0;
  std::size_t nomatch_fullrank = 0;  // structurally impossible; must stay 0
  std::size_t nomatch_singular = 0;
};

struct CrosscheckReport {
  std::uint32_t k = 0;
  double epsilon = 0.0;
  std::vector<CrosscheckRow> rows;

  bool forward_direction_holds() const;     // no (no-matching, full-rank) cell
  std::size_t total_matching() const;
  std::size_t total_match_singular() const;
  double singular_given_matching() const;
  void write_csv(std::ostream& os) const;
};

/// For each s: samples with s systematic columns on distinct rows plus
/// (1+eps)k - s random parity columns; tabulates matching vs rank verdicts.
CrosscheckReport matching_rank_crosscheck(const code::CodeConfig& cfg, double epsilon,
                                          std::span<const std::uint32_t> s_values,
                                          std::size_t trials_per_s,
                                          std::uint64_t sweep_seed);

}  // namespace rfc::sim

#endif
