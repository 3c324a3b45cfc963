#include "rfc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rfc/codec.hpp"
#include "rfc/error.hpp"
#include "rfc/gflinalg.hpp"
#include "rfc/rng.hpp"

namespace rfc::sim {

namespace {

// Stream tags to keep derived keys from distinct purposes apart.
constexpr std::uint64_t kTagInstance = 0x1A57A4CEull;
constexpr std::uint64_t kTagTrial = 0x7121A1ull;
constexpr std::uint64_t kTagSource = 0x50ECEull;
constexpr std::uint64_t kTagSeed = 0xC0FFEEull;

void parallel_for(std::size_t jobs, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  if (threads <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) fn(j);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t j = next.fetch_add(1);
        if (j >= jobs) return;
        fn(j);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::size_t ErasureExperiment::encoded_count() const {
  return static_cast<std::size_t>(std::llround(cfg.k / rate));
}

void ErasureExperiment::validate(std::span<const double> grid) const {
  cfg.validate();
  if (!(rate > 0.0) || rate > 1.0) raise(Errc::ConfigInvalid, "rate must be in (0, 1]");
  if (instances == 0 || trials == 0) raise(Errc::ConfigInvalid, "counts must be >= 1");
  if (grid.empty()) raise(Errc::ConfigInvalid, "grid must be nonempty");
  const std::size_t n = encoded_count();
  for (double g : grid) {
    if (mode == SweepMode::IidErasure) {
      if (g < 0.0 || g >= 1.0) raise(Errc::ConfigInvalid, "p_e must be in [0, 1)");
    } else {
      if (g < 0.0) raise(Errc::ConfigInvalid, "epsilon must be >= 0");
      const auto want = static_cast<std::size_t>(
          std::ceil((1.0 + g) * static_cast<double>(cfg.k)));
      if (want > n) {
        raise(Errc::ConfigInvalid, "(1+eps)k exceeds the encoded count n");
      }
    }
  }
}

std::pair<double, double> wilson95(std::size_t failures, std::size_t trials) {
  if (trials == 0) return {0.0, 0.0};
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  double lo = std::max(0.0, center - half);
  double hi = std::min(1.0, center + half);
  if (failures == 0) lo = 0.0;
  if (failures == trials) hi = 1.0;
  return {lo, hi};
}

ExperimentResult run_erasure_sweep(const ErasureExperiment& exp,
                                   std::span<const double> grid) {
  exp.validate(grid);
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t n = exp.encoded_count();
  const std::size_t jobs = grid.size() * exp.instances;
  std::vector<std::size_t> failures_per_job(jobs, 0);

  parallel_for(jobs, exp.threads, [&](std::size_t job) {
    const std::size_t gi = job / exp.instances;
    const std::size_t inst = job % exp.instances;
    const double grid_value = grid[gi];

    code::CodeConfig cfg = exp.cfg;
    cfg.master_seed = rng::derive_key({exp.sweep_seed, gi, inst, kTagInstance});

    // Tiny payloads: one field element per symbol. The failure verdict is
    // payload-width independent.
    const unsigned eb = cfg.field->element_bytes();
    codec::SourceBlock source;
    source.k = cfg.k;
    source.symbol_size = eb;
    source.data.resize(static_cast<std::size_t>(cfg.k) * eb);
    {
      rng::CounterRng src(cfg.master_seed, kTagSource);
      for (auto& byte : source.data) byte = static_cast<std::uint8_t>(src.below(256));
    }

    std::vector<codec::EncodedSymbol> stream;
    stream.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      stream.push_back(codec::encode_symbol(cfg, source, code::ColumnId{j}));
    }

    std::size_t failures = 0;
    std::vector<codec::EncodedSymbol> survivors;
    std::vector<std::uint32_t> indices(n);
    for (std::size_t trial = 0; trial < exp.trials; ++trial) {
      rng::CounterRng rng(
          rng::derive_key({exp.sweep_seed, gi, inst, trial, kTagTrial}));
      survivors.clear();
      if (exp.mode == SweepMode::IidErasure) {
        for (std::size_t j = 0; j < n; ++j) {
          if (rng.unit() >= grid_value) survivors.push_back(stream[j]);
        }
      } else {
        const auto want = static_cast<std::size_t>(
            std::ceil((1.0 + grid_value) * static_cast<double>(cfg.k)));
        std::iota(indices.begin(), indices.end(), 0u);
        for (std::size_t j = 0; j < want; ++j) {
          const std::size_t pick = j + rng.below(n - j);
          std::swap(indices[j], indices[pick]);
          survivors.push_back(stream[indices[j]]);
        }
      }

      const codec::DecodeResult res = codec::decode(cfg, survivors);
      if (!res.ok()) {
        ++failures;
      } else if (res.block->data != source.data) {
        throw std::logic_error("decode returned success with wrong payload");
      }
    }
    failures_per_job[job] = failures;
  });

  ExperimentResult result;
  result.exp = exp;
  result.points.reserve(grid.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    GridPoint p;
    p.grid_value = grid[gi];
    p.trials = exp.instances * exp.trials;
    for (std::size_t inst = 0; inst < exp.instances; ++inst) {
      p.failures += failures_per_job[gi * exp.instances + inst];
    }
    p.failure_rate = static_cast<double>(p.failures) / static_cast<double>(p.trials);
    std::tie(p.ci_lo, p.ci_hi) = wilson95(p.failures, p.trials);
    result.points.push_back(p);
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

void write_csv(std::ostream& os, const ExperimentResult& result) {
  os << "grid_value,k,c,q,rate,mode,instances,trials,failures,rate_est,ci_lo,ci_hi\n";
  const auto& e = result.exp;
  const char* mode = (e.mode == SweepMode::IidErasure) ? "iid_erasure" : "fixed_subset";
  for (const auto& p : result.points) {
    os << format_double(p.grid_value) << ',' << e.cfg.k << ','
       << format_double(e.cfg.c()) << ',' << e.cfg.field->q() << ','
       << format_double(e.rate) << ',' << mode << ',' << e.instances << ','
       << e.trials << ',' << p.failures << ',' << format_double(p.failure_rate)
       << ',' << format_double(p.ci_lo) << ',' << format_double(p.ci_hi) << '\n';
  }
}

CoverageStats coverage_stats(const code::CodeConfig& cfg, double r,
                             std::size_t seeds, std::uint64_t sweep_seed) {
  cfg.validate();
  if (!(r > 0.0)) raise(Errc::ConfigInvalid, "r must be > 0");
  if (seeds == 0) raise(Errc::ConfigInvalid, "seeds must be >= 1");

  CoverageStats stats;
  stats.k = cfg.k;
  stats.r = r;
  stats.parities = static_cast<std::size_t>(std::llround(r * cfg.k));

  stats.counts.assign(seeds, std::vector<std::uint32_t>(cfg.k, 0));
  for (std::size_t s = 0; s < seeds; ++s) {
    code::CodeConfig inst = cfg;
    inst.master_seed = rng::derive_key({sweep_seed, s, kTagSeed});
    auto& counts = stats.counts[s];
    for (std::size_t j = 0; j < stats.parities; ++j) {
      const code::ParityColumn col =
          code::parity_column(inst, code::ColumnId{cfg.k + j});
      for (const auto& e : col.entries) ++counts[e.row];
    }
  }

  stats.seed_means.resize(seeds);
  stats.seed_mins.resize(seeds);
  stats.min_coverage = UINT32_MAX;
  for (std::size_t s = 0; s < seeds; ++s) {
    const auto& counts = stats.counts[s];
    const double sum = std::accumulate(counts.begin(), counts.end(), 0.0);
    stats.seed_means[s] = sum / cfg.k;
    stats.seed_mins[s] = *std::min_element(counts.begin(), counts.end());
    stats.min_coverage = std::min(stats.min_coverage, stats.seed_mins[s]);
  }
  stats.mean = std::accumulate(stats.seed_means.begin(), stats.seed_means.end(), 0.0) /
               static_cast<double>(seeds);
  double var = 0.0;
  for (double m : stats.seed_means) var += (m - stats.mean) * (m - stats.mean);
  var = (seeds > 1) ? var / static_cast<double>(seeds - 1) : 0.0;
  stats.stderr_mean = std::sqrt(var / static_cast<double>(seeds));

  const double lk = (cfg.log_base == code::LogBase::Natural)
                        ? std::log(static_cast<double>(cfg.k))
                        : std::log2(static_cast<double>(cfg.k));
  const double rc = r * cfg.c();
  stats.bound_hi = rc * lk;
  stats.bound_lo = rc * lk - rc * lk * lk / static_cast<double>(cfg.k);
  return stats;
}

void CoverageStats::write_csv(std::ostream& os) const {
  os << "seed,u,coverage\n";
  for (std::size_t s = 0; s < counts.size(); ++s) {
    for (std::uint32_t u = 0; u < counts[s].size(); ++u) {
      os << s << ',' << u << ',' << counts[s][u] << '\n';
    }
  }
}

ConverseResult converse_check(const code::CodeConfig& cfg, std::uint32_t d_const,
                              double epsilon, std::size_t trials,
                              std::uint64_t sweep_seed) {
  cfg.validate();
  if (d_const < 1) raise(Errc::ConfigInvalid, "d_const must be >= 1");
  if (epsilon < 0.0) raise(Errc::ConfigInvalid, "epsilon must be >= 0");

  ConverseResult res;
  res.k = cfg.k;
  res.d = d_const;
  res.epsilon = epsilon;
  res.trials = trials;

  const auto kprime = static_cast<std::size_t>(
      std::ceil((1.0 + epsilon) * static_cast<double>(cfg.k)));

  for (std::size_t trial = 0; trial < trials; ++trial) {
    code::CodeConfig inst = cfg;
    inst.master_seed = rng::derive_key({sweep_seed, trial, kTagTrial});

    gflinalg::GfMatrix m(inst.field, inst.k, kprime);
    std::vector<bool> covered(inst.k, false);
    for (std::size_t j = 0; j < kprime; ++j) {
      const code::ParityColumn col =
          code::parity_column_d(inst, code::ColumnId{inst.k + j}, d_const);
      for (const auto& e : col.entries) {
        m.at(e.row, j) = e.coeff;
        covered[e.row] = true;
      }
    }
    const bool all_covered =
        std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
    const bool full_rank = gflinalg::rank(std::move(m)) == inst.k;
    if (!all_covered) ++res.uncovered;
    if (!full_rank) ++res.failures;
    if (!all_covered && full_rank) res.implication_held = false;
  }

  res.uncovered_rate = static_cast<double>(res.uncovered) / trials;
  res.failure_rate = static_cast<double>(res.failures) / trials;

  const double k = static_cast<double>(cfg.k);
  const double balls = static_cast<double>(kprime) * d_const;
  res.analytic_uncovered = 1.0 - std::exp(-k * std::pow(1.0 - 1.0 / k, balls));
  return res;
}

bool CrosscheckReport::forward_direction_holds() const {
  for (const auto& r : rows) {
    if (r.nomatch_fullrank != 0) return false;
  }
  return true;
}

std::size_t CrosscheckReport::total_matching() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.match_fullrank + r.match_singular;
  return n;
}

std::size_t CrosscheckReport::total_match_singular() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.match_singular;
  return n;
}

double CrosscheckReport::singular_given_matching() const {
  const std::size_t m = total_matching();
  return m == 0 ? 0.0 : static_cast<double>(total_match_singular()) / m;
}

void CrosscheckReport::write_csv(std::ostream& os) const {
  os << "s,samples,match_fullrank,match_singular,nomatch_fullrank,nomatch_singular\n";
  for (const auto& r : rows) {
    os << r.s << ',' << r.samples << ',' << r.match_fullrank << ','
       << r.match_singular << ',' << r.nomatch_fullrank << ','
       << r.nomatch_singular << '\n';
  }
}

CrosscheckReport matching_rank_crosscheck(const code::CodeConfig& cfg, double epsilon,
                                          std::span<const std::uint32_t> s_values,
                                          std::size_t trials_per_s,
                                          std::uint64_t sweep_seed) {
  cfg.validate();
  if (epsilon < 0.0) raise(Errc::ConfigInvalid, "epsilon must be >= 0");

  const auto kprime = static_cast<std::size_t>(
      std::ceil((1.0 + epsilon) * static_cast<double>(cfg.k)));

  CrosscheckReport report;
  report.k = cfg.k;
  report.epsilon = epsilon;

  for (std::uint32_t s : s_values) {
    if (s > cfg.k || s > kprime) {
      raise(Errc::ConfigInvalid, "s exceeds k or (1+eps)k");
    }
    CrosscheckRow row;
    row.s = s;
    row.samples = trials_per_s;

    for (std::size_t trial = 0; trial < trials_per_s; ++trial) {
      code::CodeConfig inst = cfg;
      inst.master_seed = rng::derive_key({sweep_seed, s, trial, kTagTrial});
      rng::CounterRng pick(inst.master_seed, kTagSeed);

      // s systematic columns on distinct rows.
      std::vector<std::uint32_t> rows_perm(cfg.k);
      std::iota(rows_perm.begin(), rows_perm.end(), 0u);
      for (std::uint32_t j = 0; j < s; ++j) {
        const std::size_t swap_with = j + pick.below(cfg.k - j);
        std::swap(rows_perm[j], rows_perm[swap_with]);
      }

      gflinalg::GfMatrix m(inst.field, cfg.k, kprime);
      for (std::uint32_t j = 0; j < s; ++j) m.at(rows_perm[j], j) = 1;
      for (std::size_t j = s; j < kprime; ++j) {
        const code::ParityColumn col =
            code::parity_column(inst, code::ColumnId{cfg.k + (j - s)});
        for (const auto& e : col.entries) m.at(e.row, j) = e.coeff;
      }

      const bool matched =
          gflinalg::max_matching(gflinalg::support_graph(m)) == cfg.k;
      const bool full_rank = gflinalg::rank(m) == cfg.k;
      if (matched && full_rank) ++row.match_fullrank;
      if (matched && !full_rank) ++row.match_singular;
      if (!matched && full_rank) ++row.nomatch_fullrank;
      if (!matched && !full_rank) ++row.nomatch_singular;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace rfc::sim
