#include "pcaerg/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "pcaerg/boundary_walk.hpp"
#include "pcaerg/refined.hpp"
#include "pcaerg/rng.hpp"

namespace pcaerg {

namespace {

template <typename Fn>
void run_workers(unsigned jobs, std::size_t tasks, Fn&& worker) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, tasks));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

bool same_report(const ConditionReport<double>& a, const ConditionReport<double>& b) {
  return a.gamma0 == b.gamma0 && a.gamma1 == b.gamma1 && a.lhs == b.lhs && a.rhs == b.rhs && a.holds == b.holds &&
         a.drift_bound == b.drift_bound;
}

}  // namespace

bool operator==(const SweepRow& a, const SweepRow& b) {
  if (a.code != b.code || a.eps != b.eps || !(a.params == b.params) || a.error != b.error) return false;
  if (a.report.has_value() != b.report.has_value()) return false;
  return !a.report || same_report(*a.report, *b.report);
}

SweepRow evaluate_row(const ParamQuad<double>& q) {
  SweepRow row;
  row.params = q;
  try {
    row.report = condition_check(q);
  } catch (const DegenerateDenominator& e) {
    row.error = e.cell();
  }
  return row;
}

SweepRow evaluate_row(CaCode code, double eps) {
  SweepRow row = evaluate_row(ca_with_error(code, eps));
  row.code = code;
  row.eps = eps;
  return row;
}

std::vector<SweepRow> epsilon_sweep(const std::vector<CaCode>& codes, const std::vector<double>& grid,
                                    unsigned jobs) {
  for (double eps : grid) {
    if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("sweep grid must lie in (0, 1/2]");
  }
  std::vector<SweepRow> rows(codes.size() * grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < codes.size(); c = next++) {
      for (std::size_t e = 0; e < grid.size(); ++e) rows[c * grid.size() + e] = evaluate_row(codes[c], grid[e]);
    }
  };
  run_workers(jobs, codes.size(), worker);
  return rows;
}

std::vector<CaCode> all_ca_codes() {
  std::vector<CaCode> codes;
  for (std::uint8_t b = 0; b < 16; ++b) codes.emplace_back(b);
  return codes;
}

std::vector<double> default_eps_grid() { return {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5}; }

Crossover crossover_epsilon(CaCode code, int scan_points, double tolerance) {
  auto holds = [&](double eps) { return condition_check(ca_with_error(code, eps)).holds; };
  Crossover out;
  out.code = code;
  const double step = 0.5 / scan_points;
  double prev_eps = step;
  bool prev = holds(prev_eps);
  out.holds_at_min = prev;
  for (int k = 2; k <= scan_points; ++k) {
    const double eps = step * k;
    const bool now = holds(eps);
    if (now != prev) {
      ++out.sign_changes;
      if (now && !out.eps) {
        double lo = prev_eps, hi = eps;
        while (hi - lo > tolerance) {
          const double mid = 0.5 * (lo + hi);
          (holds(mid) ? hi : lo) = mid;
        }
        out.eps = hi;
      }
    }
    prev = now;
    prev_eps = eps;
  }
  return out;
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t samples, double z) {
  if (samples == 0) return {0.0, 1.0};
  const double n = static_cast<double>(samples);
  const double phat = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {

struct ChunkTally {
  std::uint64_t hits = 0;
  std::uint64_t degenerate = 0;
};

ChunkTally volume_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t count) {
  Rng rng(substream_seed(seed, chunk));
  ChunkTally tally;
  for (std::uint64_t k = 0; k < count; ++k) {
    const double a = rng.open_uniform(), b = rng.open_uniform(), c = rng.open_uniform(), d = rng.open_uniform();
    try {
      if (condition_check(ParamQuad<double>(a, b, c, d)).holds) ++tally.hits;
    } catch (const DegenerateDenominator&) {
      ++tally.degenerate;
    }
  }
  return tally;
}

}  // namespace

VolumeEstimate volume_estimate(std::uint64_t samples, std::uint64_t seed, unsigned jobs) {
  if (samples == 0) throw InvalidInput("volume estimate needs at least one sample");
  const std::uint64_t chunks = (samples + kVolumeChunk - 1) / kVolumeChunk;
  std::vector<ChunkTally> tallies(chunks);
  auto chunk_size = [&](std::uint64_t c) { return std::min(kVolumeChunk, samples - c * kVolumeChunk); };

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) tallies[c] = volume_chunk(seed, c, chunk_size(c));
  };
  run_workers(jobs, chunks, worker);

  VolumeEstimate est;
  est.samples = samples;
  est.seed = seed;
  for (const auto& t : tallies) {
    est.hits += t.hits;
    est.degenerate += t.degenerate;
  }
  est.fraction = static_cast<double>(est.hits) / static_cast<double>(samples);
  const Interval ci = wilson_interval(est.hits, samples);
  est.ci95_low = ci.low;
  est.ci95_high = ci.high;
  return est;
}

RenewalSummary renewal_experiment(const DerivedParams<double>& d, std::uint64_t runs, std::uint64_t seed,
                                  const RenewalOptions& options) {
  if (!(d.r > 0.0)) throw DivisionByZero("renewal_experiment requires r > 0");
  RenewalSummary summary;
  summary.runs = runs;
  for (std::uint64_t run = 0; run < runs; ++run) {
    Rng rng(substream_seed(seed, run));
    std::uint64_t attempts = 0, elapsed = 0;
    bool success = false;
    while (attempts < options.max_attempts && !success) {
      ++attempts;
      const IslandRun island =
          run_island(d, options.initial_gap, options.horizon_per_attempt, options.target_gap, rng);
      elapsed += island.steps;
      success = island.outcome == IslandOutcome::ReachedTarget;
    }
    if (!success) ++summary.censored;
    summary.attempts.push_back(attempts);
    summary.total_time.push_back(elapsed);
  }
  if (runs > 0) {
    std::vector<std::uint64_t> sorted = summary.attempts;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    summary.median_attempts = sorted.size() % 2 ? static_cast<double>(sorted[mid])
                                                : 0.5 * static_cast<double>(sorted[mid - 1] + sorted[mid]);
    const double n = static_cast<double>(runs);
    summary.mean_attempts = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
    summary.mean_total_time =
        std::accumulate(summary.total_time.begin(), summary.total_time.end(), 0.0) / n;
  }
  return summary;
}

std::vector<RefinedRow> refined_sweep(const std::vector<double>& grid, std::uint64_t steps, std::uint64_t burn_in,
                                      std::uint64_t seed) {
  std::vector<RefinedRow> rows;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double eps = grid[k];
    RefinedRow row{eps, mean_s1(eps), mean_00(eps), refined_drift_bound(eps), 0.0, 0.0};
    if (steps > 0) {
      const DriftEstimate est = simulate_refined(eps, steps, burn_in, substream_seed(seed, k));
      row.empirical_drift = est.mean;
      row.std_error = est.std_error;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pcaerg
