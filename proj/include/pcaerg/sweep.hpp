#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcaerg/condition.hpp"
#include "pcaerg/params.hpp"

namespace pcaerg {

/// One evaluated parameter: either a CA code with an error rate or a raw quadruplet.
struct SweepRow {
  std::optional<CaCode> code;
  std::optional<double> eps;
  ParamQuad<double> params;
  // Empty when the gamma table hit a degenerate denominator; `error` then names the cell.
  std::optional<ConditionReport<double>> report;
  std::string error;

  friend bool operator==(const SweepRow& a, const SweepRow& b);
};

SweepRow evaluate_row(const ParamQuad<double>& q);
SweepRow evaluate_row(CaCode code, double eps);

/// One row per (code, eps), codes outermost. Every eps must lie in (0, 1/2].
/// `jobs` threads split the codes; row order does not depend on it.
std::vector<SweepRow> epsilon_sweep(const std::vector<CaCode>& codes, const std::vector<double>& grid,
                                    unsigned jobs = 1);

std::vector<CaCode> all_ca_codes();
/// 0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5
std::vector<double> default_eps_grid();

/// Smallest eps in (0, 1/2] at which the criterion starts to hold for a CA with errors.
struct Crossover {
  CaCode code;
  bool holds_at_min = false;  // already holds at the smallest scanned eps
  std::optional<double> eps;  // bisected switch point, if any
  int sign_changes = 0;       // on the scan grid; 1 for a single threshold
};

Crossover crossover_epsilon(CaCode code, int scan_points = 2000, double tolerance = 1e-13);

/// Wilson score interval for a binomial proportion.
struct Interval {
  double low = 0.0;
  double high = 0.0;
};
Interval wilson_interval(std::uint64_t hits, std::uint64_t samples, double z = 1.959963984540054);

/// Monte Carlo share of (0,1)^4 on which the criterion holds.
struct VolumeEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t degenerate = 0;  // draws with a degenerate gamma cell, counted as misses
  double fraction = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::uint64_t seed = 0;

  friend bool operator==(const VolumeEstimate&, const VolumeEstimate&) = default;
};

/// Samples are drawn in fixed chunks, each from its own sub-stream of `seed`,
/// so the result does not depend on `jobs`.
VolumeEstimate volume_estimate(std::uint64_t samples, std::uint64_t seed, unsigned jobs = 1);

inline constexpr std::uint64_t kVolumeChunk = 1u << 16;

struct RenewalOptions {
  std::int64_t initial_gap = 3;
  std::int64_t target_gap = 100;
  std::uint64_t max_attempts = 1000;
  std::uint64_t horizon_per_attempt = 1'000'000;
};

struct RenewalSummary {
  std::uint64_t runs = 0;
  std::uint64_t censored = 0;           // runs that used every attempt without success
  std::vector<std::uint64_t> attempts;  // per run; equals max_attempts when censored
  std::vector<std::uint64_t> total_time;
  double median_attempts = 0.0;
  double mean_attempts = 0.0;
  double mean_total_time = 0.0;
};

/// Spawns islands one after another until one grows to the target gap,
/// recording attempts and elapsed steps. Requires r > 0.
RenewalSummary renewal_experiment(const DerivedParams<double>& d, std::uint64_t runs, std::uint64_t seed,
                                  const RenewalOptions& options = {});

/// Row of a CA 1000 refined sweep.
struct RefinedRow {
  double eps = 0.0;
  double mean_s1 = 0.0;
  double mean_00 = 0.0;
  double drift_bound = 0.0;
  double empirical_drift = 0.0;
  double std_error = 0.0;
};

std::vector<RefinedRow> refined_sweep(const std::vector<double>& grid, std::uint64_t steps, std::uint64_t burn_in,
                                      std::uint64_t seed);

}  // namespace pcaerg
