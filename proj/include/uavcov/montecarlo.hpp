#pragma once
// Generative simulation of the network, used as the independent check on the
// analytic coverage path.
//
// Each trial drops a homogeneous PPP of intensity lambda0 on a disc of radius
// r_max centered on the UE, thins it inside the disaster disc with
// probability chi(r), drops n_a UAVs uniformly over the disaster disc at
// altitude h, draws unit-mean gamma fading for every link, associates by
// maximum average received power and tallies SINR > tau. The window covers the
// whole disaster disc; the homogeneous field outside it contributes its mean
// interference 2 pi lambda0 xi_T r_max^(2 - alpha_T) / (alpha_T - 2).

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "uavcov/coverage.hpp"
#include "uavcov/scenario.hpp"

namespace uavcov {

using Rng = std::mt19937_64;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct MCConfig {
  long long trials = 100000;
  double r_max = 0.0;  ///< window radius around the UE; 0 selects default_window()
  std::uint64_t seed = 1;
  int batch = 2000;    ///< trials per RNG stream
  bool keep_distances = false;
  bool tail_correction = true;
};

struct TrialOutcome {
  bool covered = false;
  std::optional<Tier> served_tier;  ///< empty when no station exists at all
  double sinr = 0.0;
  double tagged_distance = 0.0;     ///< horizontal distance to the serving station
  double nearest_tbs = 0.0;         ///< +inf when no TBS was drawn
  double nearest_abs = 0.0;         ///< +inf when n_a = 0
};

struct MCEstimate {
  CoverageResult result;  ///< method monte_carlo, Wilson 95% interval, association frequencies
  long long covered = 0;
  long long served_a = 0;
  long long served_t = 0;
  long long unserved = 0;
  double window = 0.0;
  std::vector<double> nearest_tbs;  ///< filled when keep_distances
  std::vector<double> nearest_abs;
};

/// r_u + r_d + 5 / sqrt(lambda0): the whole disaster disc plus an intact ring
/// holding ~80 expected TBSs beyond the farthest disaster point.
double default_window(const Scenario& s);

/// Mean interference of the intact TBS field beyond `window` from the UE.
double tail_interference(const Scenario& s, double window);

/// SplitMix64 finalizer of master + (stream + 1) * golden-ratio increment.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream);

/// Unit-mean Gamma(m, 1/m) power gain.
double sample_gain(int m, Rng& rng);

/// Surviving TBSs in epicenter coordinates (UE at (r_u, 0)).
std::vector<Point2> sample_tbs(const Scenario& s, const MCConfig& cfg, Rng& rng);
/// Horizontal UAV positions in epicenter coordinates.
std::vector<Point2> sample_abs(const Scenario& s, Rng& rng);

/// One SINR draw for fixed station positions.
TrialOutcome evaluate_snapshot(const Scenario& s, std::span<const Point2> tbs,
                               std::span<const Point2> abs, Rng& rng,
                               double extra_interference = 0.0);

TrialOutcome run_trial(const Scenario& s, const MCConfig& cfg, Rng& rng);

/// Deterministic for a fixed (seed, batch, trials) regardless of `threads`.
MCEstimate estimate(const Scenario& s, const MCConfig& cfg, int threads = 1);

struct WilsonInterval {
  double low;
  double high;
};
WilsonInterval wilson_interval(long long successes, long long n, double z = 1.959963984540054);

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and `cdf`.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace uavcov
