#include "uavcov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/random/exponential_distribution.hpp>

#include "uavcov/parallel.hpp"

namespace uavcov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 53 random mantissa bits; libstdc++'s generate_canonical recomputes a log per call.
double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// d2^(-alpha/2) with a multiply-only path when 4 * alpha is a small integer.
class PathLoss {
 public:
  explicit PathLoss(double alpha) : alpha_(alpha) {
    const double k = 2.0 * alpha;
    if (k == std::round(k) && k >= 1.0 && k <= 16.0) quarter_power_ = static_cast<int>(k);
  }
  double operator()(double d2) const {
    if (quarter_power_ == 0) return std::exp(-0.5 * alpha_ * std::log(d2));
    const double q = std::sqrt(std::sqrt(d2));
    double p = 1.0;
    for (int i = 0; i < quarter_power_; ++i) p *= q;
    return 1.0 / p;
  }

 private:
  double alpha_;
  int quarter_power_ = 0;  // d2^(alpha/2) = (d2^(1/4))^(2 alpha)
};

// Drops the surviving TBS field around the UE and calls visit(omega2, theta)
// for every survivor; theta is measured from the UE-to-epicenter direction.
// Without kAllAngles, theta is only drawn (and passed) inside r_u + r_d.
template <bool kAllAngles, class Visit>
void generate_tbs(const Scenario& s, double window, Rng& rng, Visit&& visit) {
  const double mean = s.lambda0 * std::numbers::pi * window * window;
  std::poisson_distribution<long long> count_dist(mean);
  const long long count = count_dist(rng);
  const double reach = s.r_u + s.r_d;
  const double reach2 = reach * reach;
  const double w2 = window * window;
  for (long long i = 0; i < count; ++i) {
    const double omega2 = w2 * uniform01(rng);
    if (!kAllAngles && omega2 >= reach2) {
      visit(omega2, 0.0);
      continue;
    }
    const double theta = 2.0 * std::numbers::pi * uniform01(rng);
    if (omega2 < reach2) {
      const double omega = std::sqrt(omega2);
      const double r2 = s.r_u * s.r_u + omega2 - 2.0 * s.r_u * omega * std::cos(theta);
      const double r = std::sqrt(std::max(r2, 0.0));
      if (r <= s.r_d && uniform01(rng) >= eval_chi(s.chi, r, s.r_d)) continue;
    }
    visit(omega2, theta);
  }
}

// UAV horizontal offsets from the UE, as squared distance.
template <class Visit>
void generate_abs(const Scenario& s, Rng& rng, Visit&& visit) {
  for (int i = 0; i < s.n_a; ++i) {
    const double rad = s.r_d * std::sqrt(uniform01(rng));
    const double ang = 2.0 * std::numbers::pi * uniform01(rng);
    const double dx = rad * std::cos(ang) - s.r_u;
    const double dy = rad * std::sin(ang);
    visit(dx * dx + dy * dy, Point2{rad * std::cos(ang), rad * std::sin(ang)});
  }
}

// Accumulates one tier: total faded power and the nearest station.
struct TierTally {
  double total = 0.0;
  double nearest2 = kInf;
  double nearest_power = 0.0;

  void add(double dist2, double power) {
    total += power;
    if (dist2 < nearest2) {
      nearest2 = dist2;
      nearest_power = power;
    }
  }
};

// Mean received power xi * d2^(-alpha/2) of one tier.
struct Link {
  explicit Link(const TierParams& t) : xi(t.xi()), m(t.m), loss(t.alpha) {}
  double mean(double d2) const { return xi * loss(d2); }
  double faded(double d2, Rng& rng) const { return mean(d2) * sample_gain(m, rng); }

  double xi;
  int m;
  PathLoss loss;
};

TrialOutcome resolve(const Scenario& s, const TierTally& tt, const TierTally& ta,
                     double extra) {
  TrialOutcome out;
  out.nearest_tbs = std::sqrt(tt.nearest2);
  out.nearest_abs = std::sqrt(ta.nearest2);
  const double h2 = s.h * s.h;
  const double avg_t = tt.nearest2 < kInf ? Link(s.tier_t).mean(tt.nearest2) : 0.0;
  const double avg_a = ta.nearest2 < kInf ? Link(s.tier_a).mean(ta.nearest2 + h2) : 0.0;
  if (avg_t == 0.0 && avg_a == 0.0) return out;
  const bool aerial = avg_a > avg_t;
  out.served_tier = aerial ? Tier::aerial : Tier::terrestrial;
  const double signal = aerial ? ta.nearest_power : tt.nearest_power;
  out.tagged_distance = aerial ? out.nearest_abs : out.nearest_tbs;
  const double interference = std::max(tt.total + ta.total - signal, 0.0) + extra;
  out.sinr = signal / (s.sigma_n2 + interference);
  out.covered = out.sinr > s.tau;
  return out;
}

}  // namespace

double default_window(const Scenario& s) {
  return s.r_u + s.r_d + 5.0 / std::sqrt(s.lambda0);
}

double tail_interference(const Scenario& s, double window) {
  const double a = s.tier_t.alpha;
  if (a <= 2.0) return 0.0;
  return 2.0 * std::numbers::pi * s.lambda0 * s.tier_t.xi() * std::pow(window, 2.0 - a) /
         (a - 2.0);
}

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double sample_gain(int m, Rng& rng) {
  // Integer shape: Gamma(m, 1/m) is the mean of m unit exponentials.
  boost::random::exponential_distribution<double> expo;
  if (m == 1) return expo(rng);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) sum += expo(rng);
  return sum / m;
}

std::vector<Point2> sample_tbs(const Scenario& s, const MCConfig& cfg, Rng& rng) {
  const double window = cfg.r_max > 0.0 ? cfg.r_max : default_window(s);
  std::vector<Point2> pts;
  generate_tbs<true>(s, window, rng, [&](double omega2, double theta) {
    const double omega = std::sqrt(omega2);
    pts.push_back({s.r_u - omega * std::cos(theta), omega * std::sin(theta)});
  });
  return pts;
}

std::vector<Point2> sample_abs(const Scenario& s, Rng& rng) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(std::max(s.n_a, 0)));
  generate_abs(s, rng, [&](double, Point2 p) { pts.push_back(p); });
  return pts;
}

TrialOutcome evaluate_snapshot(const Scenario& s, std::span<const Point2> tbs,
                               std::span<const Point2> abs, Rng& rng, double extra) {
  TierTally tt, ta;
  const double h2 = s.h * s.h;
  const Link lt(s.tier_t), la(s.tier_a);
  for (const Point2& p : tbs) {
    const double dx = p.x - s.r_u;
    const double d2 = dx * dx + p.y * p.y;
    tt.add(d2, lt.faded(d2, rng));
  }
  for (const Point2& p : abs) {
    const double dx = p.x - s.r_u;
    const double d2 = dx * dx + p.y * p.y;
    ta.add(d2, la.faded(d2 + h2, rng));
  }
  return resolve(s, tt, ta, extra);
}

TrialOutcome run_trial(const Scenario& s, const MCConfig& cfg, Rng& rng) {
  const double window = cfg.r_max > 0.0 ? cfg.r_max : default_window(s);
  const double extra = cfg.tail_correction ? tail_interference(s, window) : 0.0;
  TierTally tt, ta;
  const double h2 = s.h * s.h;
  const Link lt(s.tier_t), la(s.tier_a);
  generate_tbs<false>(s, window, rng,
                      [&](double omega2, double) { tt.add(omega2, lt.faded(omega2, rng)); });
  generate_abs(s, rng, [&](double d2, Point2) { ta.add(d2, la.faded(d2 + h2, rng)); });
  return resolve(s, tt, ta, extra);
}

WilsonInterval wilson_interval(long long successes, long long n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = successes / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

MCEstimate estimate(const Scenario& scenario, const MCConfig& cfg, int threads) {
  const Scenario s = validate_scenario(scenario);
  if (cfg.trials <= 0) throw std::invalid_argument("trials must be positive");
  if (cfg.batch <= 0) throw std::invalid_argument("batch must be positive");
  if (cfg.r_max > 0.0 && cfg.r_max < s.r_u + s.r_d) {
    throw std::invalid_argument("r_max must cover the disaster disc (r_max >= r_u + r_d)");
  }

  struct Batch {
    long long covered = 0, served_a = 0, served_t = 0, unserved = 0;
    std::vector<double> tbs, abs;
  };
  const long long n_batches = (cfg.trials + cfg.batch - 1) / cfg.batch;
  std::vector<Batch> batches(static_cast<std::size_t>(n_batches));

  parallel_for(batches.size(), threads, [&](std::size_t b) {
    Rng rng(stream_seed(cfg.seed, b));
    const long long begin = static_cast<long long>(b) * cfg.batch;
    const long long count = std::min<long long>(cfg.batch, cfg.trials - begin);
    Batch& out = batches[b];
    if (cfg.keep_distances) {
      out.tbs.reserve(count);
      out.abs.reserve(count);
    }
    for (long long i = 0; i < count; ++i) {
      const TrialOutcome t = run_trial(s, cfg, rng);
      out.covered += t.covered;
      if (!t.served_tier) {
        ++out.unserved;
      } else if (*t.served_tier == Tier::aerial) {
        ++out.served_a;
      } else {
        ++out.served_t;
      }
      if (cfg.keep_distances) {
        out.tbs.push_back(t.nearest_tbs);
        out.abs.push_back(t.nearest_abs);
      }
    }
  });

  MCEstimate est;
  est.window = cfg.r_max > 0.0 ? cfg.r_max : default_window(s);
  for (Batch& b : batches) {
    est.covered += b.covered;
    est.served_a += b.served_a;
    est.served_t += b.served_t;
    est.unserved += b.unserved;
    est.nearest_tbs.insert(est.nearest_tbs.end(), b.tbs.begin(), b.tbs.end());
    est.nearest_abs.insert(est.nearest_abs.end(), b.abs.begin(), b.abs.end());
  }
  const double n = static_cast<double>(cfg.trials);
  CoverageResult& r = est.result;
  r.method = Method::monte_carlo;
  r.p_c = est.covered / n;
  r.assoc_a = est.served_a / n;
  r.assoc_t = est.served_t / n;
  const WilsonInterval ci = wilson_interval(est.covered, cfg.trials);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  r.trials = cfg.trials;
  return est;
}

}  // namespace uavcov
