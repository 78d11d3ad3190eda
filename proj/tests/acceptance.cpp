// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uavcov/association.hpp"
#include "uavcov/coverage.hpp"
#include "uavcov/distances.hpp"
#include "uavcov/interference.hpp"
#include "uavcov/montecarlo.hpp"
#include "uavcov/parallel.hpp"
#include "uavcov/scenario.hpp"

using namespace uavcov;

namespace {

constexpr double pi = std::numbers::pi;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [fail: " << what << "]";
    }
  }
};

int failures = 0;

void report(const char* id, Verdict& v) {
  std::printf("%s %s%s\n", id, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
  std::fflush(stdout);
  failures += !v.pass;
}

struct Platform {
  const char* name;
  Scenario base;
};

std::vector<Platform> platforms() { return {{"lap", lap_preset()}, {"hap", hap_preset()}}; }

Scenario at(Scenario s, double r_u, int n_a, ResilienceProfile chi) {
  s.r_u = r_u;
  s.n_a = n_a;
  s.chi = chi;
  return s;
}

const ResilienceProfile kDestroyed{ProfileFamily::constant, 0.0};
const ResilienceProfile kIntact{ProfileFamily::constant, 1.0};
const QuadConfig kTight{1e-11, 1e-300, 400};

struct KsRecord {
  std::string label;
  double ks_t;
  double ks_a;  // NaN when there are no UAVs
};

// AC1 and AC5 share the simulation runs.
void analytic_vs_simulation() {
  Verdict v1, v5;
  std::vector<KsRecord> ks;
  double worst1 = 0.0, worst5 = 0.0;
  const int threads = thread_count_from_env();
  for (const Platform& p : platforms()) {
    for (double frac : {0.0, 0.5, 1.2}) {
      const auto t0 = std::chrono::steady_clock::now();
      for (int n_a : {0, 1, 3}) {
        const Scenario s = at(p.base, frac * p.base.r_d, n_a, kDestroyed);
        const double analytic = total_coverage(s, Method::approximate).p_c;
        MCConfig cfg;
        cfg.trials = 100000;
        cfg.seed = 1000 + n_a;
        cfg.keep_distances = true;
        const MCEstimate e = estimate(s, cfg, threads);
        const double hw = 0.5 * (*e.result.ci_high - *e.result.ci_low);
        const double diff = std::abs(analytic - e.result.p_c);
        const double tol = std::max(0.015, hw);
        std::ostringstream label;
        label << p.name << " r_u=" << s.r_u << " n_a=" << n_a;
        std::printf("  AC1 %s analytic=%.5f mc=%.5f diff=%.5f tol=%.5f\n", label.str().c_str(),
                    analytic, e.result.p_c, diff, tol);
        worst1 = std::max(worst1, diff / tol);
        v1.require(diff <= tol, label.str());

        const DistanceLaws laws(s);
        KsRecord rec{label.str(), ks_statistic(e.nearest_tbs, [&](double z) { return laws.cdf_zt(z); }),
                     std::nan("")};
        if (n_a > 0) rec.ks_a = ks_statistic(e.nearest_abs, [&](double z) { return laws.cdf_za(z); });
        std::printf("  AC5 %s ks_zt=%.5f ks_za=%.5f\n", rec.label.c_str(), rec.ks_t, rec.ks_a);
        worst5 = std::max(worst5, rec.ks_t);
        v5.require(rec.ks_t < 0.01, rec.label + " Z_T");
        if (n_a > 0) {
          worst5 = std::max(worst5, rec.ks_a);
          v5.require(rec.ks_a < 0.01, rec.label + " Z_A");
        }
      }
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("  AC1 %s r_u=%g preset runtime %.1f s\n", p.name, frac * p.base.r_d, secs);
      v1.require(secs < 180.0, std::string(p.name) + " runtime budget");
    }
  }
  v1.detail << " worst diff/tol=" << worst1;
  v5.detail << " worst KS=" << worst5;
  report("AC1", v1);
  report("AC5", v5);
}

void exactness_collapse() {
  Verdict v;
  double worst = 0.0;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Platform& p : platforms()) {
    for (double frac : {0.0, 0.5, 1.2}) {
      Scenario s = at(p.base, frac * p.base.r_d, 3, kDestroyed);
      s.tier_a.m = 1;
      s.tier_t.m = 1;
      const DistanceLaws laws(s);
      for (int i = 0; i < 50; ++i) {
        const Tier b = i % 2 == 0 ? Tier::aerial : Tier::terrestrial;
        const auto sup = laws.support_a();
        const double z = b == Tier::aerial ? sup.lo + (sup.hi - sup.lo) * u(rng)
                                           : (s.r_u + s.r_d + 2.0 / std::sqrt(s.lambda0)) * u(rng);
        const double d = std::abs(cond_cov_exact(laws, b, z) - cond_cov_approx(laws, b, z));
        worst = std::max(worst, d);
      }
    }
  }
  v.require(worst <= 1e-6, "max |exact - approx| > 1e-6");
  v.detail << " max |exact-approx|=" << worst;
  report("AC2", v);
}

void homogeneous_reductions() {
  Verdict v;
  double worst = 0.0;
  for (const Platform& p : platforms()) {
    const Scenario s = p.base;
    const DistanceLaws intact(at(s, 0.0, 1, kIntact));
    const DistanceLaws annulus(at(s, 0.0, 1, kDestroyed));
    for (int i = 1; i <= 100; ++i) {
      const double z = 3.0 * s.r_d * i / 100.0;
      const double hom = -std::expm1(-s.lambda0 * pi * z * z);
      const double ann = z <= s.r_d ? 0.0 : -std::expm1(-s.lambda0 * pi * (z * z - s.r_d * s.r_d));
      worst = std::max({worst, std::abs(intact.cdf_zt(z) - hom), std::abs(annulus.cdf_zt(z) - ann)});
    }
  }
  v.require(worst <= 1e-8, "cdf_zt deviates");
  v.detail << " max deviation=" << worst;
  report("AC3", v);
}

void complementarity() {
  Verdict v;
  double worst = 0.0;
  for (const Platform& p : platforms()) {
    for (double r_d : {0.3 * p.base.r_d, p.base.r_d, 3.0 * p.base.r_d}) {
      for (double frac : {0.0, 0.5, 1.5}) {
        for (int n_a : {0, 2, 6}) {
          Scenario s = at(p.base, frac * r_d, n_a, kDestroyed);
          s.r_d = r_d;
          const AssociationReport r = association_report(DistanceLaws(s));
          worst = std::max(worst, std::abs(r.a_a + r.a_t - 1.0));
        }
      }
    }
  }
  v.require(worst <= 1e-6, "A_A + A_T off by more than 1e-6");
  v.detail << " max |A_A+A_T-1|=" << worst;
  report("AC4", v);
}

void intact_high_altitude_band() {
  Verdict v;
  for (int n_a : {0, 1}) {
    const Scenario s = at(hap_preset(), 0.0, n_a, kIntact);
    const double pc = total_coverage(s, Method::approximate).p_c;
    v.detail << " n_a=" << n_a << " P_c=" << pc;
    v.require(pc > 0.7 && pc < 0.8, "n_a=" + std::to_string(n_a));
  }
  report("AC6", v);
}

void destroyed_collapse() {
  Verdict v;
  double prev = 2.0;
  for (double r_d : {100.0, 300.0, 1000.0, 3000.0}) {
    Scenario s = at(lap_preset(), 0.0, 0, kDestroyed);
    s.r_d = r_d;
    const double pc = total_coverage(s, Method::approximate).p_c;
    v.detail << " P_c(" << r_d << ")=" << pc;
    if (r_d == 1000.0) v.require(pc < 0.05, "P_c(1 km) >= 0.05");
    v.require(pc < prev, "not decreasing at r_d=" + std::to_string(r_d));
    prev = pc;
  }
  report("AC7", v);
}

void derivative_check() {
  Verdict v;
  double worst = 0.0;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ProfileFamily fams[] = {ProfileFamily::constant, ProfileFamily::linear, ProfileFamily::sqrt,
                                ProfileFamily::exponential};
  int redrawn = 0;
  for (int i = 0; i < 20;) {
    const Platform p = platforms()[i % 2];
    const Scenario s = at(p.base, 1.5 * p.base.r_d * u(rng), 1 + i % 4,
                          {fams[(i / 2) % 4], 0.5 * u(rng)});
    const DistanceLaws laws(s, kTight);
    const Tier b = (i / 4) % 2 == 0 ? Tier::aerial : Tier::terrestrial;
    const auto sup = laws.support_a();
    const double z = b == Tier::aerial ? sup.lo + (sup.hi - sup.lo) * (0.05 + 0.9 * u(rng))
                                       : (s.r_u + s.r_d) * (0.05 + u(rng));
    const LaplaceEval e(laws, b, z);
    const double mu = mu_b(s, b, z);
    const auto d = e.lap_total_derivs(mu, 2);
    // An underflowed transform has no meaningful relative derivative error.
    if (!(d[0] > 1e-250)) {
      ++redrawn;
      continue;
    }
    // Step on the scale over which log L changes by O(1e-2), then Richardson, O(h^4).
    const double h = 1e-2 * mu / std::max(1.0, mu * std::abs(d[1] / d[0]));
    auto fd = [&](double step) {
      const double fp = e.lap_total(mu + step), fm = e.lap_total(mu - step);
      return std::pair{(fp - fm) / (2 * step), (fp - 2 * d[0] + fm) / (step * step)};
    };
    const auto [c1, c2] = fd(h);
    const auto [f1, f2] = fd(h / 2);
    const double r1 = (4 * f1 - c1) / 3, r2 = (4 * f2 - c2) / 3;
    const double e1 = std::abs(d[1] - r1) / std::abs(d[1]);
    const double e2 = std::abs(d[2] - r2) / std::abs(d[2]);
    worst = std::max({worst, e1, e2});
    std::printf("  AC8 %s b=%s z=%.1f L=%.4g rel_err1=%.2e rel_err2=%.2e\n", p.name,
                std::string(to_string(b)).c_str(), z, d[0], e1, e2);
    v.require(e1 <= 1e-4 && e2 <= 1e-4, "point " + std::to_string(i));
    ++i;
  }
  v.detail << " redrawn (underflow)=" << redrawn;
  v.detail << " worst relative error=" << worst;
  report("AC8", v);
}

void monotone_sweeps() {
  Verdict v;
  for (const Platform& p : platforms()) {
    Scenario s = at(p.base, 0.5 * p.base.r_d, 2, kDestroyed);
    double prev = 2.0;
    for (int db = -15; db <= 10; ++db) {
      s.tau = db_to_linear(db);
      const double pc = total_coverage(s, Method::approximate).p_c;
      v.require(pc <= prev + 1e-12, std::string(p.name) + " tau=" + std::to_string(db) + " dB");
      prev = pc;
    }
    for (double frac : {0.0, 1.2}) {
      double prev_a = -1.0;
      for (int n_a = 0; n_a <= 8; ++n_a) {
        const double a = assoc_prob(DistanceLaws(at(p.base, frac * p.base.r_d, n_a, kDestroyed)),
                                    Tier::aerial);
        v.require(a >= prev_a - 1e-12, std::string(p.name) + " n_a=" + std::to_string(n_a));
        prev_a = a;
      }
      v.detail << " " << p.name << " r_u=" << frac * p.base.r_d << " A_A(8)=" << prev_a;
    }
  }
  report("AC9", v);
}

std::string capture(const std::string& cmd) {
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return "<popen failed>";
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  pclose(p);
  return out;
}

void determinism() {
  Verdict v;
  const std::string cli = UAVCOV_CLI_PATH;
  const std::string cmds[] = {
      "validate --scenario lap --trials 20000 --seed 42",
      "sweep --scenario hap --var r_u --grid 0,5000,12000 --set n_a=2 --method all --trials 4000 --seed 42",
      "sweep --preset fig4a --method mc --trials 300 --seed 7",
  };
  for (const std::string& c : cmds) {
    const std::string one = capture("COVERAGE_THREADS=1 " + cli + " " + c);
    const std::string many = capture("COVERAGE_THREADS=4 " + cli + " " + c);
    v.require(one == many && !one.empty(), c);
    v.detail << " [" << c.substr(0, c.find(' ')) << ": " << one.size() << " bytes "
             << (one == many ? "identical" : "differ") << "]";
  }
  report("AC10", v);
}

}  // namespace

int main() {
  analytic_vs_simulation();
  exactness_collapse();
  homogeneous_reductions();
  complementarity();
  intact_high_altitude_band();
  destroyed_collapse();
  derivative_check();
  monotone_sweeps();
  determinism();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
