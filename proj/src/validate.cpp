#include "uavcov/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "uavcov/association.hpp"
#include "uavcov/coverage.hpp"
#include "uavcov/interference.hpp"

namespace uavcov {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Check make_check(std::string name, double value, double limit, std::string detail = {}) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.limit = limit;
  c.passed = std::isfinite(value) && value <= limit;
  c.detail = std::move(detail);
  return c;
}

// Largest violation of "CDF in [0, 1] and nondecreasing" on a uniform grid.
template <class F>
double cdf_violation(F&& cdf, double hi, int points) {
  double worst = 0.0;
  double prev = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double v = cdf(hi * i / points);
    worst = std::max({worst, -v, v - 1.0, prev - v});
    prev = v;
  }
  return worst;
}

Check mc_agreement(const std::string& name, const CoverageResult& analytic,
                   const CoverageResult& mc) {
  const double half = 0.5 * (*mc.ci_high - *mc.ci_low);
  const double tol = std::max(0.015, half);
  return make_check(name, std::abs(analytic.p_c - mc.p_c), tol,
                    "analytic " + fmt(analytic.p_c) + " vs simulated " + fmt(mc.p_c) +
                        " (ci half-width " + fmt(half) + ")");
}

Check frequency_check(const std::string& name, double prob, long long hits, long long n) {
  const double freq = static_cast<double>(hits) / n;
  const double se = std::max(std::sqrt(prob * (1.0 - prob) / n), 1.0 / n);
  return make_check(name, std::abs(freq - prob) / se, 3.0,
                    "analytic " + fmt(prob) + " vs frequency " + fmt(freq) + " (z-score)");
}

}  // namespace

bool ValidateReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

ValidateReport validate_cmd(const Scenario& scenario, const ValidateOptions& opt) {
  const ValidationReport vr = check_scenario(scenario);
  if (!vr.ok()) throw ValidationError(vr.errors);
  const Scenario& s = scenario;

  ValidateReport rep;
  rep.seed = opt.mc.seed;
  rep.trials = opt.mc.trials;
  std::string warnings;
  for (const auto& w : vr.warnings) warnings += (warnings.empty() ? "" : "; ") + w;
  rep.checks.push_back(make_check("scenario_valid", 0.0, 0.0,
                                  warnings.empty() ? "no warnings" : "warnings: " + warnings));

  const DistanceLaws laws(s, opt.quad);
  const AssociationReport assoc = association_report(laws);
  rep.checks.push_back(make_check("association_sum", std::abs(assoc.a_a + assoc.a_t - 1.0), 1e-6,
                                  "a_a " + fmt(assoc.a_a) + " + a_t " + fmt(assoc.a_t)));

  const double reach = s.r_u + s.r_d + 3.0 / std::sqrt(s.lambda0);
  rep.checks.push_back(make_check(
      "cdf_zt_monotone", cdf_violation([&](double z) { return laws.cdf_zt(z); }, reach, 200),
      1e-12, "grid of 201 points up to " + fmt(reach) + " m"));
  if (s.n_a > 0) {
    rep.checks.push_back(make_check(
        "cdf_za_monotone",
        cdf_violation([&](double z) { return laws.cdf_za(z); }, s.r_u + s.r_d, 200), 1e-12,
        "grid of 201 points over the aerial support"));
  }

  const CoverageResult approx = total_coverage(s, Method::approximate, opt.quad);
  rep.checks.push_back(make_check("approximate_converged", approx.converged ? 0.0 : 1.0, 0.0,
                                  "quadrature error estimate " + fmt(approx.quad_err)));
  std::optional<CoverageResult> exact;
  if (std::max(s.tier_a.m, s.tier_t.m) <= kMaxLaplaceOrder) {
    exact = total_coverage(s, Method::exact, opt.quad);
    rep.checks.push_back(make_check("exact_converged", exact->converged ? 0.0 : 1.0, 0.0,
                                    "quadrature error estimate " + fmt(exact->quad_err)));
    rep.checks.push_back(make_check("approximate_vs_exact", std::abs(approx.p_c - exact->p_c), 0.05,
                                    "approximate " + fmt(approx.p_c) + " vs exact " +
                                        fmt(exact->p_c)));
  }

  MCConfig mc = opt.mc;
  mc.keep_distances = true;
  const MCEstimate est = estimate(s, mc, opt.threads);
  rep.checks.push_back(mc_agreement("mc_vs_approximate", approx, est.result));
  if (exact) rep.checks.push_back(mc_agreement("mc_vs_exact", *exact, est.result));
  rep.checks.push_back(frequency_check("assoc_freq_a", assoc.a_a, est.served_a, mc.trials));
  rep.checks.push_back(frequency_check("assoc_freq_t", assoc.a_t, est.served_t, mc.trials));
  rep.checks.push_back(make_check(
      "ks_zt", ks_statistic(est.nearest_tbs, [&](double z) { return laws.cdf_zt(z); }), 0.01,
      "nearest TBS distance, " + std::to_string(mc.trials) + " samples"));
  if (s.n_a > 0) {
    rep.checks.push_back(make_check(
        "ks_za", ks_statistic(est.nearest_abs, [&](double z) { return laws.cdf_za(z); }), 0.01,
        "nearest ABS horizontal distance, " + std::to_string(mc.trials) + " samples"));
  }

  MCConfig small = opt.mc;
  small.trials = std::min<long long>(opt.mc.trials, 4LL * opt.mc.batch);
  const MCEstimate a = estimate(s, small, 1);
  // Fixed probe width so the report text does not depend on the caller's thread count.
  constexpr int kProbeThreads = 4;
  const MCEstimate b = estimate(s, small, kProbeThreads);
  const bool same = a.covered == b.covered && a.served_a == b.served_a && a.served_t == b.served_t;
  rep.checks.push_back(make_check("mc_thread_invariance", same ? 0.0 : 1.0, 0.0,
                                  std::to_string(small.trials) + " trials at 1 and " +
                                      std::to_string(kProbeThreads) + " threads"));
  return rep;
}

void print_report(std::ostream& out, const ValidateReport& rep) {
  out << "seed " << rep.seed << ", " << rep.trials << " trials\n";
  for (const Check& c : rep.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << fmt(c.value)
        << " limit=" << fmt(c.limit) << " margin=" << fmt(c.margin());
    if (!c.detail.empty()) out << "  [" << c.detail << "]";
    out << '\n';
  }
  out << (rep.passed() ? "overall PASS" : "overall FAIL") << '\n';
}

void write_report_csv(std::ostream& out, const ValidateReport& rep) {
  out << "check,passed,value,limit,margin,detail\n";
  for (const Check& c : rep.checks) {
    std::string detail = c.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    out << c.name << ',' << (c.passed ? 1 : 0) << ',' << fmt(c.value) << ',' << fmt(c.limit)
        << ',' << fmt(c.margin()) << ',' << detail << '\n';
  }
}

}  // namespace uavcov
