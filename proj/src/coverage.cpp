#include "uavcov/coverage.hpp"

#include <algorithm>
#include <cmath>

#include "uavcov/association.hpp"
#include "uavcov/geometry.hpp"
#include "uavcov/interference.hpp"

namespace uavcov {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::approximate: return "approximate";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "approximate";
}

double mu_b(const Scenario& s, Tier b, double z) {
  const TierParams& t = s.tier(b);
  const double d = exclusion_d({b, b}, s, z);
  return t.m * s.tau / t.xi() * std::pow(d, t.alpha);
}

double epsilon2(int m) { return std::pow(std::tgamma(m + 1.0), -1.0 / m); }

double cond_cov_exact(const DistanceLaws& laws, Tier b, double z) {
  const Scenario& s = laws.scenario();
  const int m = s.tier(b).m;
  if (m > kMaxLaplaceOrder) {
    throw UnsupportedOrder("exact coverage needs Nakagami m <= " +
                           std::to_string(kMaxLaplaceOrder) + " (got " + std::to_string(m) +
                           "); use the approximate method");
  }
  const double mu = mu_b(s, b, z);
  if (mu == 0.0) return 1.0;
  const LaplaceEval e(laws, b, z);
  const std::vector<double> d = e.lap_total_derivs(mu, m - 1);
  double p = 0.0;
  double coef = 1.0;  // (-mu)^k / k!
  for (int k = 0; k < m; ++k) {
    p += coef * d[k];
    coef *= -mu / (k + 1);
  }
  return std::clamp(p, 0.0, 1.0);
}

double cond_cov_approx(const DistanceLaws& laws, Tier b, double z) {
  const Scenario& s = laws.scenario();
  const int m = s.tier(b).m;
  const double mu = mu_b(s, b, z);
  if (mu == 0.0) return 1.0;
  const double eps = epsilon2(m);
  const LaplaceEval e(laws, b, z);
  double p = 0.0;
  double binom = 1.0;
  for (int k = 1; k <= m; ++k) {
    binom = binom * (m - k + 1) / k;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    p += sign * binom * e.lap_total(k * eps * mu, 0);
  }
  return std::clamp(p, 0.0, 1.0);
}

CoverageResult total_coverage(const Scenario& scenario, Method method, const QuadConfig& cfg) {
  if (method == Method::monte_carlo) {
    throw std::invalid_argument("total_coverage is analytic; use estimate() for Monte Carlo");
  }
  const Scenario s = validate_scenario(scenario);
  const DistanceLaws laws(s, cfg);

  CoverageResult res;
  res.method = method;
  const AssociationReport assoc = association_report(laws);
  res.assoc_a = assoc.a_a;
  res.assoc_t = assoc.a_t;
  res.quad_err = assoc.quad_err;
  res.converged = assoc.converged;

  for (Tier b : {Tier::terrestrial, Tier::aerial}) {
    const auto br = tier_breaks(laws, b);
    if (br.size() < 2) continue;
    auto integrand = [&](double z) {
      const double f = b == Tier::terrestrial ? laws.pdf_zt(z) : laws.pdf_za(z);
      if (f == 0.0) return 0.0;
      const double a = cond_assoc(laws, b, z);
      if (a == 0.0) return 0.0;
      const double p =
          method == Method::exact ? cond_cov_exact(laws, b, z) : cond_cov_approx(laws, b, z);
      return f * a * p;
    };
    const QuadResult q = try_integrate(integrand, std::span<const double>(br), cfg);
    (b == Tier::terrestrial ? res.contribution_t : res.contribution_a) = q.value;
    res.quad_err += q.error;
    res.converged = res.converged && q.converged;
  }
  res.p_c = std::clamp(res.contribution_t + res.contribution_a, 0.0, 1.0);
  return res;
}

}  // namespace uavcov
