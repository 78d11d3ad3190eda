#include "uavcov/association.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uavcov/geometry.hpp"

namespace uavcov {

double cond_assoc(const DistanceLaws& laws, Tier b, double z) {
  const Scenario& s = laws.scenario();
  if (b == Tier::terrestrial) {
    return laws.survival_za(exclusion_z({Tier::terrestrial, Tier::aerial}, s, z));
  }
  return laws.survival_zt(exclusion_z({Tier::aerial, Tier::terrestrial}, s, z));
}

double tbs_distance_for_aerial_exclusion(const Scenario& s, double omega) {
  const double d = std::hypot(omega, s.h);
  const double al_a = s.tier_a.alpha;
  const double al_t = s.tier_t.alpha;
  return std::pow(d * std::pow(s.tier_t.xi() / s.tier_a.xi(), 1.0 / al_a), al_a / al_t);
}

double abs_distance_for_terrestrial_exclusion(const Scenario& s, double omega) {
  const double al_a = s.tier_a.alpha;
  const double al_t = s.tier_t.alpha;
  const double lifted_sq =
      std::pow(omega * std::pow(s.tier_a.xi() / s.tier_t.xi(), 1.0 / al_t), 2.0 * al_t / al_a);
  const double z_sq = lifted_sq - s.h * s.h;
  return z_sq > 0.0 ? std::sqrt(z_sq) : -1.0;
}

std::vector<double> tier_breaks(const DistanceLaws& laws, Tier b) {
  const Scenario& s = laws.scenario();
  const auto kinks = laws.kinks();
  std::vector<double> br;
  double lo = 0.0;
  double hi = 0.0;
  if (b == Tier::terrestrial) {
    // Tail cut from F_ZT(z) <= exp(-lambda0 pi (z^2 - r_d^2)).
    const double eps = laws.quad_config().abs_tol * 1e-2;
    hi = std::sqrt(s.r_d * s.r_d + std::log(1.0 / eps) / (s.lambda0 * std::numbers::pi));
    hi = std::max(hi, s.r_u + s.r_d);
    br.insert(br.end(), kinks.begin(), kinks.end());
    if (s.n_a > 0) {
      // Beyond this distance every UAV outshines the TBS, so a_T = 0.
      hi = std::min(hi, tbs_distance_for_aerial_exclusion(s, s.r_u + s.r_d));
      br.push_back(exclusion_d({Tier::aerial, Tier::terrestrial}, s, 0.0));
      for (double k : kinks) br.push_back(tbs_distance_for_aerial_exclusion(s, k));
    }
  } else {
    if (s.n_a == 0) return {};
    const Interval sup = laws.support_a();
    lo = sup.lo;
    hi = sup.hi;
    br.insert(br.end(), kinks.begin(), kinks.end());
    for (double k : kinks) br.push_back(abs_distance_for_terrestrial_exclusion(s, k));
  }
  br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return !(x > lo && x < hi); }),
           br.end());
  br.push_back(lo);
  br.push_back(hi);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

namespace {

QuadResult assoc_integral(const DistanceLaws& laws, Tier b) {
  const auto br = tier_breaks(laws, b);
  if (br.size() < 2) return {};
  auto integrand = [&](double z) {
    const double f = b == Tier::terrestrial ? laws.pdf_zt(z) : laws.pdf_za(z);
    if (f == 0.0) return 0.0;
    return f * cond_assoc(laws, b, z);
  };
  return try_integrate(integrand, std::span<const double>(br), laws.quad_config());
}

}  // namespace

double assoc_prob(const DistanceLaws& laws, Tier b) {
  const QuadResult r = assoc_integral(laws, b);
  if (!r.converged) throw ConvergenceError("association integral did not converge", r);
  return r.value;
}

AssociationReport association_report(const DistanceLaws& laws) {
  const QuadResult t = assoc_integral(laws, Tier::terrestrial);
  const QuadResult a = assoc_integral(laws, Tier::aerial);
  return {a.value, t.value, t.error + a.error, t.converged && a.converged};
}

}  // namespace uavcov
