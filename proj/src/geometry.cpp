#include "uavcov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uavcov {

namespace {
constexpr double pi = std::numbers::pi;

double safe_acos(double x) { return std::acos(std::clamp(x, -1.0, 1.0)); }
}  // namespace

double r_omega(double r_u, double omega, double beta) {
  const double sq = r_u * r_u + omega * omega - 2.0 * r_u * omega * std::cos(beta);
  return std::sqrt(std::max(sq, 0.0));
}

double inside_arc_angle(double d, double radius, double rho) {
  if (rho + d <= radius) return 2.0 * pi;
  if (rho >= d + radius || rho <= d - radius) return 0.0;
  return 2.0 * safe_acos((d * d + rho * rho - radius * radius) / (2.0 * d * rho));
}

double lens_area(double r_u, double r_d, double omega) {
  if (omega <= 0.0) return 0.0;
  if (omega >= r_u + r_d) return pi * r_d * r_d;
  if (omega <= r_u - r_d) return 0.0;
  if (omega <= r_d - r_u) return pi * omega * omega;
  const double d = r_u;
  const double a1 = safe_acos((d * d + omega * omega - r_d * r_d) / (2.0 * d * omega));
  const double a2 = safe_acos((d * d + r_d * r_d - omega * omega) / (2.0 * d * r_d));
  const double k = (-d + omega + r_d) * (d + omega - r_d) * (d - omega + r_d) * (d + omega + r_d);
  const double area = omega * omega * a1 + r_d * r_d * a2 - 0.5 * std::sqrt(std::max(k, 0.0));
  return std::clamp(area, 0.0, pi * std::min(omega, r_d) * std::min(omega, r_d));
}

double lens_area_deriv(double r_u, double r_d, double omega) {
  if (omega <= 0.0) return 0.0;
  return omega * inside_arc_angle(r_u, r_d, omega);
}

double exclusion_d(ExclusionPair pair, const Scenario& s, double z) {
  const double xi_a = s.tier_a.xi();
  const double xi_t = s.tier_t.xi();
  const double al_a = s.tier_a.alpha;
  const double al_t = s.tier_t.alpha;
  const double lifted = std::hypot(z, s.h);

  if (pair.b == Tier::terrestrial && pair.c == Tier::terrestrial) return z;
  if (pair.b == Tier::aerial && pair.c == Tier::aerial) return lifted;
  if (pair.b == Tier::aerial) {
    return std::pow(xi_t / xi_a, 1.0 / al_t) * std::pow(lifted, al_a / al_t);
  }
  // Tagged TBS, aerial interferer. Below the threshold distance no UAV can
  // outshine the TBS, so the only bound is the altitude itself.
  const ExclusionPair at{Tier::aerial, Tier::terrestrial};
  if (z > exclusion_d(at, s, 0.0)) {
    return std::pow(xi_a / xi_t, 1.0 / al_a) * std::pow(z, al_t / al_a);
  }
  return s.h;
}

double exclusion_z(ExclusionPair pair, const Scenario& s, double z) {
  const double d = exclusion_d(pair, s, z);
  if (pair.c == Tier::terrestrial) return d;
  if (pair.b == Tier::aerial) return z;  // sqrt((z^2 + h^2) - h^2) without the round trip
  if (d <= s.h) return 0.0;
  return std::sqrt(d * d - s.h * s.h);
}

}  // namespace uavcov
