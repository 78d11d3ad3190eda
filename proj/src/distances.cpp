#include "uavcov/distances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uavcov/geometry.hpp"

namespace uavcov {

namespace {
constexpr double pi = std::numbers::pi;
}

DistanceLaws::DistanceLaws(const Scenario& s, QuadConfig cfg) : s_(s), cfg_(cfg) {}

double DistanceLaws::destroyed_mass(double z) const {
  if (z <= 0.0) return 0.0;
  const double r_d = s_.r_d;
  const double r_u = s_.r_u;
  if (s_.chi.family == ProfileFamily::constant) {
    return s_.lambda0 * (1.0 - s_.chi.chi0) * lens_area(r_u, r_d, z);
  }
  auto integrand = [&](double r) {
    return (1.0 - eval_chi(s_.chi, r, r_d)) * r * inside_arc_angle(r_u, z, r);
  };
  std::vector<double> br{0.0, r_d};
  for (double k : {std::abs(z - r_u), z + r_u}) {
    if (k > 0.0 && k < r_d) br.push_back(k);
  }
  const double hi = std::min(r_d, z + r_u);
  br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return x > hi; }), br.end());
  br.push_back(hi);
  const QuadResult q = try_integrate(integrand, std::span<const double>(br), cfg_);
  return s_.lambda0 * q.value;
}

double DistanceLaws::terrestrial_mass(double z) const {
  if (z <= 0.0) return 0.0;
  if (std::isinf(z)) return z;
  const double full = s_.lambda0 * pi * z * z;
  return std::max(full - destroyed_mass(z), 0.0);
}

double DistanceLaws::deficit_angle(double omega) const {
  const auto& chi = s_.chi;
  if (omega < 0.0) return 0.0;
  if (chi.family == ProfileFamily::constant) {
    return (1.0 - chi.chi0) * inside_arc_angle(s_.r_u, s_.r_d, omega);
  }
  if (s_.r_u == 0.0) {
    return omega <= s_.r_d ? 2.0 * pi * (1.0 - eval_chi(chi, omega, s_.r_d)) : 0.0;
  }
  const double half = 0.5 * inside_arc_angle(s_.r_u, s_.r_d, omega);
  if (half <= 0.0) return 0.0;
  auto integrand = [&](double beta) {
    return 1.0 - eval_chi(chi, r_omega(s_.r_u, omega, beta), s_.r_d);
  };
  return 2.0 * try_integrate(integrand, 0.0, half, cfg_).value;
}

double DistanceLaws::survival_zt(double z) const { return std::exp(-terrestrial_mass(z)); }

double DistanceLaws::cdf_zt(double z) const { return -std::expm1(-terrestrial_mass(z)); }

double DistanceLaws::pdf_zt(double z) const {
  if (z <= 0.0) return 0.0;
  const double angular = s_.lambda0 * (2.0 * pi - deficit_angle(z));
  if (angular <= 0.0) return 0.0;
  return z * survival_zt(z) * angular;
}

double DistanceLaws::cdf_omega_a(double omega) const {
  return std::clamp(lens_area(s_.r_u, s_.r_d, omega) / (pi * s_.r_d * s_.r_d), 0.0, 1.0);
}

double DistanceLaws::pdf_omega_a(double omega) const {
  return lens_area_deriv(s_.r_u, s_.r_d, omega) / (pi * s_.r_d * s_.r_d);
}

double DistanceLaws::survival_omega_a(double omega) const { return 1.0 - cdf_omega_a(omega); }

double DistanceLaws::survival_za(double z) const {
  if (s_.n_a == 0) return 1.0;
  return std::pow(survival_omega_a(z), s_.n_a);
}

double DistanceLaws::cdf_za(double z) const {
  if (s_.n_a == 0) return 0.0;
  return 1.0 - survival_za(z);
}

double DistanceLaws::pdf_za(double z) const {
  if (s_.n_a == 0) return 0.0;
  const double f = pdf_omega_a(z);
  if (f == 0.0) return 0.0;
  return s_.n_a * std::pow(survival_omega_a(z), s_.n_a - 1) * f;
}

Interval DistanceLaws::support_a() const {
  return {std::max(0.0, s_.r_u - s_.r_d), s_.r_u + s_.r_d};
}

std::vector<double> DistanceLaws::kinks() const {
  std::vector<double> k{std::abs(s_.r_u - s_.r_d), s_.r_u + s_.r_d};
  k.erase(std::remove(k.begin(), k.end(), 0.0), k.end());
  return k;
}

}  // namespace uavcov
