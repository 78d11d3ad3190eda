#include "uavcov/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "uavcov/geometry.hpp"

namespace uavcov {

namespace {

constexpr double pi = std::numbers::pi;

double rising_factorial(int m, int j) {
  double r = 1.0;
  for (int i = 0; i < j; ++i) r *= m + i;
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void check_order(int k) {
  if (k < 0 || k > kMaxLaplaceOrder) {
    throw std::invalid_argument("Laplace derivative order must be in [0, " +
                                std::to_string(kMaxLaplaceOrder) + "]");
  }
}

// j-th s-derivative of the Nakagami MGF factor (1 + c s)^-m.
double mgf_derivative(double c, double s, int m, int j) {
  const double base = 1.0 + c * s;
  const double head = std::pow(base, -m);
  if (j == 0) return head;
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign * rising_factorial(m, j) * std::pow(c / base, j) * head;
}

double derivative_scale(double s, int j) { return s > 0.0 && j > 0 ? std::pow(s, j) : 1.0; }

// 1 - (1 + c s)^-m without cancellation for small c s.
double one_minus_mgf(double c, double s, int m) { return -std::expm1(-m * std::log1p(c * s)); }

}  // namespace

std::vector<double> series_pow(const std::vector<double>& a, int n) {
  std::vector<double> b(a.size(), 0.0);
  if (a.empty()) return b;
  if (n == 0) {
    b[0] = 1.0;
    return b;
  }
  b[0] = std::pow(a[0], n);
  for (std::size_t k = 1; k < a.size(); ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      acc += (static_cast<double>(n + 1) * static_cast<double>(j) - static_cast<double>(k)) *
             a[j] * b[k - j];
    }
    b[k] = acc / (static_cast<double>(k) * a[0]);
  }
  return b;
}

LaplaceEval::LaplaceEval(const DistanceLaws& laws, Tier b, double z)
    : laws_(&laws), b_(b), z_(z) {
  const Scenario& s = laws.scenario();
  z_bt_ = exclusion_z({b, Tier::terrestrial}, s, z);
  z_ba_ = exclusion_z({b, Tier::aerial}, s, z);
  n_chk_ = std::max(0, s.n_a - (b == Tier::aerial ? 1 : 0));
  aerial_norm_ = laws.survival_omega_a(z_ba_);
}

double LaplaceEval::cond_interferer_pdf(double omega) const {
  const Scenario& s = laws_->scenario();
  if (aerial_norm_ <= 0.0 || omega < z_ba_ || omega > s.r_u + s.r_d) return 0.0;
  return laws_->pdf_omega_a(omega) / aerial_norm_;
}

std::vector<double> LaplaceEval::terrestrial_exponent(double s_arg, int k) const {
  check_order(k);
  const Scenario& s = laws_->scenario();
  const TierParams& t = s.tier_t;
  std::vector<double> out(k + 1, 0.0);
  if (s_arg > 0.0 && t.alpha <= 2.0) {
    std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
    return out;
  }
  const double z0 = z_bt_;
  const double r_plus = s.r_u + s.r_d;
  const QuadConfig& cfg = laws_->quad_config();
  const double scale = std::max({std::pow(t.xi() * s_arg / t.m, 1.0 / t.alpha), z0, 1.0});

  std::vector<double> br{z0, r_plus};
  for (double kk : laws_->kinks()) {
    if (kk > z0 && kk < r_plus) br.push_back(kk);
  }

  for (int j = 0; j <= k; ++j) {
    if (j == 0 && s_arg == 0.0) continue;
    // s^j G^(j)(s) is O(G); integrating it keeps abs_tol meaningful for every j.
    const double sj = derivative_scale(s_arg, j);
    auto phi = [&](double w) {
      const double c = t.xi() * std::pow(w, -t.alpha) / t.m;
      if (j == 0) return one_minus_mgf(c, s_arg, t.m);
      return -sj * mgf_derivative(c, s_arg, t.m, j);
    };
    auto homog = [&](double w) { return phi(w) * w; };
    const double full = 2.0 * pi * try_integrate_semi_infinite(homog, z0, cfg, scale).value;
    double deficit = 0.0;
    if (z0 < r_plus) {
      auto lost = [&](double w) {
        const double d = laws_->deficit_angle(w);
        return d == 0.0 ? 0.0 : phi(w) * w * d;
      };
      deficit = try_integrate(lost, std::span<const double>(br), cfg).value;
    }
    out[j] = s.lambda0 * (full - deficit) / sj;
  }
  return out;
}

std::vector<double> LaplaceEval::aerial_kernel(double s_arg, int k) const {
  check_order(k);
  const Scenario& s = laws_->scenario();
  const TierParams& a = s.tier_a;
  std::vector<double> out(k + 1, 0.0);
  out[0] = 1.0;
  // Every UAV excluded: the matching association weight is zero, so the
  // kernel is pinned to 1 to avoid 0/0.
  if (aerial_norm_ <= 0.0 || s_arg < 0.0) return out;
  const double r_plus = s.r_u + s.r_d;
  std::vector<double> br{z_ba_, r_plus};
  const double inner = std::abs(s.r_u - s.r_d);
  if (inner > z_ba_ && inner < r_plus) br.push_back(inner);
  const QuadConfig& cfg = laws_->quad_config();

  for (int j = 0; j <= k; ++j) {
    if (j == 0 && s_arg == 0.0) continue;
    const double sj = derivative_scale(s_arg, j);
    auto integrand = [&](double w) {
      const double f = laws_->pdf_omega_a(w);
      if (f == 0.0) return 0.0;
      const double c = a.xi() * std::pow(w * w + s.h * s.h, -0.5 * a.alpha) / a.m;
      const double v =
          j == 0 ? one_minus_mgf(c, s_arg, a.m) : sj * mgf_derivative(c, s_arg, a.m, j);
      return v * f;
    };
    const double q =
        try_integrate(integrand, std::span<const double>(br), cfg).value / aerial_norm_ / sj;
    out[j] = j == 0 ? 1.0 - q : q;
  }
  return out;
}

std::vector<double> LaplaceEval::lap_t_derivs(double s_arg, int k) const {
  const std::vector<double> big_g = terrestrial_exponent(s_arg, k);
  std::vector<double> l(k + 1, 0.0);
  if (std::isinf(big_g[0])) return l;
  // L = exp(g) with g = -G; L^(n) = sum_j C(n-1, j) g^(n-j) L^(j).
  l[0] = std::exp(-big_g[0]);
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += binomial(n - 1, j) * (-big_g[n - j]) * l[j];
    l[n] = acc;
  }
  return l;
}

std::vector<double> LaplaceEval::lap_a_derivs(double s_arg, int k) const {
  check_order(k);
  std::vector<double> l(k + 1, 0.0);
  l[0] = 1.0;
  if (n_chk_ == 0) return l;
  const std::vector<double> y = aerial_kernel(s_arg, k);
  std::vector<double> taylor(k + 1);
  for (int j = 0; j <= k; ++j) taylor[j] = y[j] / factorial(j);
  const std::vector<double> p = series_pow(taylor, n_chk_);
  for (int j = 0; j <= k; ++j) l[j] = p[j] * factorial(j);
  return l;
}

std::vector<double> LaplaceEval::lap_total_derivs(double s_arg, int k) const {
  const double noise = laws_->scenario().sigma_n2;
  const std::vector<double> lt = lap_t_derivs(s_arg, k);
  const std::vector<double> la = lap_a_derivs(s_arg, k);
  std::vector<double> ln(k + 1);
  const double e = std::exp(-s_arg * noise);
  for (int j = 0; j <= k; ++j) ln[j] = std::pow(-noise, j) * e;

  std::vector<double> out(k + 1, 0.0);
  for (int n = 0; n <= k; ++n) {
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; i + j <= n; ++j) {
        const int l = n - i - j;
        const double multinomial = factorial(n) / (factorial(i) * factorial(j) * factorial(l));
        acc += multinomial * ln[i] * lt[j] * la[l];
      }
    }
    out[n] = acc;
  }
  return out;
}

}  // namespace uavcov
