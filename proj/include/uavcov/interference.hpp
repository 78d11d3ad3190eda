#pragma once
// Conditional Laplace transforms of the interference seen by a UE served by a
// tier-b station at horizontal distance z, and their s-derivatives.
//
//   terrestrial  L_T(s) = exp(-G(s)),
//                G(s) = int_beta int_{Z_bT}^inf lambda_T(r) I_T(s|w) w dw dbeta,
//                I_T(s|w) = 1 - (1 + xi_T s w^-alpha_T / m_T)^-m_T
//   aerial       L_A(s) = Y(s)^N,  N = n_a - 1(b = A),
//                Y(s) = int_{Z_bA}^{r_u + r_d} (1 + xi_A s D_AA(w)^-alpha_A / m_A)^-m_A f(w | Z_bA) dw
//   aggregate    L_J(s) = exp(-s sigma_n^2) L_T(s) L_A(s)
//
// All derivative routines return the vector [L(s), L'(s), ..., L^(k)(s)].

#include <vector>

#include "uavcov/distances.hpp"

namespace uavcov {

inline constexpr int kMaxLaplaceOrder = 4;

class LaplaceEval {
 public:
  LaplaceEval(const DistanceLaws& laws, Tier b, double z);

  Tier tagged_tier() const { return b_; }
  double z() const { return z_; }
  double z_bt() const { return z_bt_; }
  double z_ba() const { return z_ba_; }
  int interferer_count() const { return n_chk_; }

  /// Conditional PDF of one aerial interferer's horizontal distance.
  double cond_interferer_pdf(double omega) const;

  /// Exponent derivatives G^(j)(s), j = 0..k.
  std::vector<double> terrestrial_exponent(double s, int k) const;
  /// Y^(j)(s), j = 0..k.
  std::vector<double> aerial_kernel(double s, int k) const;

  std::vector<double> lap_t_derivs(double s, int k) const;
  std::vector<double> lap_a_derivs(double s, int k) const;
  std::vector<double> lap_total_derivs(double s, int k) const;

  double lap_t(double s, int k = 0) const { return lap_t_derivs(s, k).at(k); }
  double lap_a(double s, int k = 0) const { return lap_a_derivs(s, k).at(k); }
  double lap_total(double s, int k = 0) const { return lap_total_derivs(s, k).at(k); }

 private:
  const DistanceLaws* laws_;
  Tier b_;
  double z_;
  double z_bt_;
  double z_ba_;
  int n_chk_;
  double aerial_norm_;  // survival of Omega_A at z_ba
};

/// Taylor-coefficient power a^n of a truncated series (a[0] > 0).
std::vector<double> series_pow(const std::vector<double>& a, int n);

}  // namespace uavcov
