#pragma once
// Downlink SINR coverage probability.
//
//   P_c = sum_B int_{R_B} a_B(z) p_{c,B}(z) f_{Z_B}(z) dz
//
// with p_{c,B} either the exact alternating derivative sum (Nakagami shape
// m_B <= kMaxLaplaceOrder) or the binomial approximation built on the Alzer
// bound of the gamma CDF.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "uavcov/distances.hpp"

namespace uavcov {

enum class Method { exact, approximate, monte_carlo };

std::string_view to_string(Method m);

struct CoverageResult {
  double p_c = 0.0;
  Method method = Method::approximate;
  double contribution_a = 0.0;  ///< aerial term of the tier sum
  double contribution_t = 0.0;  ///< terrestrial term of the tier sum
  double assoc_a = 0.0;
  double assoc_t = 0.0;
  double quad_err = 0.0;
  bool converged = true;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::optional<long long> trials;
};

class UnsupportedOrder : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// m_B * tau / xi_B * D_BB(z)^alpha_B.
double mu_b(const Scenario& s, Tier b, double z);

/// (m!)^(-1/m).
double epsilon2(int m);

double cond_cov_exact(const DistanceLaws& laws, Tier b, double z);
double cond_cov_approx(const DistanceLaws& laws, Tier b, double z);

/// Analytic coverage (method exact or approximate). Monte Carlo lives in montecarlo.hpp.
CoverageResult total_coverage(const Scenario& s, Method method, const QuadConfig& cfg = {});

}  // namespace uavcov
