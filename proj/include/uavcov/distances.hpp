#pragma once
// Nearest-station distance laws as seen from the UE.
//
// Terrestrial: the surviving TBSs form an inhomogeneous PPP, so the nearest
// horizontal distance Z_T follows from the void probability
//   F_ZT(z) = 1 - exp(-Lambda(z)),  Lambda(z) = integral of lambda_T over disc(UE, z).
// lambda_T only depends on the distance r from the epicenter, so Lambda is
// evaluated as lambda0 * pi * z^2 minus the destroyed mass, the latter a 1-D
// integral over r of (1 - chi(r)) times the arc of circle(epicenter, r) that
// falls inside disc(UE, z).
//
// Aerial: N_A UAVs uniform over the disaster disc. A single UAV's horizontal
// distance Omega_A has CDF lens_area / (pi r_d^2); Z_A is the minimum of N_A
// iid copies.

#include "uavcov/quadrature.hpp"
#include "uavcov/scenario.hpp"

namespace uavcov {

struct Interval {
  double lo;
  double hi;
};

class DistanceLaws {
 public:
  explicit DistanceLaws(const Scenario& s, QuadConfig cfg = {});

  const Scenario& scenario() const { return s_; }
  const QuadConfig& quad_config() const { return cfg_; }

  /// Expected number of surviving TBSs within horizontal distance z.
  double terrestrial_mass(double z) const;
  /// Angular measure of circle(UE, omega) weighted by the destroyed fraction
  /// 1 - chi(r) on the part inside the disaster disc.
  double deficit_angle(double omega) const;

  double survival_zt(double z) const;
  double cdf_zt(double z) const;
  double pdf_zt(double z) const;

  double cdf_omega_a(double omega) const;
  double pdf_omega_a(double omega) const;
  double survival_omega_a(double omega) const;

  double cdf_za(double z) const;
  double pdf_za(double z) const;
  double survival_za(double z) const;

  /// Support of Z_A (and of Omega_A): [max(0, r_u - r_d), r_u + r_d].
  Interval support_a() const;

  /// Radii at which the distance laws lose smoothness: |r_u - r_d| and r_u + r_d.
  std::vector<double> kinks() const;

 private:
  double destroyed_mass(double z) const;

  Scenario s_;
  QuadConfig cfg_;
};

}  // namespace uavcov
