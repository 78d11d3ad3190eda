#pragma once
// Planar geometry kernels. The UE sits at distance r_u from the disaster
// epicenter; polar coordinates (omega, beta) are centered on the UE with beta
// measured from the UE->epicenter direction.

#include "uavcov/scenario.hpp"

namespace uavcov {

/// Distance from the epicenter of the point at (omega, beta) around the UE.
double r_omega(double r_u, double omega, double beta);

/// Angle (0..2*pi) of the circle of radius `rho`, centered at distance `d` from
/// the center of a disc of radius `radius`, that lies inside that disc.
double inside_arc_angle(double d, double radius, double rho);

/// Area of disc(epicenter, r_d) intersected with disc(UE, omega).
double lens_area(double r_u, double r_d, double omega);

/// d(lens_area)/d(omega): length of the circle(UE, omega) arc inside the disaster disc.
double lens_area_deriv(double r_u, double r_d, double omega);

/// Tagged tier `b`, interfering tier `c`.
struct ExclusionPair {
  Tier b;
  Tier c;
};

/// Minimum Euclidean distance of any tier-c interferer when the UE is served
/// by a tier-b station at horizontal distance z.
double exclusion_d(ExclusionPair pair, const Scenario& s, double z);

/// Horizontal projection of exclusion_d.
double exclusion_z(ExclusionPair pair, const Scenario& s, double z);

}  // namespace uavcov
