#pragma once
// Max-average-received-power association between the nearest TBS and the
// nearest ABS.

#include <vector>

#include "uavcov/distances.hpp"

namespace uavcov {

struct AssociationReport {
  double a_a = 0.0;
  double a_t = 1.0;
  double quad_err = 0.0;
  bool converged = true;
};

/// Probability that no station of the other tier beats a tier-b station at
/// horizontal distance z.
double cond_assoc(const DistanceLaws& laws, Tier b, double z);

/// Unconditional probability of being served by tier b.
double assoc_prob(const DistanceLaws& laws, Tier b);

/// Both association probabilities, each from its own integral.
AssociationReport association_report(const DistanceLaws& laws);

/// Integration domain for the tagged distance of tier b, as a sorted list of
/// breakpoints. front()/back() are the limits; interior points are where the
/// integrands lose smoothness. Empty when the tier cannot serve (b = A, n_a = 0).
std::vector<double> tier_breaks(const DistanceLaws& laws, Tier b);

/// Horizontal distance z of a tagged TBS at which exclusion_z(T, A) reaches omega.
double tbs_distance_for_aerial_exclusion(const Scenario& s, double omega);
/// Horizontal distance z of a tagged ABS at which exclusion_z(A, T) reaches
/// omega, or a negative value when no such z exists.
double abs_distance_for_terrestrial_exclusion(const Scenario& s, double omega);

}  // namespace uavcov
