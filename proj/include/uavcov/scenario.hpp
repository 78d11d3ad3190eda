#pragma once
// Network scenario: geometry, the two radio tiers, and the terrestrial
// quality-of-resilience (QoR) profile. All fields are linear SI units.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uavcov {

enum class Tier { aerial, terrestrial };

std::string_view to_string(Tier t);

/// Per-tier radio constants.
struct TierParams {
  double rho = 1.0;    ///< transmit power [W]
  double eta = 1.0;    ///< mean additional transmit loss, linear factor in (0, 1]
  double alpha = 2.0;  ///< path-loss exponent
  int m = 1;           ///< Nakagami shape

  /// Effective transmit power eta * rho.
  double xi() const { return eta * rho; }
};

enum class ProfileFamily { constant, linear, sqrt, exponential };

std::string_view to_string(ProfileFamily f);
ProfileFamily parse_profile_family(std::string_view name);

/// Fraction of the original base-station density surviving at distance r from
/// the epicenter. Every family equals chi0 at r = 0 and 1 at r = r_d except
/// `constant`, which stays at chi0 on the whole disaster disc.
struct ResilienceProfile {
  ProfileFamily family = ProfileFamily::constant;
  double chi0 = 0.0;
};

struct Scenario {
  double lambda0 = 3e-6;  ///< original TBS density [1/m^2]
  double r_d = 1000.0;    ///< disaster radius [m]
  double r_u = 0.0;       ///< UE distance from the epicenter [m]
  double h = 200.0;       ///< ABS altitude [m]
  int n_a = 0;            ///< number of deployed ABSs
  TierParams tier_a;
  TierParams tier_t;
  ResilienceProfile chi;
  double tau = 1.0;       ///< SINR threshold (linear)
  double sigma_n2 = 0.0;  ///< noise power [W]

  const TierParams& tier(Tier t) const { return t == Tier::aerial ? tier_a : tier_t; }
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Collects every violated constraint (errors) plus suspicious magnitudes (warnings).
ValidationReport check_scenario(const Scenario& s);

/// Returns `s` unchanged when every invariant holds; throws ValidationError
/// listing all violations otherwise.
Scenario validate_scenario(const Scenario& s);

double eval_chi(const ResilienceProfile& p, double r, double r_d);

/// Surviving TBS intensity at distance r from the epicenter.
double lambda_t(const Scenario& s, double r);

/// Low-altitude platform defaults (drone ABSs over a 1 km disaster).
Scenario lap_preset();
/// High-altitude platform defaults (stratospheric ABSs over a 10 km disaster).
Scenario hap_preset();

double db_to_linear(double db);

}  // namespace uavcov
