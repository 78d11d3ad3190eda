#include "uavcov/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace uavcov {

std::string_view to_string(Tier t) { return t == Tier::aerial ? "A" : "T"; }

std::string_view to_string(ProfileFamily f) {
  switch (f) {
    case ProfileFamily::constant: return "constant";
    case ProfileFamily::linear: return "linear";
    case ProfileFamily::sqrt: return "sqrt";
    case ProfileFamily::exponential: return "exponential";
  }
  return "constant";
}

ProfileFamily parse_profile_family(std::string_view name) {
  if (name == "constant" || name == "uniform") return ProfileFamily::constant;
  if (name == "linear") return ProfileFamily::linear;
  if (name == "sqrt") return ProfileFamily::sqrt;
  if (name == "exponential" || name == "exp") return ProfileFamily::exponential;
  throw std::invalid_argument("unknown QoR profile family '" + std::string(name) + "'");
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << "; ";
    os << items[i];
  }
  return os.str();
}

void check_tier(const TierParams& t, const char* name, ValidationReport& rep) {
  const std::string n(name);
  if (!(t.rho > 0.0)) rep.errors.push_back(n + ": rho > 0 violated");
  if (!(t.eta > 0.0 && t.eta <= 1.0)) {
    std::string msg = n + ": 0 < eta <= 1 violated";
    if (t.eta < 0.0) msg += " (negative value looks like dB; use eta_db)";
    rep.errors.push_back(msg);
  }
  if (!(t.alpha >= 2.0)) rep.errors.push_back(n + ": alpha >= 2 violated");
  if (t.m < 1) rep.errors.push_back(n + ": m >= 1 violated");
  if (t.rho > 1e4) rep.warnings.push_back(n + ": rho above 10 kW, check units (W expected)");
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> errors)
    : std::runtime_error("invalid scenario: " + join(errors)), errors_(std::move(errors)) {}

ValidationReport check_scenario(const Scenario& s) {
  ValidationReport rep;
  if (!(s.lambda0 > 0.0)) rep.errors.push_back("lambda0 > 0 violated");
  if (!(s.r_d > 0.0)) rep.errors.push_back("r_d > 0 violated");
  if (!(s.r_u >= 0.0)) rep.errors.push_back("r_u >= 0 violated");
  if (!(s.h > 0.0)) rep.errors.push_back("h > 0 violated");
  if (s.n_a < 0) rep.errors.push_back("n_a >= 0 violated");
  check_tier(s.tier_a, "tier_a", rep);
  check_tier(s.tier_t, "tier_t", rep);
  if (!(s.chi.chi0 >= 0.0 && s.chi.chi0 <= 1.0)) rep.errors.push_back("chi0 in [0, 1] violated");
  if (!(s.tau > 0.0)) {
    std::string msg = "tau > 0 violated";
    if (s.tau < 0.0) msg += " (negative value looks like dB; use tau_db)";
    rep.errors.push_back(msg);
  }
  if (!(s.sigma_n2 >= 0.0)) {
    std::string msg = "sigma_n2 >= 0 violated";
    if (s.sigma_n2 < 0.0) msg += " (negative value looks like dB; use sigma_n2_db)";
    rep.errors.push_back(msg);
  }
  if (s.tier_t.alpha == 2.0)
    rep.warnings.push_back("alpha_t = 2: aggregate terrestrial interference diverges");
  if (s.sigma_n2 > 1e-3) rep.warnings.push_back("sigma_n2 above 1 mW, check units (W expected)");
  if (s.tau > 1e3) rep.warnings.push_back("tau above 30 dB, check it is linear");
  for (double v : {s.lambda0, s.r_d, s.r_u, s.h, s.tau, s.sigma_n2, s.chi.chi0}) {
    if (!std::isfinite(v)) {
      rep.errors.push_back("non-finite scenario field");
      break;
    }
  }
  return rep;
}

Scenario validate_scenario(const Scenario& s) {
  auto rep = check_scenario(s);
  if (!rep.ok()) throw ValidationError(std::move(rep.errors));
  return s;
}

double eval_chi(const ResilienceProfile& p, double r, double r_d) {
  r = std::max(r, 0.0);
  if (r > r_d) return 1.0;
  const double t = r / r_d;
  double shape = 0.0;
  switch (p.family) {
    case ProfileFamily::constant: return p.chi0;
    case ProfileFamily::linear: shape = t; break;
    case ProfileFamily::sqrt: shape = std::sqrt(t); break;
    case ProfileFamily::exponential: shape = std::expm1(t) / (std::numbers::e - 1.0); break;
  }
  return std::clamp(p.chi0 + (1.0 - p.chi0) * shape, 0.0, 1.0);
}

double lambda_t(const Scenario& s, double r) {
  if (r > s.r_d) return s.lambda0;
  return s.lambda0 * eval_chi(s.chi, r, s.r_d);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Scenario lap_preset() {
  Scenario s;
  s.lambda0 = 3e-6;
  s.r_d = 1000.0;
  s.r_u = 0.0;
  s.h = 200.0;
  s.n_a = 1;
  s.tier_a = {5.0, db_to_linear(-1.6), 3.0, 2};
  s.tier_t = {10.0, db_to_linear(-2.0), 3.5, 1};
  s.chi = {ProfileFamily::constant, 0.0};
  s.tau = db_to_linear(-5.0);
  s.sigma_n2 = 1e-12;
  return s;
}

Scenario hap_preset() {
  Scenario s = lap_preset();
  s.r_d = 10000.0;
  s.h = 20000.0;
  s.tier_a.rho = 50.0;
  s.tier_a.alpha = 2.5;
  return s;
}

}  // namespace uavcov
