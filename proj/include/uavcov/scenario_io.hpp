#pragma once
// Line-based scenario files.
//
//   # comment
//   [general]            lambda0, r_d, r_u, h, n_a, tau, sigma_n2, chi_family, chi0
//   [tier_a] / [tier_t]  rho, eta, alpha, m
//
// A `_db` suffix on tau, sigma_n2, rho or eta converts 10^(x/10) to linear.
// Tier keys may also appear in [general] with an `_a` / `_t` qualifier
// (e.g. `eta_a_db = -1.6`). chi_family defaults to constant; every other key
// is required.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "uavcov/scenario.hpp"

namespace uavcov {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses and validates. Throws ParseError on syntax, unknown or duplicate
/// keys, missing keys; ValidationError on constraint violations.
Scenario parse_scenario(std::string_view text, const std::string& source = "<string>");

Scenario load_scenario(const std::filesystem::path& path);

/// Applies one `key=value` override using [general] key rules.
void apply_override(Scenario& s, std::string_view assignment);

/// Canonical file text for `s` in linear units.
std::string format_scenario(const Scenario& s);

/// Built-in scenario files ("lap", "hap"), identical to presets/<name>.scn.
std::vector<std::string> scenario_preset_names();
std::string_view scenario_preset_text(std::string_view name);
Scenario scenario_preset(std::string_view name);

}  // namespace uavcov
