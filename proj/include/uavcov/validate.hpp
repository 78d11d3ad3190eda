#pragma once
// Self-check harness: analytic invariants plus analytic-vs-simulation
// agreement for one scenario.

#include <iosfwd>
#include <string>
#include <vector>

#include "uavcov/montecarlo.hpp"
#include "uavcov/quadrature.hpp"

namespace uavcov {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;  ///< observed statistic
  double limit = 0.0;  ///< pass iff value <= limit
  std::string detail;

  double margin() const { return limit - value; }
};

struct ValidateOptions {
  MCConfig mc;
  QuadConfig quad;
  int threads = 1;
};

struct ValidateReport {
  std::uint64_t seed = 0;
  long long trials = 0;
  std::vector<Check> checks;

  bool passed() const;
};

ValidateReport validate_cmd(const Scenario& s, const ValidateOptions& opt);

void print_report(std::ostream& out, const ValidateReport& rep);
void write_report_csv(std::ostream& out, const ValidateReport& rep);

}  // namespace uavcov
