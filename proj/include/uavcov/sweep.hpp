#pragma once
// Parameter sweeps and their CSV encoding.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavcov/coverage.hpp"
#include "uavcov/montecarlo.hpp"
#include "uavcov/quadrature.hpp"

namespace uavcov {

enum class SweepVar { r_d, r_u, chi0, n_a, tau };

std::string_view to_string(SweepVar v);
SweepVar parse_sweep_var(std::string_view name);
/// "approximate", "exact", "mc"/"monte_carlo", or "all".
std::vector<Method> parse_methods(std::string_view name);

struct SweepSpec {
  SweepVar variable = SweepVar::r_d;
  std::vector<double> grid;
  std::vector<Method> methods{Method::approximate};
};

std::vector<double> linear_grid(double lo, double hi, int points);
std::vector<double> log_grid(double lo, double hi, int points);

/// `s` with the swept field set to `value` (n_a rounded to nearest).
Scenario apply_sweep_value(Scenario s, SweepVar var, double value);

struct SweepOptions {
  QuadConfig quad;
  MCConfig mc;
  int threads = 1;
};

struct SweepRow {
  std::string sweep_var;  ///< empty for single-point evaluations
  double value = 0.0;
  Method method = Method::approximate;
  std::optional<CoverageResult> result;
  std::string error;
  bool non_converged = false;
};

/// One point, one method. Failures land in row.error.
SweepRow evaluate_point(const Scenario& s, Method method, const SweepOptions& opt,
                        std::string sweep_var = {}, double value = 0.0, int mc_threads = 1);

/// Rows in grid order, methods in the order given, independent of thread count.
std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec,
                                const SweepOptions& opt);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRow& row);

struct SweepSeries {
  std::string label;
  Scenario base;
  SweepSpec spec;
};

struct SweepPreset {
  std::string name;
  std::string description;
  std::vector<SweepSeries> series;
};

std::vector<std::string> sweep_preset_names();
SweepPreset sweep_preset(std::string_view name);

/// Header, then per series a `# preset=<name> series=<label>` line and its rows.
/// `methods` replaces each series' method list when given. Returns all rows.
std::vector<SweepRow> run_preset(const SweepPreset& preset, const SweepOptions& opt,
                                 std::ostream& out,
                                 const std::optional<std::vector<Method>>& methods = {});

}  // namespace uavcov
