#include "uavcov/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "uavcov/parallel.hpp"

namespace uavcov {

std::string_view to_string(SweepVar v) {
  switch (v) {
    case SweepVar::r_d: return "r_d";
    case SweepVar::r_u: return "r_u";
    case SweepVar::chi0: return "chi0";
    case SweepVar::n_a: return "n_a";
    case SweepVar::tau: return "tau";
  }
  return "r_d";
}

SweepVar parse_sweep_var(std::string_view name) {
  for (SweepVar v : {SweepVar::r_d, SweepVar::r_u, SweepVar::chi0, SweepVar::n_a, SweepVar::tau}) {
    if (name == to_string(v)) return v;
  }
  throw std::invalid_argument("unknown sweep variable '" + std::string(name) +
                              "' (r_d, r_u, chi0, n_a, tau)");
}

std::vector<Method> parse_methods(std::string_view name) {
  if (name == "approximate") return {Method::approximate};
  if (name == "exact") return {Method::exact};
  if (name == "mc" || name == "monte_carlo") return {Method::monte_carlo};
  if (name == "all") return {Method::approximate, Method::exact, Method::monte_carlo};
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (approximate, exact, mc, all)");
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0 && hi > 0.0)) throw std::invalid_argument("log grid needs positive limits");
  std::vector<double> g = linear_grid(std::log10(lo), std::log10(hi), points);
  for (double& x : g) x = std::pow(10.0, x);
  g.front() = lo;
  g.back() = hi;
  return g;
}

Scenario apply_sweep_value(Scenario s, SweepVar var, double value) {
  switch (var) {
    case SweepVar::r_d: s.r_d = value; break;
    case SweepVar::r_u: s.r_u = value; break;
    case SweepVar::chi0: s.chi.chi0 = value; break;
    case SweepVar::n_a: s.n_a = static_cast<int>(std::lround(value)); break;
    case SweepVar::tau: s.tau = value; break;
  }
  return s;
}

SweepRow evaluate_point(const Scenario& s, Method method, const SweepOptions& opt,
                        std::string sweep_var, double value, int mc_threads) {
  SweepRow row;
  row.sweep_var = std::move(sweep_var);
  row.value = value;
  row.method = method;
  try {
    if (method == Method::monte_carlo) {
      row.result = estimate(s, opt.mc, mc_threads).result;
    } else {
      row.result = total_coverage(s, method, opt.quad);
      if (!row.result->converged) {
        row.non_converged = true;
        char buf[96];
        std::snprintf(buf, sizeof buf, "quadrature did not converge (error estimate %.3g)",
                      row.result->quad_err);
        row.error = buf;
      }
    }
  } catch (const std::exception& e) {
    row.result.reset();
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& spec,
                                const SweepOptions& opt) {
  if (spec.grid.empty()) throw std::invalid_argument("sweep grid is empty");
  if (spec.methods.empty()) throw std::invalid_argument("sweep needs at least one method");
  const std::size_t nm = spec.methods.size();
  std::vector<SweepRow> rows(spec.grid.size() * nm);
  const std::string var(to_string(spec.variable));
  parallel_for(rows.size(), opt.threads, [&](std::size_t i) {
    const double value = spec.grid[i / nm];
    const Scenario s = apply_sweep_value(base, spec.variable, value);
    rows[i] = evaluate_point(s, spec.methods[i % nm], opt, var, value);
  });
  return rows;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

void write_csv_header(std::ostream& out) {
  out << "sweep_var,value,method,p_c,assoc_a,assoc_t,ci_low,ci_high,trials,quad_err,error\n";
}

void write_csv_row(std::ostream& out, const SweepRow& row) {
  out << row.sweep_var << ',' << (row.sweep_var.empty() ? "" : num(row.value)) << ','
      << to_string(row.method) << ',';
  if (row.result) {
    const CoverageResult& r = *row.result;
    out << num(r.p_c) << ',' << num(r.assoc_a) << ',' << num(r.assoc_t) << ',';
    out << (r.ci_low ? num(*r.ci_low) : "") << ',' << (r.ci_high ? num(*r.ci_high) : "") << ',';
    out << (r.trials ? std::to_string(*r.trials) : "") << ',';
    out << (r.method == Method::monte_carlo ? "" : num(r.quad_err)) << ',';
  } else {
    out << ",,,,,,,";
  }
  out << csv_escape(row.error) << '\n';
}

std::vector<std::string> sweep_preset_names() {
  return {"fig3a", "fig3b", "fig4a", "fig4b", "fig5", "fig6"};
}

SweepPreset sweep_preset(std::string_view name) {
  const Scenario lap = lap_preset();
  const Scenario hap = hap_preset();
  SweepPreset p;
  p.name = std::string(name);
  auto fleet_series = [&](const Scenario& base, SweepVar var, const std::vector<double>& grid,
                          std::initializer_list<int> fleets) {
    for (int n : fleets) {
      Scenario s = base;
      s.n_a = n;
      p.series.push_back({"n_a=" + std::to_string(n), s, {var, grid, {Method::approximate}}});
    }
  };
  if (name == "fig3a") {
    p.description = "coverage vs disaster radius, LAP fleets, chi=0, r_u=0";
    fleet_series(lap, SweepVar::r_d, log_grid(100.0, 1e4, 21), {0, 1, 2, 4, 8});
  } else if (name == "fig3b") {
    p.description = "coverage vs disaster radius, HAP fleets, chi=0, r_u=0";
    fleet_series(hap, SweepVar::r_d, log_grid(100.0, 1e5, 25), {0, 1, 2, 4});
  } else if (name == "fig4a") {
    p.description = "coverage vs UE distance from epicenter, LAP fleets, r_d=1 km, chi=0";
    fleet_series(lap, SweepVar::r_u, linear_grid(0.0, 2500.0, 26), {0, 1, 2, 3, 8});
  } else if (name == "fig4b") {
    p.description = "coverage vs UE distance from epicenter, HAP fleets, r_d=10 km, chi=0";
    fleet_series(hap, SweepVar::r_u, linear_grid(0.0, 25000.0, 26), {0, 1, 2, 4});
  } else if (name == "fig5") {
    p.description = "coverage vs uniform QoR, HAP, r_u=0, r_d in {1, 10} km";
    for (double r_d : {1000.0, 10000.0}) {
      for (int n : {0, 1}) {
        Scenario s = hap;
        s.r_d = r_d;
        s.n_a = n;
        p.series.push_back({"r_d=" + num(r_d) + ";n_a=" + std::to_string(n), s,
                            {SweepVar::chi0, linear_grid(0.0, 1.0, 11), {Method::approximate}}});
      }
    }
  } else if (name == "fig6") {
    p.description = "coverage vs UE distance for QoR profile families, r_d=2 km, chi0=0.5, n_a=0";
    Scenario base = lap;
    base.r_d = 2000.0;
    base.n_a = 0;
    base.chi.chi0 = 0.5;
    const auto grid = linear_grid(0.0, 4000.0, 41);
    for (ProfileFamily f : {ProfileFamily::constant, ProfileFamily::sqrt, ProfileFamily::linear,
                            ProfileFamily::exponential}) {
      Scenario s = base;
      s.chi.family = f;
      p.series.push_back({"chi=" + std::string(to_string(f)), s,
                          {SweepVar::r_u, grid, {Method::approximate}}});
    }
    Scenario intact = base;
    intact.chi.chi0 = 1.0;
    p.series.push_back({"chi=intact", intact, {SweepVar::r_u, grid, {Method::approximate}}});
  } else {
    throw std::invalid_argument("unknown sweep preset '" + std::string(name) +
                                "' (fig3a, fig3b, fig4a, fig4b, fig5, fig6)");
  }
  return p;
}

std::vector<SweepRow> run_preset(const SweepPreset& preset, const SweepOptions& opt,
                                 std::ostream& out,
                                 const std::optional<std::vector<Method>>& methods) {
  write_csv_header(out);
  std::vector<SweepRow> all;
  for (const SweepSeries& series : preset.series) {
    SweepSpec spec = series.spec;
    if (methods) spec.methods = *methods;
    out << "# preset=" << preset.name << " series=" << series.label << '\n';
    for (SweepRow& row : run_sweep(series.base, spec, opt)) {
      write_csv_row(out, row);
      all.push_back(std::move(row));
    }
  }
  return all;
}

}  // namespace uavcov
