// uavcov: coverage evaluation, sweeps and self-validation from the command line.
//
// Exit codes: 0 ok, 1 usage, 2 invalid scenario or failed validation,
// 3 numerical non-convergence.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "uavcov/parallel.hpp"
#include "uavcov/scenario_io.hpp"
#include "uavcov/sweep.hpp"
#include "uavcov/validate.hpp"

namespace {

using namespace uavcov;

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNonConverged = 3;

struct CommonArgs {
  std::string config;
  std::string scenario_preset = "lap";
  std::vector<std::string> overrides;
  std::string method = "approximate";
  std::uint64_t seed = 1;
  long long trials = 100000;
  std::string out = "stdout";
  double rel_tol = QuadConfig{}.rel_tol;
  int threads = 0;
  double window = 0.0;
};

void add_scenario_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config, "Scenario file");
  cmd->add_option("--scenario", a.scenario_preset, "Built-in scenario when --config is absent")
      ->check(CLI::IsMember({"lap", "hap"}));
  cmd->add_option("--set", a.overrides, "Override a scenario key, e.g. --set n_a=3 --set tau_db=0");
  cmd->add_option("--rel-tol", a.rel_tol, "Relative quadrature tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", a.out, "Output path or 'stdout'");
  cmd->add_option("--threads", a.threads, "Worker threads (default: COVERAGE_THREADS or cores)");
}

void add_mc_flags(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--seed", a.seed, "Master RNG seed");
  cmd->add_option("--trials", a.trials, "Monte Carlo trials")->check(CLI::Range(1LL, 1LL << 40));
  cmd->add_option("--window", a.window, "Simulation window radius around the UE [m] (0: automatic)")
      ->check(CLI::NonNegativeNumber);
}

Scenario build_scenario(const CommonArgs& a) {
  Scenario s = a.config.empty() ? scenario_preset(a.scenario_preset) : load_scenario(a.config);
  for (const auto& o : a.overrides) apply_override(s, o);
  return validate_scenario(s);
}

SweepOptions build_options(const CommonArgs& a) {
  SweepOptions opt;
  // The absolute floor follows the relative tolerance so --rel-tol stays effective on small integrals.
  const QuadConfig defaults;
  opt.quad.rel_tol = a.rel_tol;
  opt.quad.abs_tol = std::min(defaults.abs_tol, defaults.abs_tol * a.rel_tol / defaults.rel_tol);
  opt.mc.seed = a.seed;
  opt.mc.trials = a.trials;
  opt.mc.r_max = a.window;
  opt.threads = a.threads > 0 ? a.threads : thread_count_from_env();
  return opt;
}

// Buffers output so a failing run never leaves a half-written file.
class Output {
 public:
  explicit Output(std::string target) : target_(std::move(target)) {}
  std::ostream& stream() { return buf_; }
  void flush() {
    if (target_ == "stdout" || target_ == "-") {
      std::cout << buf_.str() << std::flush;
      return;
    }
    std::ofstream f(target_, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + target_);
    f << buf_.str();
  }

 private:
  std::string target_;
  std::ostringstream buf_;
};

int finish_rows(const std::vector<SweepRow>& rows) {
  bool non_converged = false;
  for (const auto& r : rows) {
    if (r.error.empty()) continue;
    std::cerr << "warning: ";
    if (!r.sweep_var.empty()) std::cerr << r.sweep_var << '=' << r.value << ' ';
    std::cerr << to_string(r.method) << ": " << r.error << '\n';
    non_converged = non_converged || r.non_converged;
  }
  return non_converged ? kExitNonConverged : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage of UAV-aided cellular networks after a disaster"};
  app.require_subcommand(1);

  CommonArgs eval_args, sweep_args, validate_args;

  auto* eval = app.add_subcommand("eval", "Coverage probability at one scenario point (CSV)");
  add_scenario_flags(eval, eval_args);
  add_mc_flags(eval, eval_args);
  eval->add_option("--method", eval_args.method, "approximate|exact|mc|all")
      ->check(CLI::IsMember({"approximate", "exact", "mc", "monte_carlo", "all"}));

  std::string sweep_preset_name, sweep_var, grid_list, range;
  bool grid_db = false;
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep, one CSV row per point and method");
  add_scenario_flags(sweep, sweep_args);
  add_mc_flags(sweep, sweep_args);
  auto* method_opt = sweep->add_option("--method", sweep_args.method, "approximate|exact|mc|all")
                         ->check(CLI::IsMember({"approximate", "exact", "mc", "monte_carlo", "all"}));
  sweep->add_option("--preset", sweep_preset_name, "Sweep preset: fig3a fig3b fig4a fig4b fig5 fig6");
  sweep->add_option("--var", sweep_var, "Swept field: r_d r_u chi0 n_a tau");
  sweep->add_option("--grid", grid_list, "Comma-separated grid values");
  sweep->add_option("--range", range, "min:max:points[:log]");
  sweep->add_flag("--grid-db", grid_db, "Grid values are dB (tau only)");

  std::string report_csv;
  auto* validate = app.add_subcommand("validate", "Invariant checks and analytic-vs-simulation agreement");
  add_scenario_flags(validate, validate_args);
  add_mc_flags(validate, validate_args);
  validate->add_option("--csv", report_csv, "Also write the report as CSV to this path");

  std::string show;
  auto* presets = app.add_subcommand("presets", "List built-in scenarios and sweep presets");
  presets->add_option("--show", show, "Print a built-in scenario file (lap, hap)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*presets) {
      if (!show.empty()) {
        std::cout << scenario_preset_text(show);
        return 0;
      }
      std::cout << "scenarios:\n";
      for (const auto& n : scenario_preset_names()) std::cout << "  " << n << '\n';
      std::cout << "sweeps:\n";
      for (const auto& n : sweep_preset_names()) {
        std::cout << "  " << n << "  " << sweep_preset(n).description << '\n';
      }
      return 0;
    }

    if (*eval) {
      const Scenario s = build_scenario(eval_args);
      const SweepOptions opt = build_options(eval_args);
      Output out(eval_args.out);
      write_csv_header(out.stream());
      std::vector<SweepRow> rows;
      for (Method m : parse_methods(eval_args.method)) {
        rows.push_back(evaluate_point(s, m, opt, {}, 0.0, opt.threads));
        write_csv_row(out.stream(), rows.back());
      }
      out.flush();
      for (const auto& r : rows) {
        if (!r.result) throw std::runtime_error(r.error);
      }
      return finish_rows(rows);
    }

    if (*sweep) {
      const SweepOptions opt = build_options(sweep_args);
      Output out(sweep_args.out);
      std::vector<SweepRow> rows;
      if (!sweep_preset_name.empty()) {
        if (!sweep_var.empty() || !grid_list.empty() || !range.empty()) {
          std::cerr << "--preset cannot be combined with --var/--grid/--range\n";
          return kExitUsage;
        }
        std::optional<std::vector<Method>> methods;
        if (method_opt->count() > 0) methods = parse_methods(sweep_args.method);
        rows = run_preset(sweep_preset(sweep_preset_name), opt, out.stream(), methods);
      } else {
        if (sweep_var.empty() || grid_list.empty() == range.empty()) {
          std::cerr << "sweep needs --preset, or --var with exactly one of --grid/--range\n";
          return kExitUsage;
        }
        SweepSpec spec;
        spec.variable = parse_sweep_var(sweep_var);
        spec.methods = parse_methods(sweep_args.method);
        if (!grid_list.empty()) {
          std::stringstream ss(grid_list);
          for (std::string item; std::getline(ss, item, ',');) spec.grid.push_back(std::stod(item));
        } else {
          std::vector<std::string> parts;
          std::stringstream ss(range);
          for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
          if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log" &&
                                                       parts[3] != "linear")) {
            std::cerr << "--range expects min:max:points[:log|linear]\n";
            return kExitUsage;
          }
          const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
          const int n = std::stoi(parts[2]);
          spec.grid = parts.size() == 4 && parts[3] == "log" ? log_grid(lo, hi, n)
                                                             : linear_grid(lo, hi, n);
        }
        if (grid_db) {
          if (spec.variable != SweepVar::tau) {
            std::cerr << "--grid-db only applies to --var tau\n";
            return kExitUsage;
          }
          for (double& g : spec.grid) g = db_to_linear(g);
        }
        const Scenario base = build_scenario(sweep_args);
        write_csv_header(out.stream());
        rows = run_sweep(base, spec, opt);
        for (const auto& r : rows) write_csv_row(out.stream(), r);
      }
      out.flush();
      return finish_rows(rows);
    }

    if (*validate) {
      const Scenario s = build_scenario(validate_args);
      const SweepOptions so = build_options(validate_args);
      ValidateOptions opt;
      opt.mc = so.mc;
      opt.quad = so.quad;
      opt.threads = so.threads;
      const ValidateReport rep = validate_cmd(s, opt);
      Output out(validate_args.out);
      print_report(out.stream(), rep);
      out.flush();
      if (!report_csv.empty()) {
        Output csv(report_csv);
        write_report_csv(csv.stream(), rep);
        csv.flush();
      }
      return rep.passed() ? 0 : kExitInvalid;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConverged;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
