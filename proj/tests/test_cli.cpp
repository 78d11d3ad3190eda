#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "uavcov/scenario_io.hpp"
#include "uavcov/sweep.hpp"
#include "uavcov/validate.hpp"

using namespace uavcov;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(UAVCOV_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("uavcov_test_" + name);
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

int parse_error_line(const std::string& text) {
  try {
    parse_scenario(text, "t.scn");
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

const std::string kLapText = std::string(scenario_preset_text("lap"));

std::string replace_line(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("shipped scenario files load to the built-in presets") {
  const fs::path dir = fs::path(UAVCOV_SOURCE_DIR) / "presets";
  for (const std::string name : {"lap", "hap"}) {
    CHECK(slurp(dir / (name + ".scn")) == scenario_preset_text(name));
  }
  const Scenario lap = load_scenario(dir / "lap.scn");
  const Scenario ref = lap_preset();
  CHECK(lap.lambda0 == ref.lambda0);
  CHECK(lap.tau == doctest::Approx(ref.tau).epsilon(1e-15));
  CHECK(lap.tier_a.eta == doctest::Approx(ref.tier_a.eta).epsilon(1e-15));
  CHECK(lap.tier_t.m == 1);
  CHECK(lap.tier_a.m == 2);
  CHECK(lap.h == 200.0);
  const Scenario hap = load_scenario(dir / "hap.scn");
  CHECK(hap.h == hap_preset().h);
  CHECK(hap.tier_a.alpha == 2.5);
}

TEST_CASE("canonical text parses back to the same scenario") {
  Scenario s = hap_preset();
  s.chi = {ProfileFamily::exponential, 0.25};
  s.n_a = 4;
  const Scenario back = parse_scenario(format_scenario(s));
  CHECK(back.chi.family == ProfileFamily::exponential);
  CHECK(back.chi.chi0 == 0.25);
  CHECK(back.n_a == 4);
  CHECK(back.tau == s.tau);
  CHECK(back.tier_t.eta == s.tier_t.eta);
}

TEST_CASE("scenario file errors") {
  CHECK_THROWS_WITH_AS(parse_scenario("", "empty.scn"), doctest::Contains("lambda0"), ParseError);
  CHECK(parse_error_line(kLapText + "bogus = 1\n") == static_cast<int>(lines(kLapText).size()) + 1);
  CHECK(parse_error_line(replace_line(kLapText, "h = 200\n", "h = 200\nr_d = 5\n")) ==
        static_cast<int>(lines(kLapText.substr(0, kLapText.find("h = 200"))).size()) + 2);
  CHECK_THROWS_AS(parse_scenario(replace_line(kLapText, "n_a = 1", "n_a = 1.5")), ParseError);
  CHECK_THROWS_AS(parse_scenario(replace_line(kLapText, "tau_db = -5", "tau = -5")), ValidationError);
  CHECK_THROWS_AS(parse_scenario(replace_line(kLapText, "h = 200", "h_db = 23")), ParseError);
  // alpha_T = 1 in the terrestrial section.
  const std::string bad_alpha = kLapText.substr(0, kLapText.rfind("alpha")) + "alpha = 1.0\nm = 1\n";
  CHECK_THROWS_WITH_AS(parse_scenario(bad_alpha), doctest::Contains("alpha >= 2"), ValidationError);
}

TEST_CASE("tau may be given in dB or linear") {
  const Scenario db = parse_scenario(kLapText);
  const Scenario lin = parse_scenario(replace_line(kLapText, "tau_db = -5", "tau = 0.316227766016838"));
  CHECK(db.tau == doctest::Approx(lin.tau).epsilon(1e-14));
}

TEST_CASE("overrides") {
  Scenario s = lap_preset();
  apply_override(s, "n_a=3");
  apply_override(s, "tau_db = 0");
  apply_override(s, "alpha_t=4");
  apply_override(s, "chi_family=sqrt");
  CHECK(s.n_a == 3);
  CHECK(s.tau == doctest::Approx(1.0));
  CHECK(s.tier_t.alpha == 4.0);
  CHECK(s.chi.family == ProfileFamily::sqrt);
  CHECK_THROWS(apply_override(s, "nonsense=1"));
  CHECK_THROWS(apply_override(s, "n_a"));
}

TEST_CASE("sweep grids") {
  const auto lg = log_grid(100.0, 1e4, 3);
  CHECK(lg[1] == doctest::Approx(1000.0));
  const auto ln = linear_grid(0.0, 1.0, 5);
  CHECK(ln.size() == 5);
  CHECK(ln.back() == 1.0);
  CHECK(apply_sweep_value(lap_preset(), SweepVar::n_a, 2.6).n_a == 3);
  CHECK(parse_methods("all").size() == 3);
  CHECK_THROWS(parse_methods("guess"));
}

TEST_CASE("n_a sweep pinned at zero is the terrestrial-only baseline") {
  Scenario s = lap_preset();
  SweepSpec spec;
  spec.variable = SweepVar::n_a;
  spec.grid = {0.0};
  const auto rows = run_sweep(s, spec, {});
  REQUIRE(rows.size() == 1);
  s.n_a = 0;
  CHECK(rows[0].result->p_c == total_coverage(s, Method::approximate).p_c);
  CHECK(rows[0].result->assoc_a == 0.0);
}

TEST_CASE("intact-network rows of the resilience preset") {
  const SweepPreset p = sweep_preset("fig5");
  for (const SweepSeries& ser : p.series) {
    if (ser.label != "r_d=10000;n_a=0" && ser.label != "r_d=10000;n_a=1") continue;
    const Scenario s = apply_sweep_value(ser.base, SweepVar::chi0, 1.0);
    const double pc = total_coverage(s, Method::approximate).p_c;
    INFO(ser.label);
    CHECK(pc > 0.7);
    CHECK(pc < 0.8);
  }
}

TEST_CASE("sweep preset rows: analytic against simulation") {
  SweepPreset p = sweep_preset("fig4a");
  REQUIRE_FALSE(p.series.empty());
  SweepOptions opt;
  opt.mc.trials = 20000;
  opt.mc.seed = 4;
  // A thinned grid of one series keeps the runtime modest.
  SweepSeries ser = p.series[1];
  ser.spec.grid = {0.0, 600.0, 1200.0, 2000.0};
  ser.spec.methods = {Method::approximate, Method::monte_carlo};
  const auto rows = run_sweep(ser.base, ser.spec, opt);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    const auto& a = *rows[i].result;
    const auto& m = *rows[i + 1].result;
    const double hw = 0.5 * (*m.ci_high - *m.ci_low);
    INFO("r_u=" << rows[i].value << " analytic=" << a.p_c << " mc=" << m.p_c);
    CHECK(std::abs(a.p_c - m.p_c) <= std::max(0.015, hw));
  }
}

TEST_CASE("CSV schema") {
  std::ostringstream out;
  write_csv_header(out);
  SweepRow row;
  row.sweep_var = "r_u";
  row.value = 250;
  row.method = Method::exact;
  row.error = "bad, \"quoted\"";
  write_csv_row(out, row);
  const auto ls = lines(out.str());
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "sweep_var,value,method,p_c,assoc_a,assoc_t,ci_low,ci_high,trials,quad_err,error");
  CHECK(ls[1].rfind("r_u,250,exact,", 0) == 0);
  CHECK(ls[1].find("\"bad, \"\"quoted\"\"\"") != std::string::npos);
}

TEST_CASE("cli eval") {
  const RunResult r = run("eval --scenario lap --method approximate");
  CHECK(r.status == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[1].rfind(",,approximate,", 0) == 0);
  const double pc = std::stod(ls[1].substr(std::string(",,approximate,").size()));
  CHECK(pc == doctest::Approx(total_coverage(lap_preset(), Method::approximate).p_c).epsilon(1e-9));
}

TEST_CASE("cli exit codes") {
  CHECK(run("eval --set alpha_t=1.0").status == 2);
  CHECK(run("eval --config /nonexistent/file.scn").status != 0);
  CHECK(run("eval --bogus-flag").status == 1);
  CHECK(run("sweep --var r_u").status == 1);
  const fs::path bad = temp_file("bad.scn", kLapText + "unknown_key = 3\n");
  const RunResult r = run("eval --config " + bad.string());
  CHECK(r.status == 2);
  fs::remove(bad);
  CHECK(run("eval --rel-tol 1e-15 --set n_a=3 --set r_u=500").status == 3);
}

TEST_CASE("cli presets listing and show") {
  const RunResult list = run("presets");
  CHECK(list.status == 0);
  CHECK(list.out.find("fig3a") != std::string::npos);
  CHECK(list.out.find("hap") != std::string::npos);
  CHECK(run("presets --show hap").out == scenario_preset_text("hap"));
}

TEST_CASE("cli sweep is reproducible across thread counts") {
  const std::string args =
      "sweep --scenario lap --var r_u --grid 0,800 --method all --trials 3000 --seed 9";
  const RunResult one = run(args + " --threads 1");
  const RunResult three = run(args + " --threads 3");
  CHECK(one.status == 0);
  CHECK(one.out == three.out);
  CHECK(lines(one.out).size() == 7);
}

TEST_CASE("validate passes on the low-altitude preset and is reproducible") {
  ValidateOptions opt;
  opt.mc.trials = 100000;
  opt.mc.seed = 2;
  opt.threads = 1;
  const ValidateReport rep = validate_cmd(lap_preset(), opt);
  std::ostringstream text;
  print_report(text, rep);
  INFO(text.str());
  CHECK(rep.passed());
  CHECK(rep.checks.size() >= 10);

  const RunResult a = run("validate --scenario lap --trials 8000 --seed 5 --threads 1");
  const RunResult b = run("validate --scenario lap --trials 8000 --seed 5 --threads 2");
  CHECK(a.out == b.out);
  CHECK(a.out.find("overall") != std::string::npos);

  std::ostringstream csv;
  write_report_csv(csv, rep);
  const auto ls = lines(csv.str());
  CHECK(ls.size() == rep.checks.size() + 1);
}
