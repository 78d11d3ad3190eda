#include "uavcov/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace uavcov {

namespace detail {
extern const std::string_view kLapScenarioText;
extern const std::string_view kHapScenarioText;
}  // namespace detail

namespace {

enum class Section { general, tier_a, tier_t };

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::optional<double> to_double(std::string_view v) {
  double out = 0.0;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) return std::nullopt;
  return out;
}

std::optional<int> to_int(std::string_view v) {
  int out = 0;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) return std::nullopt;
  return out;
}

const std::set<std::string_view> kDbCapable = {"tau", "sigma_n2", "rho", "eta"};
const std::vector<std::string_view> kGeneralKeys = {"lambda0", "r_d", "r_u", "h",   "n_a",
                                                    "tau",     "sigma_n2", "chi0"};
const std::vector<std::string_view> kTierKeys = {"rho", "eta", "alpha", "m"};

// Resolves a raw key in a section to (canonical name, dB flag). Canonical
// names are the general keys, chi_family, or "tier_a.rho"-style tier keys.
struct Resolved {
  std::string canonical;
  bool db = false;
};

std::optional<Resolved> resolve_key(Section sec, std::string_view key) {
  bool db = false;
  if (ends_with(key, "_db")) {
    db = true;
    key.remove_suffix(3);
  }
  auto is_tier_key = [](std::string_view k) {
    for (auto t : kTierKeys)
      if (k == t) return true;
    return false;
  };
  Resolved r;
  r.db = db;
  if (sec != Section::general) {
    if (!is_tier_key(key)) return std::nullopt;
    r.canonical = std::string(sec == Section::tier_a ? "tier_a." : "tier_t.") + std::string(key);
  } else if (key == "chi_family" || key == "chi") {
    r.canonical = "chi_family";
  } else if (std::find(kGeneralKeys.begin(), kGeneralKeys.end(), key) != kGeneralKeys.end()) {
    r.canonical = std::string(key);
  } else if (ends_with(key, "_a") || ends_with(key, "_t")) {
    const char tier = key.back();
    key.remove_suffix(2);
    if (!is_tier_key(key)) return std::nullopt;
    r.canonical = std::string(tier == 'a' ? "tier_a." : "tier_t.") + std::string(key);
  } else {
    return std::nullopt;
  }
  const auto dot = r.canonical.find('.');
  const std::string_view base =
      dot == std::string::npos ? std::string_view(r.canonical)
                               : std::string_view(r.canonical).substr(dot + 1);
  if (db && !kDbCapable.count(base)) return std::nullopt;
  return r;
}

// Assigns one resolved value; returns an error message or empty on success.
std::string assign(Scenario& s, const Resolved& r, std::string_view value) {
  if (r.canonical == "chi_family") {
    try {
      s.chi.family = parse_profile_family(value);
    } catch (const std::invalid_argument& e) {
      return e.what();
    }
    return {};
  }
  const bool integral = r.canonical == "n_a" || r.canonical.ends_with(".m");
  if (integral) {
    const auto v = to_int(value);
    if (!v) return r.canonical + " expects an integer, got '" + std::string(value) + "'";
    (r.canonical == "n_a" ? s.n_a : (r.canonical[5] == 'a' ? s.tier_a.m : s.tier_t.m)) = *v;
    return {};
  }
  auto v = to_double(value);
  if (!v) return r.canonical + " expects a number, got '" + std::string(value) + "'";
  if (r.db) *v = db_to_linear(*v);
  const std::map<std::string, double*> slots = {
      {"lambda0", &s.lambda0},         {"r_d", &s.r_d},
      {"r_u", &s.r_u},                 {"h", &s.h},
      {"tau", &s.tau},                 {"sigma_n2", &s.sigma_n2},
      {"chi0", &s.chi.chi0},           {"tier_a.rho", &s.tier_a.rho},
      {"tier_a.eta", &s.tier_a.eta},   {"tier_a.alpha", &s.tier_a.alpha},
      {"tier_t.rho", &s.tier_t.rho},   {"tier_t.eta", &s.tier_t.eta},
      {"tier_t.alpha", &s.tier_t.alpha}};
  *slots.at(r.canonical) = *v;
  return {};
}

std::string display_key(const std::string& canonical) {
  if (canonical.starts_with("tier_")) {
    return canonical.substr(7) + "_" + canonical[5];
  }
  return canonical;
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + what
                                  : source + ": " + what),
      line_(line) {}

Scenario parse_scenario(std::string_view text, const std::string& source) {
  Scenario s;
  s.chi.family = ProfileFamily::constant;
  std::set<std::string> seen;
  Section sec = Section::general;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source, line_no, "malformed section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (name == "general") sec = Section::general;
      else if (name == "tier_a") sec = Section::tier_a;
      else if (name == "tier_t") sec = Section::tier_t;
      else throw ParseError(source, line_no, "unknown section [" + std::string(name) + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ParseError(source, line_no, "missing value for " + std::string(key));
    const auto r = resolve_key(sec, key);
    if (!r) throw ParseError(source, line_no, "unknown key " + std::string(key));
    if (!seen.insert(r->canonical).second) {
      throw ParseError(source, line_no, "duplicate key " + display_key(r->canonical));
    }
    if (const std::string err = assign(s, *r, value); !err.empty()) {
      throw ParseError(source, line_no, err);
    }
  }
  for (auto k : kGeneralKeys) {
    if (!seen.count(std::string(k))) {
      throw ParseError(source, 0, "missing required key " + std::string(k));
    }
  }
  for (const char* tier : {"tier_a", "tier_t"}) {
    for (auto k : kTierKeys) {
      const std::string c = std::string(tier) + "." + std::string(k);
      if (!seen.count(c)) throw ParseError(source, 0, "missing required key " + display_key(c));
    }
  }
  return validate_scenario(s);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

void apply_override(Scenario& s, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ParseError("--set", 0, "expected key=value, got '" + std::string(assignment) + "'");
  }
  const std::string_view key = trim(assignment.substr(0, eq));
  const std::string_view value = trim(assignment.substr(eq + 1));
  const auto r = resolve_key(Section::general, key);
  if (!r) throw ParseError("--set", 0, "unknown key " + std::string(key));
  if (const std::string err = assign(s, *r, value); !err.empty()) throw ParseError("--set", 0, err);
}

std::string format_scenario(const Scenario& s) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "[general]\n"
     << "lambda0 = " << num(s.lambda0) << "\n"
     << "r_d = " << num(s.r_d) << "\n"
     << "r_u = " << num(s.r_u) << "\n"
     << "h = " << num(s.h) << "\n"
     << "n_a = " << s.n_a << "\n"
     << "tau = " << num(s.tau) << "\n"
     << "sigma_n2 = " << num(s.sigma_n2) << "\n"
     << "chi_family = " << to_string(s.chi.family) << "\n"
     << "chi0 = " << num(s.chi.chi0) << "\n";
  for (const auto& [name, t] : {std::pair{"tier_a", s.tier_a}, std::pair{"tier_t", s.tier_t}}) {
    os << "\n[" << name << "]\n"
       << "rho = " << num(t.rho) << "\n"
       << "eta = " << num(t.eta) << "\n"
       << "alpha = " << num(t.alpha) << "\n"
       << "m = " << t.m << "\n";
  }
  return os.str();
}

std::vector<std::string> scenario_preset_names() { return {"lap", "hap"}; }

std::string_view scenario_preset_text(std::string_view name) {
  if (name == "lap") return detail::kLapScenarioText;
  if (name == "hap") return detail::kHapScenarioText;
  throw std::invalid_argument("unknown scenario preset '" + std::string(name) + "' (lap, hap)");
}

Scenario scenario_preset(std::string_view name) {
  return parse_scenario(scenario_preset_text(name), std::string(name) + ".scn");
}

}  // namespace uavcov
