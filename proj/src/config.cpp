#include "omcond/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "omcond/io.hpp"

namespace omcond {

namespace {

constexpr std::array<const char*, 12> kAxisNames = {
    "m",   "ell",     "Omega", "kappa", "omega_c", "Gamma",
    "gamma_m", "P_in", "T",     "Delta", "theta",   "Delta_over_kappa"};

constexpr std::array<const char*, 15> kQuantities = {
    "Sqq",    "Spp",         "Sqq_cond",    "Spp_cond",   "ReSqp_cond",
    "Vqq",    "Vqp",         "Vpp",         "purity",     "omega_theta",
    "gamma_theta", "theta_opt", "EN",        "nu_minus",   "condition_factor"};

constexpr std::array<const char*, 5> kSpectral = {
    "Sqq", "Spp", "Sqq_cond", "Spp_cond", "ReSqp_cond"};

bool is_frequency_key(const std::string& k) {
  return k == "Omega" || k == "kappa" || k == "omega_c" || k == "Gamma" ||
         k == "gamma_m" || k == "Delta" || k == "omega_min" || k == "omega_max";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawEntry {
  std::string value;
  int line;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  std::ostringstream os;
  os << "line " << line << ": " << msg;
  throw config_error(os.str());
}

double parse_number(const RawEntry& e, const std::string& key) {
  const char* s = e.value.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    fail(e.line, "non-numeric value for '" + key + "': " + e.value);
  return v;
}

bool parse_bool(const RawEntry& e, const std::string& key) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  fail(e.line, "expected true/false for '" + key + "': " + e.value);
}

}  // namespace

bool axis_name_known(const std::string& name) {
  return std::find(kAxisNames.begin(), kAxisNames.end(), name) != kAxisNames.end();
}

bool quantity_known(const std::string& name) {
  return std::find(kQuantities.begin(), kQuantities.end(), name) !=
         kQuantities.end();
}

bool quantity_is_spectral(const std::string& name) {
  return std::find(kSpectral.begin(), kSpectral.end(), name) != kSpectral.end();
}

std::vector<double> axis_values(const AxisSpec& axis) {
  std::vector<double> v(axis.count);
  if (axis.log_scale) {
    const double la = std::log(axis.min), lb = std::log(axis.max);
    for (int i = 0; i < axis.count; ++i)
      v[i] = std::exp(la + (lb - la) * i / (axis.count - 1));
  } else {
    for (int i = 0; i < axis.count; ++i)
      v[i] = axis.min + (axis.max - axis.min) * i / (axis.count - 1);
  }
  return v;
}

void apply_axis(SystemParams& p, const std::string& name, double value,
                bool hz_units) {
  const double two_pi = 2.0 * constants::pi;
  const double f = (hz_units && is_frequency_key(name)) ? two_pi : 1.0;
  if (name == "m") p.m = value;
  else if (name == "ell") p.ell = value;
  else if (name == "Omega") p.Omega_bare = f * value;
  else if (name == "kappa") p.kappa = f * value;
  else if (name == "omega_c") p.omega_c = f * value;
  else if (name == "Gamma") p.Gamma_bare = f * value;
  else if (name == "gamma_m") p.gamma_m = f * value;
  else if (name == "P_in") p.P_in = value;
  else if (name == "T") p.T = value;
  else if (name == "Delta") p.Delta = f * value;
  else if (name == "theta") p.theta = value;
  else if (name == "Delta_over_kappa") p.Delta = value * p.kappa;
  else throw config_error("unknown sweep axis: " + name);
}

RunConfig parse_config(const std::string& text) {
  static const std::set<std::string> known = {
      "m",        "ell",        "Omega",      "kappa",      "omega_c",
      "Gamma",    "gamma_m",    "P_in",       "T",          "Delta",
      "theta",    "units",      "outputs",    "delta",      "tol",
      "out",      "format",     "omega_min",  "omega_max",  "omega_points",
      "overlay_theta_opt",
      "axis1",    "axis1_min",  "axis1_max",  "axis1_count", "axis1_scale",
      "axis2",    "axis2_min",  "axis2_max",  "axis2_count", "axis2_scale"};

  std::map<std::string, RawEntry> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value': " + t);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (!known.count(key)) fail(lineno, "unknown key: " + key);
    if (value.empty()) fail(lineno, "empty value for '" + key + "'");
    if (kv.count(key)) fail(lineno, "duplicate key: " + key);
    kv[key] = {value, lineno};
  }

  const std::array<const char*, 11> required = {
      "m",     "ell",     "Omega", "kappa", "omega_c", "Gamma",
      "gamma_m", "P_in",  "T",     "Delta", "theta"};
  std::string missing;
  for (const char* r : required)
    if (!kv.count(r)) missing += missing.empty() ? r : std::string(", ") + r;
  if (!missing.empty())
    throw config_error("missing required keys: " + missing);

  RunConfig cfg;
  if (kv.count("units")) {
    const auto& e = kv.at("units");
    if (e.value == "rad_s") cfg.hz_units = false;
    else if (e.value == "hz") cfg.hz_units = true;
    else fail(e.line, "units must be 'hz' or 'rad_s'");
  }
  const double fconv = cfg.hz_units ? 2.0 * constants::pi : 1.0;

  auto num = [&](const char* key) { return parse_number(kv.at(key), key); };
  cfg.base.m = num("m");
  cfg.base.ell = num("ell");
  cfg.base.Omega_bare = fconv * num("Omega");
  cfg.base.kappa = fconv * num("kappa");
  cfg.base.omega_c = fconv * num("omega_c");
  cfg.base.Gamma_bare = fconv * num("Gamma");
  cfg.base.gamma_m = fconv * num("gamma_m");
  cfg.base.P_in = num("P_in");
  cfg.base.T = num("T");
  cfg.base.Delta = fconv * num("Delta");
  {
    const auto& e = kv.at("theta");
    if (e.value == "opt") {
      cfg.theta_is_opt = true;
      cfg.base.theta = 0.0;  // placeholder; resolved per evaluation point
    } else {
      cfg.base.theta = normalize_angle(parse_number(e, "theta"));
    }
  }
  try {
    cfg.base.validate();
  } catch (const model_error& err) {
    throw config_error(std::string("invalid parameters: ") + err.what());
  }

  auto parse_axis = [&](const std::string& prefix) -> std::optional<AxisSpec> {
    if (!kv.count(prefix)) {
      for (const char* suffix : {"_min", "_max", "_count", "_scale"})
        if (kv.count(prefix + suffix))
          fail(kv.at(prefix + suffix).line,
               prefix + suffix + " given without " + prefix);
      return std::nullopt;
    }
    AxisSpec ax;
    const auto& e = kv.at(prefix);
    ax.name = e.value;
    if (!axis_name_known(ax.name))
      fail(e.line, "unknown sweep axis: " + ax.name);
    for (const char* suffix : {"_min", "_max", "_count"})
      if (!kv.count(prefix + suffix))
        fail(e.line, "missing " + prefix + suffix);
    ax.min = parse_number(kv.at(prefix + "_min"), prefix + "_min");
    ax.max = parse_number(kv.at(prefix + "_max"), prefix + "_max");
    const auto& ce = kv.at(prefix + "_count");
    const double cd = parse_number(ce, prefix + "_count");
    ax.count = static_cast<int>(cd);
    if (ax.count != cd || ax.count < 2)
      fail(ce.line, prefix + "_count must be an integer >= 2");
    ax.log_scale = false;
    if (kv.count(prefix + "_scale")) {
      const auto& se = kv.at(prefix + "_scale");
      if (se.value == "log") ax.log_scale = true;
      else if (se.value == "linear") ax.log_scale = false;
      else fail(se.line, prefix + "_scale must be 'linear' or 'log'");
    }
    if (ax.log_scale && !(ax.min > 0.0 && ax.max > 0.0))
      fail(e.line, prefix + ": log scale requires positive bounds");
    if (!(ax.max > ax.min)) fail(e.line, prefix + ": max must exceed min");
    return ax;
  };
  cfg.axis1 = parse_axis("axis1");
  cfg.axis2 = parse_axis("axis2");
  if (cfg.axis2 && !cfg.axis1)
    throw config_error("axis2 given without axis1");
  if (cfg.axis1 && cfg.axis2 && cfg.axis1->name == cfg.axis2->name)
    throw config_error("axis1 and axis2 must sweep distinct parameters");

  if (kv.count("outputs")) {
    const auto& e = kv.at("outputs");
    std::istringstream os(e.value);
    std::string item;
    while (std::getline(os, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      if (!quantity_known(item)) fail(e.line, "unknown output quantity: " + item);
      cfg.outputs.push_back(item);
    }
    if (cfg.outputs.empty()) fail(e.line, "outputs list is empty");
  }
  if (kv.count("delta")) {
    cfg.delta = parse_number(kv.at("delta"), "delta");
    if (!(cfg.delta >= 0.0))
      fail(kv.at("delta").line, "delta must be >= 0");
  }
  if (kv.count("tol")) {
    cfg.tol = parse_number(kv.at("tol"), "tol");
    if (!(cfg.tol > 0.0 && cfg.tol <= 1e-2))
      fail(kv.at("tol").line, "tol must lie in (0, 1e-2]");
  }
  if (kv.count("out")) cfg.out_path = kv.at("out").value;
  if (kv.count("format")) {
    cfg.format = kv.at("format").value;
    if (cfg.format != "csv" && cfg.format != "json")
      fail(kv.at("format").line, "format must be 'csv' or 'json'");
  }
  if (kv.count("omega_min")) cfg.omega_min = num("omega_min");
  if (kv.count("omega_max")) cfg.omega_max = num("omega_max");
  if (kv.count("omega_points")) {
    const auto& e = kv.at("omega_points");
    const double v = parse_number(e, "omega_points");
    cfg.omega_points = static_cast<int>(v);
    if (cfg.omega_points != v || cfg.omega_points < 2)
      fail(e.line, "omega_points must be an integer >= 2");
  }
  if (!(cfg.omega_min > 0.0) || !(cfg.omega_max > cfg.omega_min))
    throw config_error("spectrum grid requires 0 < omega_min < omega_max");
  if (kv.count("overlay_theta_opt"))
    cfg.overlay_theta_opt = parse_bool(kv.at("overlay_theta_opt"), "overlay_theta_opt");

  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  return parse_config(text);
}

}  // namespace omcond
