#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omcond/params.hpp"

namespace omcond {

struct AxisSpec {
  std::string name;   // a sweepable parameter (see config.cpp axis table)
  double min, max;    // in config units (Hz for frequencies unless rad_s mode)
  int count;          // >= 2
  bool log_scale;
};

struct RunConfig {
  SystemParams base{};       // angular frequencies [rad/s] after ingestion
  bool theta_is_opt = false; // `theta = opt`: use theta_opt per evaluation point
  bool hz_units = true;      // config frequencies were ordinary Hz
  std::optional<AxisSpec> axis1, axis2;
  std::vector<std::string> outputs;   // quantity names for sweeps
  double delta = 0.0;                 // gravitational coupling for EN quantities
  double tol = 1e-8;                  // quadrature relative tolerance
  std::string out_path;               // empty = stdout
  std::string format = "csv";         // csv | json
  double omega_min = 1e-5;            // spectrum grid, config units
  double omega_max = 1e-1;
  int omega_points = 200;
  bool overlay_theta_opt = false;
};

// Flat `key = value` text, `#` comments; unknown keys, malformed values and
// missing required keys are reported with line numbers via config_error.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Grid coordinates of an axis, in config units.
std::vector<double> axis_values(const AxisSpec& axis);

// Set a swept parameter on a cell's SystemParams; converts Hz->rad/s for
// frequency-like axes when the config used Hz.
void apply_axis(SystemParams& p, const std::string& name, double value,
                bool hz_units);

bool axis_name_known(const std::string& name);
bool quantity_known(const std::string& name);
bool quantity_is_spectral(const std::string& name);  // per-omega, not per-cell

}  // namespace omcond
