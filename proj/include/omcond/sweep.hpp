#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "omcond/config.hpp"
#include "omcond/error.hpp"

namespace omcond {

struct SpectrumRow {
  double omega;  // config units (Hz unless rad_s mode)
  double S_qq, S_pp;                  // unconditional
  double S_qq_c, S_pp_c, ReS_qp_c;    // conditional
  cell_status status;                 // non-ok rows blank the conditional columns
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;
};

SpectrumTable run_spectrum(const RunConfig& cfg);
std::string spectrum_to_csv(const SpectrumTable& t);

struct SweepResult {
  AxisSpec axis1, axis2;
  std::vector<double> v1, v2;          // grid coordinates, config units
  std::vector<std::string> quantities;
  // Cell-major values: values[(i1*n2 + i2)*nq + k]; NaN where status != ok.
  std::vector<double> values;
  std::vector<cell_status> status;     // per cell
  std::vector<double> overlay;         // theta_opt per axis1 value; may be empty
};

// Evaluates all cells; deterministic for any thread count (preallocated
// buffers, fixed partition, no shared mutable state).
SweepResult run_sweep2d(const RunConfig& cfg, int threads);
std::string sweep_to_csv(const SweepResult& s);
std::string sweep_overlay_csv(const SweepResult& s);
nlohmann::ordered_json sweep_to_json(const SweepResult& s);

// Single-point report: derived chain, covariances (closed forms + quadrature
// self-check), squeezing summary, and entanglement when delta > 0.
nlohmann::ordered_json run_report(const RunConfig& cfg);

}  // namespace omcond
