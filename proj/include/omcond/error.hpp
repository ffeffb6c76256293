#pragma once

#include <stdexcept>
#include <string>

namespace omcond {

enum class errc {
  invalid_params,              // input fails a domain invariant
  optical_spring_instability,  // negative radicand in omega_m
  filter_unstable,             // negative radicand in omega_theta / gamma_theta
  zero_measurement,            // lambda_theta = 0: filter/conditional state undefined
  unconditional_limit,         // gamma_theta - gamma_m below resolution: 0/0 covariance
  unphysical_state,            // covariance violates the Heisenberg bound
  differential_mode_unstable,  // gravitational delta >= 1
  quadrature_failure,          // adaptive integration did not reach tolerance
  approximation_undefined,     // closed-form approximation outside its domain
};

const char* to_string(errc c) noexcept;

// Thrown by every physics-layer failure; carries a machine-readable code.
class model_error : public std::runtime_error {
 public:
  model_error(errc c, const std::string& msg)
      : std::runtime_error(msg), code_(c) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Configuration/CLI failures map to a different process exit code than
// physics failures, so they get their own exception type.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Per-cell outcome of a sweep evaluation.
enum class cell_status { ok, unstable, undefined };

const char* to_string(cell_status s) noexcept;

// Collapse an error code onto the sweep status vocabulary: degenerate-but-valid
// parameter points are "undefined", genuine instabilities are "unstable".
cell_status status_of(errc c) noexcept;

}  // namespace omcond
