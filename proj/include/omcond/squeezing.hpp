#pragma once

#include <optional>

#include "omcond/covariance.hpp"
#include "omcond/params.hpp"

namespace omcond {

// (omega_theta/omega_m)^4 as an explicit sinusoid in theta:
//   1 + zeta*xi/2 + (xi/2) sqrt(zeta^2+4) sin(2theta - 2alpha - arctan(zeta/2)).
double omega_ratio_quartic(double theta, double zeta, double xi, double alpha);

// Angle minimizing the quartic (hence omega_theta):
//   theta_opt = alpha - (1/2) arctan(2/zeta), normalized to (-pi, pi].
// The pi/2-shifted angle maximizes the same sinusoid.
double optimal_angle(double zeta, double alpha);

// Thermal-dominated small-detuning estimate of V_pp at the optimal angle:
//   sqrt(k_B T Gamma (kappa^2+4Delta^2) / (2 g^2 hbar Omega Delta)).
// Domain: 0 < Delta and Delta/kappa < 0.5 (throws approximation_undefined
// outside; the estimate degrades noticeably above Delta/kappa ~ 0.1).
double vpp_approx(const SystemParams& p);

// Product of the eight fiducial ratios of the rough squeezing condition
// (factor < 1 <=> squeezing expected); requires Delta > 0.
double condition_factor(const SystemParams& p);

struct SqueezeReport {
  double theta_opt;
  double omega_ratio;  // omega_theta/omega_m at theta_opt
  double V_pp_exact;   // closed form at theta_opt
  std::optional<double> V_pp_approx;       // absent when Delta outside domain
  std::optional<double> condition_factor;  // absent when Delta <= 0
  bool squeezed;       // V_pp_exact < 1
};

SqueezeReport squeeze_report(const SystemParams& p);

namespace detail {

template <class F>
F quartic_t(F theta, F zeta, F xi, F alpha) {
  using std::atan;
  using std::sin;
  using std::sqrt;
  return 1 + zeta * xi / 2 +
         xi / 2 * sqrt(zeta * zeta + 4) *
             sin(2 * theta - 2 * alpha - atan(zeta / 2));
}

}  // namespace detail

}  // namespace omcond
