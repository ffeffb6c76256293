#include "omcond/squeezing.hpp"

#include <cmath>
#include <sstream>

namespace omcond {

double omega_ratio_quartic(double theta, double zeta, double xi, double alpha) {
  return detail::quartic_t<double>(theta, zeta, xi, alpha);
}

double optimal_angle(double zeta, double alpha) {
  return normalize_angle(alpha - 0.5 * std::atan(2.0 / zeta));
}

static void require_positive_detuning(const SystemParams& p) {
  if (!(p.Delta > 0.0))
    throw model_error(errc::approximation_undefined,
                      "approximation undefined at Delta <= 0");
}

double vpp_approx(const SystemParams& p) {
  require_positive_detuning(p);
  if (p.Delta / p.kappa >= 0.5) {
    std::ostringstream os;
    os << "approximation undefined at Delta/kappa = " << p.Delta / p.kappa
       << " (requires < 0.5)";
    throw model_error(errc::approximation_undefined, os.str());
  }
  const DerivedParams d = derive(p);
  const double k2 = p.kappa * p.kappa + 4.0 * p.Delta * p.Delta;
  return std::sqrt(constants::k_B * p.T * p.Gamma_bare * k2 /
                   (2.0 * d.g * d.g * constants::hbar * p.Omega_bare * p.Delta));
}

double condition_factor(const SystemParams& p) {
  require_positive_detuning(p);
  const double two_pi = 2.0 * constants::pi;
  return (p.T / 300.0) * (p.Gamma_bare / (two_pi * 1e-7)) /
         (p.P_in / 2e-3) * std::pow(p.kappa / (two_pi * 1e4), 2) /
         ((p.Delta / p.kappa) / 0.05) / (p.omega_c / (two_pi * 2.8e14)) *
         (p.m / 0.1) * std::pow(p.ell / 0.1, 2);
}

SqueezeReport squeeze_report(const SystemParams& p) {
  const DerivedParams d = derive(p);
  SqueezeReport r;
  r.theta_opt = optimal_angle(d.zeta, d.alpha);
  const ConditionalState s = make_state(p, r.theta_opt);
  r.omega_ratio = s.fp.omega_theta / s.der.omega_m;
  r.V_pp_exact = covariance_main(s.fp, s.der, s.mc).V_pp;
  r.squeezed = r.V_pp_exact < 1.0;
  if (p.Delta > 0.0) {
    r.condition_factor = condition_factor(p);
    if (p.Delta / p.kappa < 0.5) r.V_pp_approx = vpp_approx(p);
  }
  return r;
}

}  // namespace omcond
