#pragma once

#include <cmath>

#include "omcond/constants.hpp"
#include "omcond/error.hpp"

namespace omcond {

// Raw inputs of the single-mirror model. All frequencies are angular [rad/s];
// config-file ingestion converts from ordinary Hz before constructing this.
struct SystemParams {
  double m;           // mirror mass [kg]
  double ell;         // cavity length [m]
  double Omega_bare;  // bare mechanical frequency [rad/s]
  double kappa;       // cavity decay rate [rad/s]
  double omega_c;     // optical carrier frequency [rad/s]
  double Gamma_bare;  // bare mechanical dissipation rate [rad/s]
  double gamma_m;     // effective (feedback-cooled) dissipation rate [rad/s]
  double P_in;        // input laser power [W]
  double T;           // environment temperature [K]
  double Delta;       // cavity detuning [rad/s]
  double theta;       // homodyne angle [rad], normalized to (-pi, pi]

  // Throws model_error(invalid_params) on any violated domain invariant.
  void validate() const;
};

// Scalars derived from SystemParams; immutable once computed.
struct DerivedParams {
  double g;        // optomechanical coupling [rad/s]
  double omega_m;  // effective mechanical frequency (optical spring) [rad/s]
  double g_m;      // rescaled coupling g*sqrt(Omega/omega_m) [rad/s]
  double alpha;    // output-field rotation angle arctan(2*Delta/kappa) [rad]
  double xi;       // dimensionless measurement strength
  double n_th;     // thermal occupation
  double n_bar;    // total force-noise power 2*gamma_m*(2 n_th+1)+omega_m*xi [rad/s]
  double zeta;     // n_bar/omega_m
  double Q_m;      // quality factor omega_m/gamma_m
  double C_m;      // cooperativity 4 g_m^2/(kappa*gamma_m)
  double gamma_m;  // carried through for downstream closed forms [rad/s]
};

struct MeasurementCoeffs {
  double c_theta;       // signal coefficient sqrt(omega_m xi) sin(theta-alpha)
  double L_theta;       // correlation coefficient sqrt(omega_m xi) cos(theta-alpha)
  double lambda_theta;  // measurement rate c_theta^2 [rad/s]
  double Lambda_theta;  // cross rate c_theta*L_theta [rad/s]
};

// Resonance/damping of the conditional (filtered) dynamics.
struct FilterParams {
  double omega_theta;  // [rad/s]
  double gamma_theta;  // [rad/s]
};

double normalize_angle(double theta);  // wrap into (-pi, pi]

DerivedParams derive(const SystemParams& p);
MeasurementCoeffs measurement_coeffs(const DerivedParams& d, double theta);
FilterParams filter_params(const DerivedParams& d, const MeasurementCoeffs& mc);

// True when the adiabatic elimination of the cavity is trustworthy.
inline bool adiabatic_regime(const SystemParams& p, const DerivedParams& d) {
  return p.kappa >= 100.0 * d.omega_m;
}

// delta = 4 G rho Lambda / Omega^2; throws when delta >= 1 (differential mode
// frequency would be imaginary).
double gravitational_delta(double rho, double form_factor, double Omega);

// Fully derived single-point state: everything downstream consumes this.
struct ConditionalState {
  SystemParams sys;
  DerivedParams der;
  MeasurementCoeffs mc;
  FilterParams fp;
};

ConditionalState make_state(const SystemParams& p);                // uses p.theta
ConditionalState make_state(const SystemParams& p, double theta);  // override

namespace detail {

// Extended-precision evaluation of the derived chain for identity tests: the
// algebra is exact, so test comparisons should not be limited by double
// rounding inside the very cancellations the identities remove.
template <class F>
struct chain_t {
  F omega_m, gamma_m, xi, n_bar, zeta, alpha;
};

template <class F>
chain_t<F> derive_chain(const SystemParams& p) {
  using std::atan;
  using std::sqrt;
  const F kap = p.kappa, Dl = p.Delta, Om = p.Omega_bare;
  const F k2 = kap * kap + 4 * Dl * Dl;
  const F g2 = F(p.omega_c) * F(p.P_in) * kap / (F(p.m) * Om * F(p.ell) * F(p.ell) * k2);
  const F wm = sqrt(Om * Om + 16 * g2 * Om * Dl / k2);
  const F gm2 = g2 * Om / wm;
  const F xi = 16 * gm2 * kap / (wm * k2);
  const F nth = F(constants::k_B) * F(p.T) * F(p.Gamma_bare) /
                (F(constants::hbar) * wm * F(p.gamma_m));
  const F nb = 2 * F(p.gamma_m) * (2 * nth + 1) + wm * xi;
  return {wm, F(p.gamma_m), xi, nb, nb / wm, atan(2 * Dl / kap)};
}

// (omega_theta/omega_m)^4 by the direct route through the filter definitions.
template <class F>
F ratio4_direct(const chain_t<F>& c, F theta) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const F r = sqrt(c.omega_m * c.xi);
  const F ct = r * sin(theta - c.alpha);
  const F Lt = r * cos(theta - c.alpha);
  const F r1 = c.omega_m * (c.omega_m + 2 * ct * Lt) + c.n_bar * ct * ct;
  return r1 / (c.omega_m * c.omega_m);
}

// Full single-point chain in the extended type (measurement coefficients and
// the conditional resonance/damping), for identity tests that must not be
// limited by double rounding of the intermediate definitions.
template <class F>
struct point_t {
  F omega_m, gamma_m, xi, n_bar, zeta, alpha;
  F c_theta, L_theta, lambda, Lambda;
  F wt2;  // omega_theta^2
  F gt;   // gamma_theta
};

template <class F>
point_t<F> eval_point(const SystemParams& p, F theta) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const chain_t<F> c = derive_chain<F>(p);
  point_t<F> q;
  q.omega_m = c.omega_m;
  q.gamma_m = c.gamma_m;
  q.xi = c.xi;
  q.n_bar = c.n_bar;
  q.zeta = c.zeta;
  q.alpha = c.alpha;
  const F r = sqrt(c.omega_m * c.xi);
  q.c_theta = r * sin(theta - c.alpha);
  q.L_theta = r * cos(theta - c.alpha);
  q.lambda = q.c_theta * q.c_theta;
  q.Lambda = q.c_theta * q.L_theta;
  const F r1 = c.omega_m * (c.omega_m + 2 * q.Lambda) + c.n_bar * q.lambda;
  q.wt2 = c.omega_m * sqrt(r1);
  const F r2 = c.gamma_m * c.gamma_m -
               2 * c.omega_m * (c.omega_m + q.Lambda) + 2 * q.wt2;
  q.gt = sqrt(r2);
  return q;
}

}  // namespace detail

}  // namespace omcond
