#include "omcond/params.hpp"

#include <cmath>
#include <sstream>

namespace omcond {

const char* to_string(errc c) noexcept {
  switch (c) {
    case errc::invalid_params: return "invalid_params";
    case errc::optical_spring_instability: return "optical_spring_instability";
    case errc::filter_unstable: return "filter_unstable";
    case errc::zero_measurement: return "zero_measurement";
    case errc::unconditional_limit: return "unconditional_limit";
    case errc::unphysical_state: return "unphysical_state";
    case errc::differential_mode_unstable: return "differential_mode_unstable";
    case errc::quadrature_failure: return "quadrature_failure";
    case errc::approximation_undefined: return "approximation_undefined";
  }
  return "unknown";
}

const char* to_string(cell_status s) noexcept {
  switch (s) {
    case cell_status::ok: return "ok";
    case cell_status::unstable: return "unstable";
    case cell_status::undefined: return "undefined";
  }
  return "unknown";
}

cell_status status_of(errc c) noexcept {
  switch (c) {
    case errc::zero_measurement:
    case errc::unconditional_limit:
    case errc::approximation_undefined:
      return cell_status::undefined;
    default:
      return cell_status::unstable;
  }
}

double normalize_angle(double theta) {
  const double two_pi = 2.0 * constants::pi;
  double t = std::fmod(theta, two_pi);
  if (t <= -constants::pi) t += two_pi;
  if (t > constants::pi) t -= two_pi;
  return t;
}

void SystemParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw model_error(errc::invalid_params,
                        std::string(name) + " must be strictly positive");
    }
  };
  positive(m, "m");
  positive(ell, "ell");
  positive(Omega_bare, "Omega_bare");
  positive(kappa, "kappa");
  positive(omega_c, "omega_c");
  positive(Gamma_bare, "Gamma_bare");
  positive(gamma_m, "gamma_m");
  positive(P_in, "P_in");
  if (!(T >= 0.0) || !std::isfinite(T))
    throw model_error(errc::invalid_params, "T must be >= 0");
  if (!std::isfinite(Delta))
    throw model_error(errc::invalid_params, "Delta must be finite");
  if (!std::isfinite(theta))
    throw model_error(errc::invalid_params, "theta must be finite");
}

DerivedParams derive(const SystemParams& p) {
  p.validate();
  const double k2 = p.kappa * p.kappa + 4.0 * p.Delta * p.Delta;
  const double g = std::sqrt(p.omega_c * p.P_in * p.kappa /
                             (p.m * p.Omega_bare * p.ell * p.ell * k2));
  const double spring = p.Omega_bare * p.Omega_bare +
                        16.0 * g * g * p.Omega_bare * p.Delta / k2;
  if (!(spring > 0.0)) {
    std::ostringstream os;
    os << "optical-spring instability: radicand Omega^2 + 16 g^2 Omega Delta/("
          "kappa^2+4 Delta^2) = "
       << spring << " <= 0";
    throw model_error(errc::optical_spring_instability, os.str());
  }
  DerivedParams d;
  d.g = g;
  d.omega_m = std::sqrt(spring);
  d.g_m = g * std::sqrt(p.Omega_bare / d.omega_m);
  d.alpha = std::atan(2.0 * p.Delta / p.kappa);
  d.xi = 16.0 * d.g_m * d.g_m * p.kappa / (d.omega_m * k2);
  d.n_th = constants::k_B * p.T * p.Gamma_bare /
           (constants::hbar * d.omega_m * p.gamma_m);
  d.n_bar = 2.0 * p.gamma_m * (2.0 * d.n_th + 1.0) + d.omega_m * d.xi;
  d.zeta = 2.0 * p.gamma_m * (2.0 * d.n_th + 1.0) / d.omega_m + d.xi;
  d.Q_m = d.omega_m / p.gamma_m;
  d.C_m = 4.0 * d.g_m * d.g_m / (p.kappa * p.gamma_m);
  d.gamma_m = p.gamma_m;
  return d;
}

MeasurementCoeffs measurement_coeffs(const DerivedParams& d, double theta) {
  const double r = std::sqrt(d.omega_m * d.xi);
  MeasurementCoeffs mc;
  mc.c_theta = r * std::sin(theta - d.alpha);
  mc.L_theta = r * std::cos(theta - d.alpha);
  mc.lambda_theta = mc.c_theta * mc.c_theta;
  mc.Lambda_theta = mc.c_theta * mc.L_theta;
  return mc;
}

FilterParams filter_params(const DerivedParams& d, const MeasurementCoeffs& mc) {
  const double wm = d.omega_m;
  double r1 = wm * (wm + 2.0 * mc.Lambda_theta) + d.n_bar * mc.lambda_theta;
  // r1 = wm^2 (ratio^4) >= wm^2 |sin(theta-alpha)|^2 > 0 holds exactly in real
  // arithmetic; only rounding can push it below zero. Clamp that noise, reject
  // anything materially negative.
  const double scale1 = wm * wm * (1.0 + d.n_bar * d.xi);
  if (r1 < 0.0) {
    if (r1 > -1e-10 * scale1) {
      r1 = 0.0;
    } else {
      std::ostringstream os;
      os << "no stable conditional state: omega_theta radicand " << r1 << " < 0";
      throw model_error(errc::filter_unstable, os.str());
    }
  }
  const double wt = std::sqrt(wm * std::sqrt(r1));
  double r2 = d.gamma_m * d.gamma_m - 2.0 * wm * (wm + mc.Lambda_theta) +
              2.0 * wt * wt;
  const double scale2 = d.gamma_m * d.gamma_m + 2.0 * wm * wm +
                        2.0 * wm * std::fabs(mc.Lambda_theta) + 2.0 * wt * wt;
  if (r2 < 0.0) {
    if (r2 > -1e-10 * scale2) {
      r2 = 0.0;
    } else {
      std::ostringstream os;
      os << "no stable conditional state: gamma_theta radicand " << r2 << " < 0";
      throw model_error(errc::filter_unstable, os.str());
    }
  }
  return {wt, std::sqrt(r2)};
}

double gravitational_delta(double rho, double form_factor, double Omega) {
  if (!(rho >= 0.0) || !(form_factor > 0.0) || !(Omega > 0.0))
    throw model_error(errc::invalid_params,
                      "gravitational_delta requires rho >= 0, Lambda > 0, Omega > 0");
  const double delta = 4.0 * constants::G * rho * form_factor / (Omega * Omega);
  if (delta >= 1.0) {
    std::ostringstream os;
    os << "differential mode unstable: delta = " << delta << " >= 1";
    throw model_error(errc::differential_mode_unstable, os.str());
  }
  return delta;
}

ConditionalState make_state(const SystemParams& p) { return make_state(p, p.theta); }

ConditionalState make_state(const SystemParams& p, double theta) {
  ConditionalState s;
  s.sys = p;
  s.sys.theta = normalize_angle(theta);
  s.der = derive(s.sys);
  s.mc = measurement_coeffs(s.der, s.sys.theta);
  s.fp = filter_params(s.der, s.mc);
  return s;
}

}  // namespace omcond
