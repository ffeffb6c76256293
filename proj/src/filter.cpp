#include "omcond/filter.hpp"

#include <cmath>

namespace omcond {

std::complex<double> eval_susceptibility(const Susceptibility& s, double omega) {
  return {s.omega0 * s.omega0 - omega * omega, -s.gamma * omega};
}

static void require_measurement(const MeasurementCoeffs& mc) {
  if (mc.c_theta == 0.0)
    throw model_error(errc::zero_measurement,
                      "zero measurement rate: filter undefined at lambda_theta = 0");
}

WienerFilter wiener_filter(const FilterParams& fp, const DerivedParams& d,
                           const MeasurementCoeffs& mc, double omega) {
  require_measurement(mc);
  const std::complex<double> i(0.0, 1.0);
  const auto F = eval_susceptibility({d.omega_m, d.gamma_m}, omega);
  const auto Fp = eval_susceptibility({fp.omega_theta, fp.gamma_theta}, omega);
  const auto ratio = F / Fp;
  WienerFilter w;
  w.H_q = (1.0 - ratio) / mc.c_theta;
  w.H_p = -(i * omega + (fp.gamma_theta - d.gamma_m - i * omega) * ratio) /
          (mc.c_theta * d.omega_m);
  return w;
}

void spectrum_unconditional(const DerivedParams& d, double omega,
                            double& S_qq, double& S_pp) {
  const auto F = eval_susceptibility({d.omega_m, d.gamma_m}, omega);
  const double F2 = std::norm(F);
  S_qq = d.omega_m * d.omega_m * d.n_bar / F2;
  S_pp = omega * omega * d.n_bar / F2;
}

RationalSpec coeffs_unconditional_qq(const DerivedParams& d) {
  return {d.omega_m * d.omega_m * d.n_bar, 0.0,
          d.omega_m * d.omega_m, d.gamma_m * d.gamma_m};
}

RationalSpec coeffs_unconditional_pp(const DerivedParams& d) {
  return {0.0, d.n_bar, d.omega_m * d.omega_m, d.gamma_m * d.gamma_m};
}

namespace {

struct CondCommon {
  double wm, gm, nb, c, L, wt, gt, dg, B;
};

CondCommon cond_common(const ConditionalState& s) {
  if (s.mc.lambda_theta == 0.0)
    throw model_error(errc::zero_measurement,
                      "conditional spectrum undefined at zero measurement rate");
  CondCommon k;
  k.wm = s.der.omega_m;
  k.gm = s.der.gamma_m;
  k.nb = s.der.n_bar;
  k.c = s.mc.c_theta;
  k.L = s.mc.L_theta;
  k.wt = s.fp.omega_theta;
  k.gt = s.fp.gamma_theta;
  k.dg = k.gt - k.gm;                 // filter-added damping
  k.B = k.wt * k.wt - k.wm * k.wm;    // filter-added stiffness
  return k;
}

}  // namespace

RationalSpec coeffs_conditional_qq(const ConditionalState& s) {
  const auto k = cond_common(s);
  RationalSpec r;
  r.a0 = k.wm * k.wm * k.nb - 2.0 * k.wm * k.B * k.L / k.c + k.B * k.B / (k.c * k.c);
  r.a2 = k.dg * k.dg / (k.c * k.c);
  r.w2 = k.wt * k.wt;
  r.g2 = k.gt * k.gt;
  return r;
}

RationalSpec coeffs_conditional_pp(const ConditionalState& s) {
  const auto k = cond_common(s);
  RationalSpec r;
  r.a0 = k.dg * k.dg *
         (k.nb + 2.0 * k.L * k.wm / k.c + k.wm * k.wm / (k.c * k.c));
  r.a2 = k.nb - 2.0 * k.L * (k.B - k.dg * k.gm) / (k.c * k.wm) +
         (k.dg * k.gm - k.B) * (k.dg * k.gm - k.B) / (k.c * k.c * k.wm * k.wm);
  r.w2 = k.wt * k.wt;
  r.g2 = k.gt * k.gt;
  return r;
}

RationalSpec coeffs_conditional_qp(const ConditionalState& s) {
  const auto k = cond_common(s);
  RationalSpec r;
  r.a0 = k.dg * (k.wm * k.nb -
                 (k.wt * k.wt - 2.0 * k.wm * k.wm) * k.L / k.c -
                 k.B * k.wm / (k.c * k.c));
  r.a2 = k.dg * (-k.L / k.c - (k.gm * k.dg - k.B) / (k.c * k.c * k.wm));
  r.w2 = k.wt * k.wt;
  r.g2 = k.gt * k.gt;
  return r;
}

double eval_rational(const RationalSpec& r, double omega) {
  const double x2 = omega * omega;
  const double t = r.w2 - x2;
  return std::fma(r.a2, x2, r.a0) / std::fma(t, t, r.g2 * x2);
}

SpectrumSample spectrum_conditional(const ConditionalState& s, double omega) {
  const auto qq = coeffs_conditional_qq(s);
  const auto pp = coeffs_conditional_pp(s);
  const auto qp = coeffs_conditional_qp(s);
  return {omega, eval_rational(qq, omega), eval_rational(pp, omega),
          eval_rational(qp, omega)};
}

}  // namespace omcond
