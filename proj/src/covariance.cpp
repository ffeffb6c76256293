#include "omcond/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "omcond/quadrature.hpp"

namespace omcond {

namespace {

struct VqqDg {
  double vqq;  // (gamma_theta - gamma_m)/lambda_theta
  double dg;   // gamma_theta - gamma_m
};

// Shared preamble. The direct difference gamma_theta - gamma_m cancels
// catastrophically near theta = alpha (both roots collapse onto gamma_m), so
// it is evaluated through the rationalized identity
//   gamma_theta^2 - gamma_m^2 = 2 omega_m lambda_theta (n_bar - L_theta^2)
//                               / (sqrt(r1) + omega_m + Lambda_theta),
// whose factors are all positive and subtraction-free: n_bar - L_theta^2 =
// 2 gamma_m (2 n_th + 1) + c_theta^2 > 0, and sqrt(r1) = omega_theta^2/omega_m
// dominates |omega_m + Lambda_theta|. V_qq then loses its 0/0 entirely
// (lambda_theta cancels), and the degeneracy flag fires on the true
// difference instead of on rounding noise.
VqqDg vqq_checked(const FilterParams& fp, const DerivedParams& d,
                  const MeasurementCoeffs& mc) {
  if (mc.lambda_theta == 0.0)
    throw model_error(errc::zero_measurement,
                      "conditional covariance undefined at zero measurement rate");
  const double wm = d.omega_m;
  const double num = d.n_bar - mc.L_theta * mc.L_theta;
  const double den =
      (fp.omega_theta * fp.omega_theta / wm + wm + mc.Lambda_theta) *
      (fp.gamma_theta + d.gamma_m);
  VqqDg r;
  r.vqq = 2.0 * wm * num / den;
  r.dg = r.vqq * mc.lambda_theta;
  if (r.dg < 1e-12 * d.gamma_m)
    throw model_error(errc::unconditional_limit,
                      "gamma_theta - gamma_m below resolution: conditional "
                      "covariance is an unconditional-limit 0/0");
  return r;
}

}  // namespace

CovMat2 covariance_main(const FilterParams& fp, const DerivedParams& d,
                        const MeasurementCoeffs& mc) {
  const auto [vqq, dg] = vqq_checked(fp, d, mc);
  const double wm = d.omega_m;
  CovMat2 c;
  c.V_qq = vqq;
  c.V_qp = vqq * dg / (2.0 * wm);
  const double r = fp.omega_theta / wm;
  c.V_pp = vqq * (r * r - d.gamma_m * dg / (2.0 * wm * wm));
  return c;
}

CovMat2 covariance_appendix(const FilterParams& fp, const DerivedParams& d,
                            const MeasurementCoeffs& mc) {
  const auto [vqq, dg] = vqq_checked(fp, d, mc);
  const double wm = d.omega_m;
  CovMat2 c;
  c.V_qq = vqq;
  c.V_qp = vqq * dg / (2.0 * wm);
  c.V_pp = vqq * (1.0 + mc.Lambda_theta / wm +
                  fp.gamma_theta * dg / (2.0 * wm * wm));
  return c;
}

QuadCov covariance_quadrature(const ConditionalState& s, double rel_tol) {
  if (s.mc.lambda_theta == 0.0)
    throw model_error(errc::zero_measurement,
                      "conditional covariance undefined at zero measurement rate");
  const double two_pi = 2.0 * constants::pi;
  const double scale = (s.fp.omega_theta > 0.0) ? s.fp.omega_theta : s.der.omega_m;
  const auto qq = integrate_spectrum(coeffs_conditional_qq(s), scale, rel_tol);
  const auto pp = integrate_spectrum(coeffs_conditional_pp(s), scale, rel_tol);
  const auto qp = integrate_spectrum(coeffs_conditional_qp(s), scale, rel_tol);
  QuadCov out;
  out.cov = {qq.value / two_pi, qp.value / two_pi, pp.value / two_pi};
  out.abs_error =
      std::max({qq.abs_error, pp.abs_error, qp.abs_error}) / two_pi;
  out.panels = qq.panels + pp.panels + qp.panels;
  return out;
}

bool is_physical(const CovMat2& c, double det_tol) {
  return c.V_qq > 0.0 && c.V_pp > 0.0 && c.det() >= 1.0 - det_tol;
}

double purity(const CovMat2& c) {
  const double det = c.det();
  if (!(c.V_qq > 0.0) || !(c.V_pp > 0.0) || det < 1.0 - 1e-9) {
    std::ostringstream os;
    os << "unphysical covariance: det = " << det << " (bound 1)";
    throw model_error(errc::unphysical_state, os.str());
  }
  return 1.0 / std::sqrt(det);
}

}  // namespace omcond
