#pragma once

#include "omcond/params.hpp"

namespace omcond {

// Conditional second moments, vacuum = 1 normalization ([q, p] = 2i, so a
// physical state has V_qq*V_pp - V_qp^2 >= 1).
struct CovMat2 {
  double V_qq, V_qp, V_pp;
  double det() const { return V_qq * V_pp - V_qp * V_qp; }
};

// Main-text closed form: V_pp = V_qq [ (omega_theta/omega_m)^2
//                                      + gamma_m (gamma_m - gamma_theta)/(2 omega_m^2) ].
CovMat2 covariance_main(const FilterParams& fp, const DerivedParams& d,
                        const MeasurementCoeffs& mc);

// Equivalent form eliminating omega_theta^2:
// V_pp = V_qq [ 1 + Lambda_theta/omega_m
//               + gamma_theta (gamma_theta - gamma_m)/(2 omega_m^2) ].
CovMat2 covariance_appendix(const FilterParams& fp, const DerivedParams& d,
                            const MeasurementCoeffs& mc);

// Independent oracle: (1/2pi) integrals of the conditional spectra.
struct QuadCov {
  CovMat2 cov;
  double abs_error;  // worst per-component achieved error estimate
  int panels;        // total panels across the three integrals
};
QuadCov covariance_quadrature(const ConditionalState& s, double rel_tol);

// mu = 1/sqrt(det V); throws unphysical_state when det < 1 - 1e-9.
double purity(const CovMat2& c);

// Heisenberg check used by sweeps and the physicality suite.
bool is_physical(const CovMat2& c, double det_tol = 1e-9);

namespace detail {

// The two V_pp brackets, in the extended type, from a chain evaluated by
// params detail::eval_point (the equivalence holds through the gamma_theta
// defining relation, so the whole chain must share the precision).
template <class F>
F vpp_bracket_main(const omcond::detail::point_t<F>& q) {
  return q.wt2 / (q.omega_m * q.omega_m) +
         q.gamma_m * (q.gamma_m - q.gt) / (2 * q.omega_m * q.omega_m);
}

template <class F>
F vpp_bracket_appendix(const omcond::detail::point_t<F>& q) {
  return 1 + q.Lambda / q.omega_m +
         q.gt * (q.gt - q.gamma_m) / (2 * q.omega_m * q.omega_m);
}

}  // namespace detail

}  // namespace omcond
