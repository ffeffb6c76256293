#pragma once

#include <complex>

#include "omcond/params.hpp"

namespace omcond {

// Mechanical susceptibility denominator: F(omega) = omega0^2 - i*gamma*omega - omega^2.
// (omega_m, gamma_m) gives the bare F; (omega_theta, gamma_theta) gives F'.
struct Susceptibility {
  double omega0;
  double gamma;
};

std::complex<double> eval_susceptibility(const Susceptibility& s, double omega);

struct WienerFilter {
  std::complex<double> H_q;
  std::complex<double> H_p;
};

// Causal estimation filters for (q, p) from the homodyne current; requires
// c_theta != 0 (throws zero_measurement otherwise).
WienerFilter wiener_filter(const FilterParams& fp, const DerivedParams& d,
                           const MeasurementCoeffs& mc, double omega);

// Steady-state spectra of the unmonitored mirror.
void spectrum_unconditional(const DerivedParams& d, double omega,
                            double& S_qq, double& S_pp);

struct SpectrumSample {
  double omega;
  double S_qq;     // conditional position spectral density [1/(rad/s)]
  double S_pp;     // conditional momentum spectral density
  double ReS_qp;   // real part of the conditional cross-spectrum
};

// Conditional (filtered-residual) spectra; requires lambda_theta > 0.
SpectrumSample spectrum_conditional(const ConditionalState& s, double omega);

// Every spectral density in this model is (a0 + a2*w^2) / ((w2 - w^2)^2 + g2*w^2).
// These coefficient builders feed the batch kernels and the quadrature oracle.
struct RationalSpec {
  double a0, a2;  // numerator coefficients
  double w2, g2;  // denominator: resonance^2 and damping^2
};

RationalSpec coeffs_unconditional_qq(const DerivedParams& d);
RationalSpec coeffs_unconditional_pp(const DerivedParams& d);
RationalSpec coeffs_conditional_qq(const ConditionalState& s);
RationalSpec coeffs_conditional_pp(const ConditionalState& s);
RationalSpec coeffs_conditional_qp(const ConditionalState& s);  // Re part

double eval_rational(const RationalSpec& r, double omega);

}  // namespace omcond
