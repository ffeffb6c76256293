#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "omcond/filter.hpp"

using namespace omcond;
using cplx = std::complex<double>;

#define CHECK_REL(x, ref) CHECK((x) == doctest::Approx(ref).epsilon(1e-13))

TEST_CASE("susceptibility denominator") {
  const cplx F = eval_susceptibility({2.0, 0.5}, 3.0);
  CHECK(F.real() == doctest::Approx(4.0 - 9.0));
  CHECK(F.imag() == doctest::Approx(-1.5));
  // Even real part, odd imaginary part.
  const cplx Fm = eval_susceptibility({2.0, 0.5}, -3.0);
  CHECK(Fm.real() == F.real());
  CHECK(Fm.imag() == -F.imag());
}

TEST_CASE("estimation filters at baseline, omega = omega_m/2") {
  const ConditionalState s = make_state(fx::baseline());
  const double omega = 0.5 * s.der.omega_m;
  const cplx F = eval_susceptibility({s.der.omega_m, s.der.gamma_m}, omega);
  const cplx Fp = eval_susceptibility({s.fp.omega_theta, s.fp.gamma_theta}, omega);
  CHECK_REL(F.real(), 2.96088132032680759e-5);
  CHECK_REL(F.imag(), -1.97392088021787172e-8);
  CHECK_REL(Fp.real(), -2.96392326434062343e-6);
  CHECK_REL(Fp.imag(), -1.56429296674279721e-5);
  const WienerFilter w = wiener_filter(s.fp, s.der, s.mc, omega);
  CHECK_REL(w.H_q.real(), -63.3831000292559926);
  CHECK_REL(w.H_q.imag(), 86.1182352868744652);
  CHECK_REL(w.H_p.real(), 30.1914940547610212);
  CHECK_REL(w.H_p.imag(), 99.8524173184423721);
}

TEST_CASE("zero measurement rate is rejected") {
  SystemParams p = fx::detuned();
  const DerivedParams d = derive(p);
  const MeasurementCoeffs mc = measurement_coeffs(d, d.alpha);
  const FilterParams fp = filter_params(d, mc);
  CHECK_THROWS_AS(wiener_filter(fp, d, mc, 0.01), model_error);
  const ConditionalState s = make_state(p, d.alpha);
  CHECK_THROWS_AS(spectrum_conditional(s, 0.01), model_error);
}

TEST_CASE("unconditional and conditional spectra at baseline") {
  const ConditionalState s = make_state(fx::baseline());
  double Sqq, Spp;

  const double w_half = 0.5 * s.der.omega_m;
  spectrum_unconditional(s.der, w_half, Sqq, Spp);
  CHECK_REL(Sqq, 5167.17479323353183);
  CHECK_REL(Spp, 1291.79369830838296);
  CHECK(Spp == doctest::Approx(0.25 * Sqq).epsilon(1e-14));  // S_pp = (w/wm)^2 S_qq
  SpectrumSample c = spectrum_conditional(s, w_half);
  CHECK_REL(c.S_qq, 3638.46028707967055);
  CHECK_REL(c.S_pp, 635.039385266402004);
  CHECK_REL(c.ReS_qp, 1439.88441003060295);

  const double w_res = s.der.omega_m;
  spectrum_unconditional(s.der, w_res, Sqq, Spp);
  CHECK_REL(Sqq, 2906537112.98755996);
  CHECK_REL(Spp, 2906537112.98755996);
  c = spectrum_conditional(s, w_res);
  CHECK_REL(c.S_qq, 1249.38915670383001);
  CHECK_REL(c.S_pp, 218.092107273454419);
  CHECK_REL(c.ReS_qp, 494.433311581651195);
  // Conditioning kills the thermal resonance by six orders of magnitude here.
  CHECK(c.S_qq < 1e-6 * Sqq);
}

TEST_CASE("coefficient builders agree with the sample evaluator") {
  const ConditionalState s = make_state(fx::detuned());
  const RationalSpec qq = coeffs_conditional_qq(s);
  const RationalSpec pp = coeffs_conditional_pp(s);
  const RationalSpec qp = coeffs_conditional_qp(s);
  for (double w : {1e-4, 3.7e-3, s.fp.omega_theta, 0.02, 0.3}) {
    const SpectrumSample c = spectrum_conditional(s, w);
    CHECK(eval_rational(qq, w) == c.S_qq);
    CHECK(eval_rational(pp, w) == c.S_pp);
    CHECK(eval_rational(qp, w) == c.ReS_qp);
  }
  double Sqq, Spp;
  spectrum_unconditional(s.der, 3.7e-3, Sqq, Spp);
  CHECK(eval_rational(coeffs_unconditional_qq(s.der), 3.7e-3) ==
        doctest::Approx(Sqq).epsilon(1e-15));
  CHECK(eval_rational(coeffs_unconditional_pp(s.der), 3.7e-3) ==
        doctest::Approx(Spp).epsilon(1e-15));
}

// The filters are optimal exactly when the conditional spectrum equals the
// residual spectrum of the estimate: S~ = S - 2 Re[H* S_xI] + |H|^2 S_II,
// with the meter cross-spectra S_qI = c S_qq + wm L / F, S_pI = -i (w/wm) S_qI
// and meter autospectrum S_II = lambda S_qq + 2 c wm L Re(1/F) + 1. Passing
// this ties wiener_filter and the closed-form conditional spectra together.
TEST_CASE("residual spectrum of the filtered estimate matches") {
  for (const SystemParams& p : {fx::baseline(), fx::detuned()}) {
    const ConditionalState s = make_state(p);
    const double wm = s.der.omega_m;
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
      const double w = (i == 0) ? wm : wm * std::pow(10.0, 2.0 * u(rng) - 1.0);
      const cplx F = eval_susceptibility({wm, s.der.gamma_m}, w);
      double Sqq, Spp;
      spectrum_unconditional(s.der, w, Sqq, Spp);
      const cplx SqI = s.mc.c_theta * Sqq + wm * s.mc.L_theta / F;
      const cplx SpI = cplx(0.0, -1.0) * (w / wm) * SqI;
      const double SII = s.mc.lambda_theta * Sqq +
                         2.0 * s.mc.c_theta * wm * s.mc.L_theta * (1.0 / F).real() +
                         1.0;
      const WienerFilter h = wiener_filter(s.fp, s.der, s.mc, w);
      const double rq = Sqq - 2.0 * (std::conj(h.H_q) * SqI).real() +
                        std::norm(h.H_q) * SII;
      const double rp = Spp - 2.0 * (std::conj(h.H_p) * SpI).real() +
                        std::norm(h.H_p) * SII;
      const SpectrumSample c = spectrum_conditional(s, w);
      // Cancellation-aware tolerance: the residual subtracts terms as large as
      // the unconditional resonance, so scale by the summand magnitudes.
      const double scale_q = Sqq + 2.0 * std::abs(h.H_q) * std::abs(SqI) +
                             std::norm(h.H_q) * SII;
      const double scale_p = Spp + 2.0 * std::abs(h.H_p) * std::abs(SpI) +
                             std::norm(h.H_p) * SII;
      CHECK(std::abs(rq - c.S_qq) <= 1e-11 * scale_q);
      CHECK(std::abs(rp - c.S_pp) <= 1e-11 * scale_p);
    }
  }
}

// As theta -> alpha the measurement rate vanishes but the meter still records
// back-action, which the filter subtracts exactly: the conditional spectrum
// tends to the *thermal-only* unconditional shape (n_bar -> 2 gamma_m (2n_th+1)).
TEST_CASE("vanishing measurement rate leaves the thermal spectrum") {
  SystemParams p = fx::detuned();
  const DerivedParams d = derive(p);
  const ConditionalState s = make_state(p, d.alpha + 1e-7);
  const double n_thermal = 2.0 * d.gamma_m * (2.0 * d.n_th + 1.0);
  for (double w : {0.3 * d.omega_m, d.omega_m, 2.5 * d.omega_m}) {
    const cplx F = eval_susceptibility({d.omega_m, d.gamma_m}, w);
    const double F2 = std::norm(F);
    const SpectrumSample c = spectrum_conditional(s, w);
    CHECK(c.S_qq == doctest::Approx(d.omega_m * d.omega_m * n_thermal / F2)
                        .epsilon(2e-3));
    CHECK(c.S_pp == doctest::Approx(w * w * n_thermal / F2).epsilon(2e-3));
  }
}
