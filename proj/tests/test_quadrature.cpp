#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "omcond/quadrature.hpp"

using namespace omcond;

// Every spectrum here integrates in closed form:
//   (1/2pi) Int (a0 + a2 w^2) / ((w2 - w^2)^2 + g2 w^2) dw = (a0/w2 + a2)/(2 g)
// over the real line, with g = sqrt(g2). The quadrature must hit this on
// random coefficient draws spanning the stiffness range the sweeps produce.
TEST_CASE("adaptive integral matches the closed form") {
  const double two_pi = 2.0 * constants::pi;
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    RationalSpec r;
    const double w0 = std::pow(10.0, 6.0 * u(rng) - 5.0);
    r.w2 = w0 * w0;
    const double g = w0 * std::pow(10.0, -4.0 * u(rng));  // Q up to 1e4
    r.g2 = g * g;
    r.a0 = std::pow(10.0, 8.0 * u(rng) - 4.0);
    r.a2 = (u(rng) < 0.25) ? 0.0 : std::pow(10.0, 8.0 * u(rng) - 4.0);
    const double exact = (r.a0 / r.w2 + r.a2) / (2.0 * g);  // (1/2pi) * integral
    const QuadResult q = integrate_spectrum(r, w0, 1e-10);
    CHECK(q.value / two_pi == doctest::Approx(exact).epsilon(1e-8));
    CHECK(q.panels > 0);
    CHECK(q.abs_error >= 0.0);
  }
}

TEST_CASE("half-line doubling equals the full-line integral") {
  RationalSpec r{2.0, 0.3, 1.6e-5, 2.5e-9};
  const double scale = std::sqrt(r.w2);
  const QuadResult full = integrate_spectrum(r, scale, 1e-11, quad_range::full_line);
  const QuadResult half = integrate_spectrum(r, scale, 1e-11, quad_range::half_line);
  CHECK(half.value == doctest::Approx(full.value).epsilon(1e-9));
}

TEST_CASE("scale mismatch still converges") {
  // Resonance sits two decades away from the substitution scale; the adaptive
  // refinement has to find it rather than rely on the initial knots.
  RationalSpec r{1.0, 0.0, 1.0e-4, 1.0e-10};  // w0 = 1e-2, g = 1e-5
  const double exact = constants::pi * (r.a0 / r.w2) / 1e-5;  // raw integral
  const QuadResult q = integrate_spectrum(r, 1.0, 1e-10);
  CHECK(q.value == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("panel budget exhaustion throws") {
  RationalSpec r{1.0, 0.0, 1.0e-4, 1.0e-14};  // Q = 1e5 resonance
  CHECK_THROWS_AS(integrate_spectrum(r, 1.0, 1e-12, quad_range::full_line, 8),
                  model_error);
  try {
    integrate_spectrum(r, 1.0, 1e-12, quad_range::full_line, 8);
  } catch (const model_error& e) {
    CHECK(e.code() == errc::quadrature_failure);
  }
}
