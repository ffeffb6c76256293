#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "omcond/params.hpp"

using namespace omcond;

// Reference values were computed at 40+ digit precision through an independent
// implementation of the same closed forms; doubles reproduce them to ~1e-15.
#define CHECK_REL(x, ref) CHECK((x) == doctest::Approx(ref).epsilon(1e-13))

TEST_CASE("derived chain at the resonant baseline") {
  const SystemParams p = fx::baseline();
  const DerivedParams d = derive(p);
  CHECK_REL(d.g, 2117.7786230693730963);
  CHECK_REL(d.omega_m, 0.0062831853071795866077);
  CHECK(d.omega_m == doctest::Approx(p.Omega_bare).epsilon(1e-15));  // no spring at Delta=0
  CHECK_REL(d.g_m, d.g);  // omega_m == Omega => no rescaling
  CHECK(d.alpha == 0.0);
  CHECK_REL(d.xi, 18.176964806551228839);
  CHECK_REL(d.n_th, 20.836619136094571407);
  CHECK_REL(d.n_bar, 0.11474548592908630266);
  CHECK_REL(d.zeta, 18.262311283095607119);
  CHECK_REL(d.Q_m, 1000.0);
  CHECK_REL(d.C_m, 4544.2412016378075099);
  CHECK(adiabatic_regime(p, d));
}

TEST_CASE("derived chain at Delta = 0.05 kappa") {
  const SystemParams p = fx::detuned();
  const DerivedParams d = derive(p);
  CHECK_REL(d.g, 2107.2684905857288507);
  CHECK_REL(d.omega_m, 0.0086401002533446447786);  // blue-detuned spring stiffens
  CHECK_REL(d.alpha, 0.099668652491162027378);
  CHECK(d.alpha == doctest::Approx(std::atan(2.0 * p.Delta / p.kappa)).epsilon(1e-15));
  CHECK_REL(d.xi, 9.4232517112354122304);
  CHECK_REL(d.n_th, 15.152641215769018948);
  CHECK_REL(d.n_bar, 0.081811233278797336731);
}

TEST_CASE("measurement coefficients and filter at baseline") {
  const ConditionalState s = make_state(fx::baseline());
  CHECK_REL(s.mc.c_theta, -0.021219966492267427234);
  CHECK_REL(s.mc.L_theta, 0.33728170899666374504);
  CHECK_REL(s.mc.lambda_theta, 0.00045028697793295237994);
  CHECK_REL(s.mc.Lambda_theta, -0.007157106563363897924);
  CHECK_REL(s.fp.omega_theta, 0.0026278662707125582996);
  CHECK_REL(s.fp.omega_theta / s.der.omega_m, 0.41823790676836843016);
  CHECK_REL(s.fp.gamma_theta, 0.004979299162020037378);
}

TEST_CASE("measurement coefficients and filter at Delta = 0.05 kappa") {
  const ConditionalState s = make_state(fx::detuned());
  CHECK_REL(s.mc.c_theta, -0.046163790146008108722);
  CHECK_REL(s.mc.L_theta, 0.2815790190637980884);
  CHECK_REL(s.fp.omega_theta, 0.00653142590118190874);
  CHECK_REL(s.fp.gamma_theta, 0.012674285449242738661);
}

TEST_CASE("xi: transfer-function form equals cooperativity form") {
  // xi = 16 g_m^2 kappa / (omega_m (kappa^2+4 Delta^2))
  //    = (4 C_m / Q_m) / (1 + 4 Delta^2/kappa^2)  -- same quantity, two routes.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    SystemParams p = fx::baseline();
    p.P_in = 1e-10 * std::pow(10.0, 4.0 * u(rng));
    p.T = 0.1 * std::pow(10.0, 2.0 * u(rng));
    p.Delta = p.kappa * 0.4 * u(rng);
    const DerivedParams d = derive(p);
    const double dk = p.Delta / p.kappa;
    const double coop_form = 4.0 * d.C_m / d.Q_m / (1.0 + 4.0 * dk * dk);
    CHECK(d.xi == doctest::Approx(coop_form).epsilon(1e-12));
  }
}

TEST_CASE("c/L Pythagoras: c^2 + L^2 = omega_m xi") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    SystemParams p = fx::baseline();
    p.Delta = p.kappa * 0.25 * (u(rng) + 1.0);
    const DerivedParams d = derive(p);
    const MeasurementCoeffs mc = measurement_coeffs(d, u(rng));
    const double lhs = mc.c_theta * mc.c_theta + mc.L_theta * mc.L_theta;
    CHECK(lhs == doctest::Approx(d.omega_m * d.xi).epsilon(1e-12));
  }
}

TEST_CASE("theta = alpha turns the measurement off") {
  SystemParams p = fx::detuned();
  const DerivedParams d = derive(p);
  const MeasurementCoeffs mc = measurement_coeffs(d, d.alpha);
  CHECK(mc.c_theta == 0.0);
  CHECK(mc.lambda_theta == 0.0);
  // Filter then collapses onto the unconditional dynamics.
  const FilterParams fp = filter_params(d, mc);
  CHECK(fp.omega_theta == doctest::Approx(d.omega_m).epsilon(1e-14));
  CHECK(fp.gamma_theta == doctest::Approx(d.gamma_m).epsilon(1e-14));
}

TEST_CASE("red detuning strong enough to melt the spring throws") {
  SystemParams p = fx::baseline();
  p.Delta = -0.05 * p.kappa;
  p.P_in = 1e-2;  // enough power that Omega^2 + 16 g^2 Omega Delta / (...) < 0
  CHECK_THROWS_WITH_AS(derive(p), doctest::Contains("spring"), model_error);
  try {
    derive(p);
  } catch (const model_error& e) {
    CHECK(e.code() == errc::optical_spring_instability);
  }
}

TEST_CASE("validate rejects nonpositive physical scales") {
  SystemParams p = fx::baseline();
  p.m = 0.0;
  CHECK_THROWS_AS(p.validate(), model_error);
  p = fx::baseline();
  p.T = -1.0;
  CHECK_THROWS_AS(p.validate(), model_error);
  p = fx::baseline();
  p.kappa = -1.0;
  CHECK_THROWS_AS(p.validate(), model_error);
  CHECK_NOTHROW(fx::baseline().validate());
}

TEST_CASE("angle normalization wraps into (-pi, pi]") {
  const double pi = constants::pi;
  CHECK(normalize_angle(pi) == doctest::Approx(pi));
  CHECK(normalize_angle(-pi) == doctest::Approx(pi));
  CHECK(normalize_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(normalize_angle(0.25) == doctest::Approx(0.25));
  CHECK(normalize_angle(2 * pi + 0.25) == doctest::Approx(0.25));
}

TEST_CASE("gravitational delta for a gold-density sphere pair") {
  const double Omega = 2.0 * constants::pi * 1e-3;
  CHECK_REL(gravitational_delta(19300.0, 2.0, Omega), 0.26103171872984522535);
  CHECK(gravitational_delta(0.0, 2.0, Omega) == 0.0);
  // delta >= 1 makes the differential mode frequency imaginary.
  CHECK_THROWS_AS(gravitational_delta(1e9, 2.0, Omega), model_error);
}
