#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "omcond/filter.hpp"
#include "omcond/kernels.hpp"

using namespace omcond;

TEST_CASE("active kernel is reported") {
  const char* name = kernels::active_kernel_name();
  const bool known = std::strcmp(name, "scalar") == 0 ||
                     std::strcmp(name, "avx2") == 0;
  CHECK(known);
  CHECK(kernels::active_kernel() != nullptr);
}

// The dispatched kernel must be a pure speedup: identical rounding to the
// scalar reference on every element, including remainders shorter than a
// vector width and denormal-adjacent magnitudes.
TEST_CASE("dispatched kernel is bitwise equal to the scalar reference") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    RationalSpec r;
    r.a0 = std::pow(10.0, 12.0 * u(rng) - 6.0);
    r.a2 = std::pow(10.0, 12.0 * u(rng) - 6.0) * (u(rng) < 0.2 ? 0.0 : 1.0);
    const double w0 = std::pow(10.0, 6.0 * u(rng) - 4.0);
    r.w2 = w0 * w0;
    const double g = w0 * std::pow(10.0, -3.0 * u(rng));
    r.g2 = g * g;
    const std::size_t n = 1 + static_cast<std::size_t>(u(rng) * 37.0);
    std::vector<double> omega(n), a(n), b(n);
    for (auto& w : omega) w = w0 * std::pow(10.0, 4.0 * u(rng) - 2.0);
    kernels::rational_batch_scalar(r, omega.data(), a.data(), n);
    kernels::active_kernel()(r, omega.data(), b.data(), n);
    CHECK(std::memcmp(a.data(), b.data(), n * sizeof(double)) == 0);
  }
}

TEST_CASE("batch kernel agrees with the single-sample evaluator") {
  const ConditionalState s = make_state(fx::baseline());
  const RationalSpec r = coeffs_conditional_qq(s);
  std::vector<double> omega;
  for (int i = 0; i < 128; ++i)
    omega.push_back(1e-5 * std::pow(10.0, 4.0 * i / 127.0));
  std::vector<double> out(omega.size());
  kernels::rational_batch(r, omega.data(), out.data(), omega.size());
  for (std::size_t i = 0; i < omega.size(); ++i)
    CHECK(out[i] == eval_rational(r, omega[i]));  // same fma arrangement
}

TEST_CASE("kernel matches a naively composed quotient") {
  RationalSpec r{3.5, 0.25, 4.0e-6, 1.0e-8};
  for (double w : {1e-4, 1e-3, 2e-3, 0.5, 7.0}) {
    const double naive = (r.a0 + r.a2 * w * w) /
                         ((r.w2 - w * w) * (r.w2 - w * w) + r.g2 * w * w);
    double got;
    kernels::rational_batch(r, &w, &got, 1);
    CHECK(got == doctest::Approx(naive).epsilon(1e-14));
  }
}
