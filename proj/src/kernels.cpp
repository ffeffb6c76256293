#include "omcond/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif

namespace omcond::kernels {

void rational_batch_scalar(const RationalSpec& r, const double* omega,
                           double* out, std::size_t n) {
  const double a0 = r.a0, a2 = r.a2, w2 = r.w2, g2 = r.g2;
  for (std::size_t i = 0; i < n; ++i) {
    const double x2 = omega[i] * omega[i];
    const double t = w2 - x2;
    const double den = std::fma(t, t, g2 * x2);
    const double num = std::fma(a2, x2, a0);
    out[i] = num / den;
  }
}

#if defined(__x86_64__) || defined(_M_X64)

__attribute__((target("avx2,fma"))) void rational_batch_avx2(
    const RationalSpec& r, const double* omega, double* out, std::size_t n) {
  const __m256d a0 = _mm256_set1_pd(r.a0);
  const __m256d a2 = _mm256_set1_pd(r.a2);
  const __m256d w2 = _mm256_set1_pd(r.w2);
  const __m256d g2 = _mm256_set1_pd(r.g2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d w = _mm256_loadu_pd(omega + i);
    const __m256d x2 = _mm256_mul_pd(w, w);
    const __m256d t = _mm256_sub_pd(w2, x2);
    const __m256d den = _mm256_fmadd_pd(t, t, _mm256_mul_pd(g2, x2));
    const __m256d num = _mm256_fmadd_pd(a2, x2, a0);
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  if (i < n) rational_batch_scalar(r, omega + i, out + i, n - i);
}

#endif

namespace {

struct Dispatch {
  batch_fn fn;
  const char* name;
};

Dispatch pick_kernel() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return {rational_batch_avx2, "avx2"};
#endif
  return {rational_batch_scalar, "scalar"};
}

const Dispatch& cached() {
  static const Dispatch d = pick_kernel();
  return d;
}

}  // namespace

batch_fn active_kernel() { return cached().fn; }
const char* active_kernel_name() { return cached().name; }

}  // namespace omcond::kernels
