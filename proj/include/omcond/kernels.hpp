#pragma once

#include <cstddef>

#include "omcond/filter.hpp"

namespace omcond::kernels {

using batch_fn = void (*)(const RationalSpec&, const double*, double*, std::size_t);

// Reference implementation: one rational-spectrum evaluation per element.
// Uses std::fma in the same operation order as the vector variants so all
// paths round identically (equivalence is bitwise, not approximate).
void rational_batch_scalar(const RationalSpec& r, const double* omega,
                           double* out, std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
// AVX2+FMA variant; safe to reference unconditionally, dispatched at runtime.
void rational_batch_avx2(const RationalSpec& r, const double* omega,
                         double* out, std::size_t n);
#endif

// Best kernel supported by the executing CPU (decided once, cached).
batch_fn active_kernel();
const char* active_kernel_name();

inline void rational_batch(const RationalSpec& r, const double* omega,
                           double* out, std::size_t n) {
  active_kernel()(r, omega, out, n);
}

}  // namespace omcond::kernels
