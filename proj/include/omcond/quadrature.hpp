#pragma once

#include "omcond/filter.hpp"

namespace omcond {

struct QuadResult {
  double value;      // integral of the spectrum over omega (no 1/2pi factor)
  double abs_error;  // achieved error estimate
  int panels;        // panels used
};

enum class quad_range {
  full_line,  // omega in (-inf, inf)
  half_line,  // 2 * integral over (0, inf); equals full_line for even integrands
};

// Integral of a rational spectrum over the whole real line. The substitution
// omega = scale*tan(u) maps to u in (-pi/2, pi/2) and absorbs the ~omega^-2
// tail into a finite boundary value; panels are then refined adaptively
// (Gauss-Kronrod 7/15) until the summed error estimate is below
// rel_tol * |integral|. Throws quadrature_failure if the panel budget runs out.
QuadResult integrate_spectrum(const RationalSpec& spec, double scale,
                              double rel_tol,
                              quad_range range = quad_range::full_line,
                              int max_panels = 4000);

}  // namespace omcond
