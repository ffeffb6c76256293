#include "omcond/entanglement.hpp"

#include <cmath>
#include <sstream>

namespace omcond {

namespace {

Mat2 scaled_sum(const CovMat2& x, const CovMat2& y, double sx, double sy) {
  return {sx * x.V_qq + sy * y.V_qq, sx * x.V_qp + sy * y.V_qp,
          sx * x.V_qp + sy * y.V_qp, sx * x.V_pp + sy * y.V_pp};
}

double det4(const TwoModeCovariance& V) {
  double M[4][4] = {
      {V.V_A.a, V.V_A.b, V.V_AB.a, V.V_AB.b},
      {V.V_A.c, V.V_A.d, V.V_AB.c, V.V_AB.d},
      {V.V_AB.a, V.V_AB.c, V.V_B.a, V.V_B.b},
      {V.V_AB.b, V.V_AB.d, V.V_B.c, V.V_B.d},
  };
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::fabs(M[r][col]) > std::fabs(M[piv][col])) piv = r;
    if (M[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      for (int c = 0; c < 4; ++c) std::swap(M[piv][c], M[col][c]);
      det = -det;
    }
    det *= M[col][col];
    for (int r = col + 1; r < 4; ++r) {
      const double f = M[r][col] / M[col][col];
      for (int c = col; c < 4; ++c) M[r][c] -= f * M[col][c];
    }
  }
  return det;
}

// Smallest symplectic eigenvalue from the det invariants; sign = +1 gives the
// spectrum of V itself (physicality), sign = -1 the partial transpose
// (separability).
double nu_minus_of(const TwoModeCovariance& V, double sign) {
  const double detV = det4(V);
  if (detV <= 0.0) {
    std::ostringstream os;
    os << "unphysical two-mode covariance: det = " << detV;
    throw model_error(errc::unphysical_state, os.str());
  }
  const double Sigma =
      V.V_A.det() + V.V_B.det() + 2.0 * sign * V.V_AB.det();
  double disc = Sigma * Sigma - 4.0 * detV;
  if (disc < 0.0) {
    // Exact-degeneracy rounding (nu_- = nu_+); anything materially negative
    // means the invariants are inconsistent.
    if (disc > -1e-10 * Sigma * Sigma) {
      disc = 0.0;
    } else {
      std::ostringstream os;
      os << "degenerate symplectic spectrum: Sigma^2 - 4 det V = " << disc
         << " (Sigma = " << Sigma << ", det V = " << detV << ")";
      throw model_error(errc::unphysical_state, os.str());
    }
  }
  const double nu2 = 0.5 * (Sigma - std::sqrt(disc));
  if (!(nu2 > 0.0))
    throw model_error(errc::unphysical_state,
                      "non-positive squared symplectic eigenvalue");
  return std::sqrt(nu2);
}

}  // namespace

std::pair<ConditionalState, ConditionalState>
mode_covariances(const SystemParams& p, double delta, double theta) {
  if (!(delta >= 0.0))
    throw model_error(errc::invalid_params, "delta must be >= 0");
  if (delta >= 1.0) {
    std::ostringstream os;
    os << "differential mode unstable: delta = " << delta << " >= 1";
    throw model_error(errc::differential_mode_unstable, os.str());
  }
  SystemParams plus = p;
  SystemParams minus = p;
  minus.Omega_bare = p.Omega_bare * std::sqrt(1.0 - delta);
  return {make_state(plus, theta), make_state(minus, theta)};
}

TwoModeCovariance assemble_two_mode(const CovMat2& plus, const CovMat2& minus) {
  TwoModeCovariance V;
  V.V_A = scaled_sum(plus, minus, 0.5, 0.5);
  V.V_B = V.V_A;
  V.V_AB = scaled_sum(plus, minus, 0.5, -0.5);
  return V;
}

NegativityResult log_negativity(const TwoModeCovariance& V) {
  const double nu = nu_minus_of(V, -1.0);
  NegativityResult r;
  r.nu_minus = nu;
  r.E_N = (nu < 1.0) ? -std::log2(nu) : 0.0;
  return r;
}

bool bona_fide(const TwoModeCovariance& V, double tol) {
  // Positivity: for the V_A = V_B, symmetric-V_AB structure the +/- rotation
  // block-diagonalizes V into V_A +/- V_AB, so PSD reduces to 2x2 checks.
  auto psd2 = [tol](double a, double b, double c, double d) {
    return a >= -tol && d >= -tol && a * d - b * c >= -tol;
  };
  const Mat2& A = V.V_A;
  const Mat2& C = V.V_AB;
  if (!psd2(A.a + C.a, A.b + C.b, A.c + C.c, A.d + C.d)) return false;
  if (!psd2(A.a - C.a, A.b - C.b, A.c - C.c, A.d - C.d)) return false;
  // Uncertainty relation nu_-(V) >= 1 phrased through the invariants:
  // det V - Sigma + 1 = (nu_+^2 - 1)(nu_-^2 - 1) >= 0 together with
  // Sigma >= 2. Unlike the eigenvalue itself these stay well-conditioned at
  // pure states, where nu_+ = nu_- = 1 makes sqrt(Sigma^2 - 4 det V) lose
  // half the working digits.
  const double detV = det4(V);
  const double Sigma = V.V_A.det() + V.V_B.det() + 2.0 * V.V_AB.det();
  const double scale = 1.0 + std::fabs(Sigma) + std::fabs(detV);
  return detV - Sigma + 1.0 >= -tol * scale && Sigma >= 2.0 - tol * scale;
}

NegativityResult gie_point(const SystemParams& p, double delta, double theta) {
  const auto [sp, sm] = mode_covariances(p, delta, theta);
  const CovMat2 cp = covariance_main(sp.fp, sp.der, sp.mc);
  const CovMat2 cm = covariance_main(sm.fp, sm.der, sm.mc);
  return log_negativity(assemble_two_mode(cp, cm));
}

}  // namespace omcond
