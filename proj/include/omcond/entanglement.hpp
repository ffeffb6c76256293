#pragma once

#include <utility>

#include "omcond/covariance.hpp"
#include "omcond/params.hpp"

namespace omcond {

struct Mat2 {
  double a, b, c, d;  // row-major [[a, b], [c, d]]
  double det() const { return a * d - b * c; }
};

// 4x4 covariance of two mirrors in (q_A, p_A, q_B, p_B) ordering, stored as
// blocks: [[V_A, V_AB], [V_AB^T, V_B]]. The assembly below always yields
// V_A = V_B and symmetric V_AB.
struct TwoModeCovariance {
  Mat2 V_A, V_B, V_AB;
};

struct NegativityResult {
  double nu_minus;  // smallest partial-transpose symplectic eigenvalue
  double E_N;       // logarithmic negativity [bits]: max{0, -log2(nu_minus)}
};

// The two gravitationally coupled mirrors separate into common (+) and
// differential (-) modes with bare frequencies Omega and Omega*sqrt(1-delta);
// each mode runs the complete single-mirror pipeline at common (Delta, theta).
std::pair<ConditionalState, ConditionalState>
mode_covariances(const SystemParams& p, double delta, double theta);

// Mirror-basis blocks from the +/- mode covariances via the orthogonal
// rotation q_A = (q_+ + q_-)/sqrt(2), q_B = (q_+ - q_-)/sqrt(2).
TwoModeCovariance assemble_two_mode(const CovMat2& plus, const CovMat2& minus);

NegativityResult log_negativity(const TwoModeCovariance& V);

// Physicality (bona fide) check: matrix positivity plus the uncertainty
// relation nu_-(V) >= 1, the latter tested through the symplectic invariants
// det V - Sigma + 1 >= 0 and Sigma >= 2, which remain well-conditioned for
// pure states. Valid for the V_A = V_B, symmetric-V_AB matrices this module
// produces.
bool bona_fide(const TwoModeCovariance& V, double tol = 1e-9);

// Full pipeline: two conditional states -> assembled covariance -> negativity.
NegativityResult gie_point(const SystemParams& p, double delta, double theta);

}  // namespace omcond
