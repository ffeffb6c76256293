#include "omcond/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "omcond/kernels.hpp"

namespace omcond {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half; node 7 is 0).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 7-point Gauss weights, matching xgk indices 1, 3, 5 and the center node.
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;       // interval in the transformed variable u
  double integral;   // Kronrod estimate
  double err;        // |Kronrod - Gauss|
};

Panel eval_panel(const RationalSpec& spec, double scale, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double u[15], omega[15], s[15];
  for (int k = 0; k < 7; ++k) {
    u[k] = c - h * xgk[k];
    u[14 - k] = c + h * xgk[k];
  }
  u[7] = c;
  for (int k = 0; k < 15; ++k) omega[k] = scale * std::tan(u[k]);
  kernels::rational_batch(spec, omega, s, 15);
  // Jacobian: d(omega)/du = scale * sec^2(u) = scale * (1 + tan^2(u)).
  double f[15];
  for (int k = 0; k < 15; ++k) {
    const double t = omega[k] / scale;
    f[k] = s[k] * scale * std::fma(t, t, 1.0);
  }
  double kr = wgk[7] * f[7];
  double gs = wg[3] * f[7];
  for (int k = 0; k < 7; ++k) kr += wgk[k] * (f[k] + f[14 - k]);
  for (int k = 0; k < 4; ++k) {
    const int j = 2 * k + 1;
    if (j < 7) gs += wg[k] * (f[j] + f[14 - j]);
  }
  return {a, b, h * kr, h * std::fabs(kr - gs)};
}

}  // namespace

QuadResult integrate_spectrum(const RationalSpec& spec, double scale,
                              double rel_tol, quad_range range,
                              int max_panels) {
  if (!(scale > 0.0) || !(rel_tol > 0.0))
    throw model_error(errc::quadrature_failure,
                      "integrate_spectrum requires scale > 0 and rel_tol > 0");
  const double half_pi = 0.5 * constants::pi;
  std::vector<Panel> panels;
  panels.reserve(64);
  const double lo = (range == quad_range::half_line) ? 0.0 : -half_pi;
  // Initial splits at the resonance images u = ±pi/4 (omega = ±scale).
  std::vector<double> knots;
  if (range == quad_range::half_line) {
    knots = {0.0, 0.25 * constants::pi, half_pi};
  } else {
    knots = {-half_pi, -0.25 * constants::pi, 0.0, 0.25 * constants::pi, half_pi};
  }
  (void)lo;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    panels.push_back(eval_panel(spec, scale, knots[i], knots[i + 1]));

  for (;;) {
    double total = 0.0, err = 0.0, mag = 0.0;
    for (const auto& p : panels) {
      total += p.integral;
      err += p.err;
      mag += std::fabs(p.integral);
    }
    const double target = rel_tol * std::max(std::fabs(total), 1e-12 * mag);
    const double result = (range == quad_range::half_line) ? 2.0 * total : total;
    if (err <= target)
      return {result, (range == quad_range::half_line) ? 2.0 * err : err,
              static_cast<int>(panels.size())};
    if (static_cast<int>(panels.size()) >= max_panels) {
      std::ostringstream os;
      os << "quadrature did not converge: achieved relative error "
         << (std::fabs(total) > 0 ? err / std::fabs(total) : err)
         << " with " << panels.size() << " panels (target " << rel_tol << ")";
      throw model_error(errc::quadrature_failure, os.str());
    }
    auto worst = std::max_element(
        panels.begin(), panels.end(),
        [](const Panel& x, const Panel& y) { return x.err < y.err; });
    const Panel w = *worst;
    const double mid = 0.5 * (w.a + w.b);
    *worst = eval_panel(spec, scale, w.a, mid);
    panels.push_back(eval_panel(spec, scale, mid, w.b));
  }
}

}  // namespace omcond
