#pragma once

#include "omcond/constants.hpp"
#include "omcond/params.hpp"

// Shared reference points for the test suite. "baseline" is the resonant
// readout point used throughout; "detuned" shifts the probe to Delta = 0.05*kappa.
namespace fx {

inline omcond::SystemParams baseline() {
  const double two_pi = 2.0 * omcond::constants::pi;
  omcond::SystemParams p{};
  p.m = 1e-4;
  p.ell = 0.1;
  p.Omega_bare = two_pi * 1e-3;
  p.kappa = two_pi * 1e8;
  p.omega_c = two_pi * 2.818e14;
  p.Gamma_bare = two_pi * 1e-18;
  p.gamma_m = two_pi * 1e-6;
  p.P_in = 1e-8;
  p.T = 1.0;
  p.Delta = 0.0;
  p.theta = -omcond::constants::pi / 50.0;
  return p;
}

inline omcond::SystemParams detuned() {
  omcond::SystemParams p = baseline();
  p.Delta = 0.05 * p.kappa;
  return p;
}

}  // namespace fx
