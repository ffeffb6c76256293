#pragma once

namespace omcond::constants {

// CODATA 2018 values, SI units.
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B  = 1.380649e-23;     // J/K
inline constexpr double G    = 6.67430e-11;      // m^3 kg^-1 s^-2
inline constexpr double pi   = 3.141592653589793238462643383279502884;

}  // namespace omcond::constants
