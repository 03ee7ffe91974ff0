#pragma once

namespace slowlight::constants {

inline constexpr double c = 299'792'458.0;          // vacuum light speed, m/s
inline constexpr double hbar = 1.054571817e-34;     // reduced Planck constant, J*s
inline constexpr double mu_bohr = 9.2740100783e-24; // Bohr magneton, J/T
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

} // namespace slowlight::constants
