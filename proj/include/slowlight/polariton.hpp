#pragma once

#include <cmath>
#include <stdexcept>

#include "slowlight/constants.hpp"

namespace slowlight {

/// Dark-polariton particle picture: mixing angle and the derived kinematic
/// and magnetic properties. tan(theta) = g sqrt(N) / Omega.
struct PolaritonState {
  double theta = 0.0;  // mixing angle, [0, pi/2)
  double v_g = 0.0;    // c cos^2(theta), m/s
  double mu_pol = 0.0; // 2 g_F mu_B sin^2(theta), J/T
  double g_pol = 0.0;  // 2 g_F sin^2(theta)
  double gyro = 0.0;   // -mu_pol / hbar, rad/(s T)
};

inline PolaritonState from_mixing_angle(double theta, double g_factor) {
  if (!(theta >= 0.0) || theta >= constants::pi / 2.0)
    throw std::invalid_argument("mixing angle must lie in [0, pi/2)");
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  PolaritonState ps;
  ps.theta = theta;
  ps.v_g = constants::c * c2;
  ps.mu_pol = 2.0 * g_factor * constants::mu_bohr * s2;
  ps.g_pol = 2.0 * g_factor * s2;
  ps.gyro = -ps.mu_pol / constants::hbar;
  return ps;
}

inline PolaritonState from_coupling(double omega, double gN, double g_factor) {
  if (gN < 0.0) throw std::invalid_argument("collective coupling must be >= 0");
  if (!(omega > 0.0))
    throw std::domain_error("fully atomic limit: Omega = 0 stops the "
                            "polariton (v_g = 0)");
  return from_mixing_angle(std::atan(gN / omega), g_factor);
}

/// Stern-Gerlach deflection angle, alpha = (L / v_g) (mu_pol / hbar k) dB/dx.
inline double sg_deflection(const PolaritonState& ps, double medium_length,
                            double grad_x, double k) {
  if (!(ps.v_g > 0.0)) throw std::domain_error("polariton is not propagating");
  const double alpha =
      medium_length / ps.v_g * ps.mu_pol / (constants::hbar * k) * grad_x;
  if (std::abs(alpha) >= 1.0e-2)
    throw std::domain_error("deflection leaves the small-angle regime");
  return alpha;
}

/// Magnetic moment from a measured deflection; exact inverse of
/// sg_deflection.
inline double extract_moment(double alpha, double v_g, double medium_length,
                             double grad_x, double k) {
  if (grad_x == 0.0)
    throw std::domain_error("undefined extraction: zero field gradient");
  if (!(v_g > 0.0)) throw std::invalid_argument("v_g must be > 0");
  return alpha * constants::hbar * k * v_g / (medium_length * grad_x);
}

} // namespace slowlight
