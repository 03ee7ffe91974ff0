#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "slowlight/constants.hpp"

namespace slowlight {

/// Transverse magnetic field map: B_z(x) = b0 + grad_x * x, bias along the
/// beam axis (z), magnitude varying along x.
struct FieldMap {
  double b0 = 116e-7;    // bias field on axis, tesla (116 mG)
  double grad_x = 9.1e-6; // dB_z/dx, tesla/meter (91 uG/mm)

  bool operator==(const FieldMap&) const = default;

  double bz(double x) const { return b0 + grad_x * x; }

  // The field must not change sign across the simulated window.
  void validate_window(double half_width) const {
    if (b0 > 0.0 && std::abs(grad_x) * half_width >= b0)
      throw std::invalid_argument("field map changes sign inside the window");
  }
};

/// Zeeman shift of the two-photon detuning at transverse position x:
/// 2 g_F mu_B B_z(x) / hbar, in rad/s.
inline double zeeman_shift(const FieldMap& f, double g_factor, double x) {
  return 2.0 * g_factor * constants::mu_bohr * f.bz(x) / constants::hbar;
}

/// Position-dependent two-photon detuning, referenced to the beam axis so
/// that delta(0) = delta_laser (the on-axis detuning is the scan variable).
inline Eigen::ArrayXd detuning_profile(const FieldMap& f, double g_factor,
                                       double delta_laser,
                                       const Eigen::ArrayXd& grid) {
  if (grid.size() == 0) throw std::invalid_argument("empty grid");
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("grid must be strictly increasing");
  f.validate_window(std::max(std::abs(grid[0]), std::abs(grid[grid.size() - 1])));

  const double on_axis = zeeman_shift(f, g_factor, 0.0);
  Eigen::ArrayXd out(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    out[i] = delta_laser + zeeman_shift(f, g_factor, grid[i]) - on_axis;
  return out;
}

/// Slope of the detuning profile, rad/s per meter.
inline double detuning_slope(const FieldMap& f, double g_factor) {
  return 2.0 * g_factor * constants::mu_bohr * f.grad_x / constants::hbar;
}

} // namespace slowlight
