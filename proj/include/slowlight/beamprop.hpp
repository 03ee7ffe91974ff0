#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "slowlight/constants.hpp"
#include "slowlight/fields.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/warnings.hpp"

namespace slowlight {

/// Uniform transverse grid. n must be a power of two; window wide enough to
/// hold the beam after diffraction through the cell.
struct GridSpec {
  int n = 1024;
  double window = 4e-3; // full width, meters

  void validate() const {
    if (n < 2 || (n & (n - 1)) != 0)
      throw std::invalid_argument("grid size must be a power of two");
    if (!(window > 0.0)) throw std::invalid_argument("window must be > 0");
  }
  double dx() const { return window / n; }

  Eigen::ArrayXd axis() const {
    Eigen::ArrayXd x(n);
    for (int i = 0; i < n; ++i) x[i] = (i - n / 2) * dx();
    return x;
  }

  /// Picks window and point count from the beam waist, accounting for
  /// diffraction spreading over the cell length.
  static GridSpec automatic(double waist, double cell_length, double lambda) {
    const double zr = constants::pi * waist * waist / lambda;
    const double spread = std::sqrt(1.0 + (cell_length / zr) * (cell_length / zr));
    const double window = std::max(8.0 * waist, 10.0 * waist * spread);
    const double dx_max = waist / 32.0;
    int n = 64;
    while (window / n > dx_max && n < (1 << 22)) n *= 2;
    return {n, window};
  }
};

/// Complex signal-beam amplitude sampled on a transverse grid at plane z.
struct TransverseField {
  Eigen::ArrayXd grid;       // x samples, meters
  Eigen::ArrayXcd amplitude; // sqrt(W/m) units: power = sum |E|^2 dx
  double z = 0.0;
  double wavelength = 795e-9;

  double dx() const { return grid[1] - grid[0]; }
  double wavenumber() const { return constants::two_pi / wavelength; }

  double power() const { return amplitude.abs2().sum() * dx(); }

  double centroid() const {
    const double p = power();
    if (!(p > 0.0)) throw std::domain_error("zero transmitted power");
    return (grid * amplitude.abs2()).sum() * dx() / p;
  }
};

/// Gaussian beam E(x) ~ exp(-x^2 / w^2), normalized to the given power.
/// Intensity profile exp(-2 x^2 / w^2); "diameter" = 2w.
inline TransverseField gaussian_input(double waist, double power,
                                      const GridSpec& grid,
                                      double wavelength = 795e-9) {
  grid.validate();
  if (!(waist > 0.0)) throw std::invalid_argument("waist must be > 0");
  if (!(power > 0.0)) throw std::invalid_argument("power must be > 0");
  if (grid.dx() > waist / 32.0)
    throw std::invalid_argument("grid too coarse: need >= 32 samples per waist");
  if (grid.window < 4.0 * 2.0 * waist)
    throw std::invalid_argument("window must be >= 4x beam diameter");

  TransverseField f;
  f.grid = grid.axis();
  f.wavelength = wavelength;
  f.z = 0.0;
  Eigen::ArrayXd profile = (-(f.grid * f.grid) / (waist * waist)).exp();
  const double norm = (profile * profile).sum() * grid.dx();
  f.amplitude = (profile * std::sqrt(power / norm)).cast<std::complex<double>>();
  return f;
}

/// Transverse optical response sampled on the grid.
struct TransverseResponse {
  Eigen::ArrayXd n_minus_1; // n(x) - 1
  Eigen::ArrayXd kappa_abs; // intensity absorption, 1/m
};

inline TransverseResponse medium_response(const MediumParams& medium,
                                          const FieldMap& fmap,
                                          double delta_laser,
                                          const Eigen::ArrayXd& grid) {
  const Eigen::ArrayXd deltas =
      detuning_profile(fmap, medium.g_factor, delta_laser, grid);
  TransverseResponse r;
  r.n_minus_1.resize(grid.size());
  r.kappa_abs.resize(grid.size());
  double max_chi = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const std::complex<double> chi = susceptibility(medium, deltas[i]).chi;
    max_chi = std::max(max_chi, std::abs(chi));
    r.n_minus_1[i] = 0.5 * chi.real();
    r.kappa_abs[i] = medium.wavenumber() * chi.imag();
  }
  if (max_chi > 0.1)
    warn("susceptibility |chi| up to " + std::to_string(max_chi) +
         " on the grid; weak-response propagation is inaccurate");
  return r;
}

namespace detail {

inline Eigen::ArrayXd kx_axis(int n, double dx) {
  Eigen::ArrayXd kx(n);
  const double dk = constants::two_pi / (n * dx);
  for (int i = 0; i < n; ++i) kx[i] = (i < n / 2 ? i : i - n) * dk;
  return kx;
}

} // namespace detail

/// Symmetric split-step propagation over length L through a z-independent
/// transverse response: half-step spectral diffraction, full-step medium
/// phase/absorption, half-step diffraction.
inline TransverseField propagate(const TransverseField& input,
                                 const TransverseResponse& response,
                                 double length, int n_steps) {
  if (n_steps < 64) throw std::invalid_argument("n_steps must be >= 64");
  if (response.n_minus_1.size() != input.grid.size())
    throw std::invalid_argument("response does not match the grid");

  const int n = int(input.grid.size());
  const double dz = length / n_steps;
  const double k = input.wavenumber();
  const Eigen::ArrayXd kx = detail::kx_axis(n, input.dx());

  const Eigen::ArrayXcd half_diffraction =
      (std::complex<double>(0.0, -0.5 * dz / (2.0 * k)) * (kx * kx)).exp();
  const Eigen::ArrayXcd medium_step =
      (std::complex<double>(0.0, 1.0) * (k * dz * response.n_minus_1) -
       0.5 * dz * response.kappa_abs)
          .exp();

  Eigen::FFT<double> fft;
  Eigen::VectorXcd work = input.amplitude.matrix();
  Eigen::VectorXcd spec(n);

  auto diffract_half = [&] {
    fft.fwd(spec, work);
    spec.array() *= half_diffraction;
    fft.inv(work, spec);
  };

  for (int step = 0; step < n_steps; ++step) {
    diffract_half();
    work.array() *= medium_step;
    diffract_half();
  }

  TransverseField out = input;
  out.amplitude = work.array();
  out.z = input.z + length;
  return out;
}

/// Propagation through the EIT cell with the Zeeman detuning profile.
/// n_steps = 0 selects the default (256) and doubles until the exit centroid
/// moves by less than 1% under a further doubling.
inline TransverseField propagate_cell(const TransverseField& input,
                                      const MediumParams& medium,
                                      const FieldMap& fmap, double delta_laser,
                                      int n_steps = 0) {
  const TransverseResponse response =
      medium_response(medium, fmap, delta_laser, input.grid);
  const double L = medium.cell_length;
  if (n_steps > 0) return propagate(input, response, L, n_steps);

  const double atol = 1e-9 * input.grid[input.grid.size() - 1];
  int steps = 256;
  TransverseField coarse = propagate(input, response, L, steps);
  for (; steps <= 8192; steps *= 2) {
    TransverseField fine = propagate(input, response, L, 2 * steps);
    const double c0 = coarse.centroid(), c1 = fine.centroid();
    if (std::abs(c1 - c0) <= std::max(0.01 * std::abs(c1), atol)) return fine;
    coarse = std::move(fine);
  }
  throw std::runtime_error("step not converged: exit centroid keeps moving "
                           "under step doubling");
}

struct BeamGeometry {
  double centroid = 0.0; // meters at the exit plane
  double angle = 0.0;    // radians
};

/// Exit centroid and deflection angle. The angle comes from the
/// power-weighted transverse wavevector expectation <k_x>/k of the exit
/// field, which is insensitive to diffraction spreading.
inline BeamGeometry centroid_and_angle(const TransverseField& entry,
                                       const TransverseField& exit) {
  if (!(entry.power() > 0.0) || !(exit.power() > 0.0))
    throw std::domain_error("zero transmitted power");

  const int n = int(exit.grid.size());
  Eigen::FFT<double> fft;
  Eigen::VectorXcd spec(n);
  Eigen::VectorXcd amp = exit.amplitude.matrix();
  fft.fwd(spec, amp);
  const Eigen::ArrayXd kx = detail::kx_axis(n, exit.dx());
  const Eigen::ArrayXd pw = spec.array().abs2();
  const double mean_kx = (kx * pw).sum() / pw.sum();

  return {exit.centroid(), mean_kx / exit.wavenumber()};
}

/// One sample of a deflection/transmission spectrum.
struct DeflectionRecord {
  double delta_laser = 0.0;         // rad/s
  double transmission = 0.0;        // exit power / entry power
  double centroid_exit = 0.0;       // meters
  double angle = 0.0;               // radians
  double camera_displacement = 0.0; // centroid + angle * D, meters
};

/// Spectrum over the given on-axis detunings. Points are independent; they
/// are distributed over threads with a deterministic result.
inline std::vector<DeflectionRecord> deflection_spectrum(
    const MediumParams& medium, const FieldMap& fmap,
    const TransverseField& beam, const std::vector<double>& deltas,
    double camera_distance, int n_steps = 0, unsigned threads = 1) {
  if (deltas.empty()) throw std::invalid_argument("empty detuning range");
  double span = 0.0;
  for (double d : deltas) span = std::max(span, std::abs(d));
  if (span < 3.0 * eit_halfwidth(medium))
    throw std::invalid_argument("detuning range must span at least 3x the "
                                "EIT window");

  const double entry_power = beam.power();
  std::vector<DeflectionRecord> records(deltas.size());

  auto compute = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const TransverseField exit =
          propagate_cell(beam, medium, fmap, deltas[i], n_steps);
      const BeamGeometry g = centroid_and_angle(beam, exit);
      // passive medium: the true ratio is <= 1, excursions are roundoff
      const double transmission =
          std::clamp(exit.power() / entry_power, 0.0, 1.0);
      records[i] = {deltas[i], transmission, g.centroid, g.angle,
                    g.centroid + g.angle * camera_distance};
    }
  };

  if (threads <= 1) {
    compute(0, deltas.size());
  } else {
    const std::size_t total = deltas.size();
    const unsigned nt = std::min<unsigned>(threads, unsigned(total));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back(compute, total * t / nt, total * (t + 1) / nt);
    for (auto& th : pool) th.join();
  }
  return records;
}

} // namespace slowlight
