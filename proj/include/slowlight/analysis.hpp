#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "slowlight/beamprop.hpp"
#include "slowlight/constants.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/polariton.hpp"
#include "slowlight/pulse.hpp"

namespace slowlight {

struct SweepRow {
  double rabi_control = 0.0;        // rad/s
  double v_g = 0.0;                 // m/s (measured or model)
  double v_g_sigma = 0.0;           // m/s
  double angle = 0.0;               // rad (mean over repeats)
  double angle_sigma = 0.0;         // standard deviation of the mean
  double camera_displacement = 0.0; // meters
};

struct SweepMeta {
  double grad_x = 0.0;
  double cell_length = 0.0;
  double beam_waist = 0.0;
  double g_factor = 0.5;
  double wavenumber = 0.0;
  double camera_distance = 2.0;
};

/// Deflection-vs-inverse-group-velocity sweep; rows sorted by 1/v_g
/// ascending.
struct SweepResult {
  SweepMeta meta;
  std::vector<SweepRow> rows;
};

namespace detail {

inline void sort_by_inverse_vg(std::vector<SweepRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.v_g > b.v_g; });
}

} // namespace detail

struct SweepOptions {
  double pulse_sigma = 10e-3;    // s, for the group-velocity measurement
  int pulse_points = 8192;
  int repeats = 1;
  double noise_sigma_camera = 0.0; // meters, Gaussian on camera displacement
  std::uint64_t seed = 0;
  int n_steps = 0; // beam propagation steps (0 = auto)
};

/// Full-pipeline sweep: for each control Rabi frequency, measure v_g by
/// pulse delay and the deflection by beam propagation at two-photon
/// resonance.
inline SweepResult run_vg_sweep(const MediumParams& base, const FieldMap& fmap,
                                const TransverseField& beam,
                                double camera_distance,
                                const std::vector<double>& rabi_list,
                                const SweepOptions& opt = {}) {
  if (rabi_list.empty()) throw std::invalid_argument("empty Rabi list");
  if (opt.repeats < 1) throw std::invalid_argument("repeats must be >= 1");

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  SweepResult result;
  result.meta = {fmap.grad_x,
                 base.cell_length,
                 0.0,
                 base.g_factor,
                 base.wavenumber(),
                 camera_distance};

  for (double rabi : rabi_list) {
    MediumParams medium = base;
    medium.rabi_control = rabi;

    const VgMeasurement vg = measure_vg(medium, opt.pulse_sigma, opt.pulse_points);
    const TransverseField exit =
        propagate_cell(beam, medium, fmap, 0.0, opt.n_steps);
    const BeamGeometry g = centroid_and_angle(beam, exit);
    const double displacement = g.centroid + g.angle * camera_distance;

    double mean_angle = 0.0, m2 = 0.0, mean_disp = 0.0;
    for (int rep = 0; rep < opt.repeats; ++rep) {
      double disp = displacement;
      if (opt.noise_sigma_camera > 0.0)
        disp += opt.noise_sigma_camera * noise(rng);
      const double angle = (disp - g.centroid) / camera_distance;
      const double d = angle - mean_angle;
      mean_angle += d / (rep + 1);
      m2 += d * (angle - mean_angle);
      mean_disp += (disp - mean_disp) / (rep + 1);
    }
    const double angle_sigma =
        opt.repeats > 1 ? std::sqrt(m2 / (opt.repeats - 1) / opt.repeats) : 0.0;

    result.rows.push_back(
        {rabi, vg.v_g, vg.sigma, mean_angle, angle_sigma, mean_disp});
  }
  detail::sort_by_inverse_vg(result.rows);
  return result;
}

/// Sweep generated directly from the particle model (Eq.-of-motion forward
/// prediction). deflection_scale rescales every predicted angle, which lets
/// the moment-extraction arithmetic be exercised against known inputs.
inline SweepResult synthetic_sweep(const MediumParams& base,
                                   const FieldMap& fmap,
                                   double camera_distance,
                                   const std::vector<double>& rabi_list,
                                   double deflection_scale = 1.0) {
  if (rabi_list.empty()) throw std::invalid_argument("empty Rabi list");
  SweepResult result;
  result.meta = {fmap.grad_x,
                 base.cell_length,
                 0.0,
                 base.g_factor,
                 base.wavenumber(),
                 camera_distance};
  for (double rabi : rabi_list) {
    const PolaritonState ps =
        from_coupling(rabi, base.coupling_collective, base.g_factor);
    const double alpha = deflection_scale * sg_deflection(ps, base.cell_length,
                                                          fmap.grad_x,
                                                          base.wavenumber());
    result.rows.push_back(
        {rabi, ps.v_g, 0.0, alpha, 0.0, alpha * camera_distance});
  }
  detail::sort_by_inverse_vg(result.rows);
  return result;
}

struct MomentEstimate {
  double mu = 0.0;    // J/T, unweighted average over rows
  double ratio = 0.0; // 2 g_F mu_B / mu
  std::vector<double> per_row;
};

inline MomentEstimate extract_moment_from_sweep(const SweepResult& sweep) {
  if (sweep.rows.empty()) throw std::invalid_argument("empty sweep");
  if (sweep.meta.grad_x == 0.0)
    throw std::domain_error("undefined extraction: zero field gradient");
  MomentEstimate est;
  double total = 0.0;
  for (const SweepRow& row : sweep.rows) {
    const double mu = extract_moment(row.angle, row.v_g, sweep.meta.cell_length,
                                     sweep.meta.grad_x, sweep.meta.wavenumber);
    est.per_row.push_back(mu);
    total += mu;
  }
  est.mu = total / double(sweep.rows.size());
  est.ratio = 2.0 * sweep.meta.g_factor * constants::mu_bohr / est.mu;
  return est;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& xs,
                            const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n)
    throw std::invalid_argument("need at least two points");
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("degenerate abscissa");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ssr += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return fit;
}

/// Per-row shortfall of the measured deflection against the narrow-beam
/// particle-model prediction at the same group velocity: 1 - alpha/alpha_model.
inline std::vector<double> sublinearity(const SweepResult& sweep) {
  std::vector<double> dev;
  dev.reserve(sweep.rows.size());
  for (const SweepRow& row : sweep.rows) {
    const double s2 = 1.0 - row.v_g / constants::c;
    const double mu = 2.0 * sweep.meta.g_factor * constants::mu_bohr * s2;
    const double predicted = sweep.meta.cell_length / row.v_g * mu /
                             (constants::hbar * sweep.meta.wavenumber) *
                             sweep.meta.grad_x;
    dev.push_back(1.0 - row.angle / predicted);
  }
  return dev;
}

} // namespace slowlight
