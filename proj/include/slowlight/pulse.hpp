#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "slowlight/constants.hpp"
#include "slowlight/gaussian_fit.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/warnings.hpp"

namespace slowlight {

/// Temporal intensity trace with the Gaussian-fit summary of its peak.
struct PulseTrace {
  Eigen::ArrayXd t;         // seconds
  Eigen::ArrayXd intensity; // watts
  double fit_peak_time = 0.0;
  double fit_sigma = 0.0;
  double fit_residual = 0.0;      // RMS
  double fit_peak_variance = 0.0; // var(t0) from the fit covariance
};

struct PulsePair {
  PulseTrace entry;
  PulseTrace exit;
};

namespace detail {

inline PulseTrace make_trace(const Eigen::ArrayXd& t,
                             const Eigen::ArrayXd& intensity) {
  PulseTrace tr;
  tr.t = t;
  tr.intensity = intensity;
  const GaussianFit fit = fit_gaussian_peak(t, intensity);
  tr.fit_peak_time = fit.center;
  tr.fit_sigma = fit.sigma;
  tr.fit_residual = fit.residual_rms;
  tr.fit_peak_variance = fit.center_variance;
  return tr;
}

} // namespace detail

/// Gaussian pulse (intensity std sigma_t) sent through the cell at on-axis
/// detuning delta_laser. Propagation is spectral: each envelope component at
/// offset nu from the carrier acquires
/// exp(i (nu/c + k (n(delta+nu) - 1)) L - kappa(delta+nu) L / 2).
inline PulsePair propagate_pulse(const MediumParams& medium, double delta_laser,
                                 double sigma_t, int n_points = 8192,
                                 double peak_power = 1e-6) {
  medium.validate();
  if (!(sigma_t > 0.0)) throw std::invalid_argument("sigma_t must be > 0");
  if (n_points < 64 || (n_points & (n_points - 1)) != 0)
    throw std::invalid_argument("n_points must be a power of two >= 64");

  const double window = eit_halfwidth(medium);
  const double spectral_width = 1.0 / sigma_t;
  const double ratio = spectral_width / window;
  if (ratio > 1.0)
    throw std::domain_error("pulse exceeds window: spectral width above the "
                            "EIT window");
  if (ratio > 0.2)
    warn("pulse spectral width is " + std::to_string(ratio) +
         "x the EIT window; delay measurement will be biased");

  const double L = medium.cell_length;
  double delay_estimate = L / constants::c;
  if (medium.rabi_control > 0.0) delay_estimate = L / group_velocity(medium);

  const double span = 16.0 * sigma_t + 1.5 * delay_estimate;
  const double dt = span / n_points;
  const double t0 = 5.0 * sigma_t; // leading tail at t = 0 below 4e-6 of peak

  Eigen::ArrayXd t(n_points);
  for (int i = 0; i < n_points; ++i) t[i] = i * dt;

  const Eigen::ArrayXd envelope =
      std::sqrt(peak_power) * (-(t - t0).square() / (4.0 * sigma_t * sigma_t)).exp();

  Eigen::FFT<double> fft;
  Eigen::VectorXcd spec(n_points);
  Eigen::VectorXcd amp = envelope.cast<std::complex<double>>().matrix();
  fft.fwd(spec, amp);

  const double k = medium.wavenumber();
  const double domega = constants::two_pi / span;
  for (int i = 0; i < n_points; ++i) {
    const double bin_omega = (i < n_points / 2 ? i : i - n_points) * domega;
    const double nu = -bin_omega; // physical offset from the carrier
    const IndexPoint ip = refractive_index(medium, delta_laser + nu);
    const std::complex<double> phase(
        -0.5 * ip.kappa_abs * L, (nu / constants::c + k * (ip.n - 1.0)) * L);
    spec[i] *= std::exp(phase);
  }
  fft.inv(amp, spec);

  PulsePair out;
  out.entry = detail::make_trace(t, envelope.square());
  out.exit = detail::make_trace(t, amp.array().abs2());
  return out;
}

struct VgMeasurement {
  double v_g = 0.0;
  double sigma = 0.0; // from the fit covariance of the peak positions
};

/// Group velocity the way the experiment measures it: delay of the fitted
/// pulse peak, v_g = L / delay.
inline VgMeasurement measure_vg(const MediumParams& medium, double sigma_t,
                                int n_points = 8192) {
  const PulsePair pair = propagate_pulse(medium, 0.0, sigma_t, n_points);
  const double delay = pair.exit.fit_peak_time - pair.entry.fit_peak_time;
  if (!(delay > 0.0)) throw std::domain_error("non-positive measured delay");
  const double L = medium.cell_length;
  const double var =
      pair.exit.fit_peak_variance + pair.entry.fit_peak_variance;
  return {L / delay, L / (delay * delay) * std::sqrt(std::max(var, 0.0))};
}

} // namespace slowlight
