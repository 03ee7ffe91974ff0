#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "slowlight/constants.hpp"
#include "slowlight/warnings.hpp"

namespace slowlight {

/// Parameters of the effective three-level medium seen by the signal field.
/// All rates and frequencies are angular (rad/s); lengths in meters.
struct MediumParams {
  double lambda_s = 795e-9;                    // signal wavelength
  double cell_length = 0.050;                  // L
  double rabi_control = 0.0;                   // control Rabi frequency Omega
  double coupling_collective = 0.0;            // collective coupling g*sqrt(N)
  double gamma_e = constants::two_pi * 5.7e6;  // excited-state decay Gamma
  double gamma_c = constants::two_pi * 1.0e3;  // ground coherence decay
  double delta_one_photon = 0.0;               // control one-photon detuning
  double g_factor = 0.5;                       // hyperfine g-factor g_F

  bool operator==(const MediumParams&) const = default;

  double omega_s() const { return constants::two_pi * constants::c / lambda_s; }
  double wavenumber() const { return constants::two_pi / lambda_s; }

  // Susceptibility prefactor A = (g sqrt(N))^2 / (2 omega_s), rad/s.
  double coupling_strength() const {
    return coupling_collective * coupling_collective / (2.0 * omega_s());
  }
  void set_coupling_strength(double a) {
    if (a < 0.0) throw std::invalid_argument("coupling strength must be >= 0");
    coupling_collective = std::sqrt(2.0 * omega_s() * a);
  }

  void validate() const {
    if (!(lambda_s > 0.0)) throw std::invalid_argument("lambda_s must be > 0");
    if (!(cell_length > 0.0)) throw std::invalid_argument("cell_length must be > 0");
    if (rabi_control < 0.0 || coupling_collective < 0.0 || gamma_e < 0.0 ||
        gamma_c < 0.0)
      throw std::invalid_argument("rates and frequencies must be >= 0");
    // EIT sanity bound; gamma_c == 0 is always admissible.
    if (gamma_c > 0.0 && gamma_c >= gamma_e)
      throw std::invalid_argument("gamma_c must be below gamma_e");
  }
};

struct ComplexSusceptibility {
  std::complex<double> chi;
  double delta = 0.0; // two-photon detuning it was evaluated at, rad/s
};

/// Weak-probe susceptibility of the Lambda system,
///   chi(delta) = A (delta + i gamma_c) /
///                [Omega^2/4 - (delta + i gamma_c)(delta + Delta + i Gamma/2)],
/// normalized so Im chi >= 0 (passive medium) and d Re chi / d delta > 0 at
/// the dark resonance.
inline ComplexSusceptibility susceptibility(const MediumParams& p, double delta) {
  p.validate();
  if (p.gamma_c == 0.0 && p.gamma_e == 0.0)
    throw std::domain_error("lossless-singular medium: gamma_c = Gamma = 0 puts "
                            "susceptibility poles on the real axis");
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> num = delta + i * p.gamma_c;
  const std::complex<double> den =
      p.rabi_control * p.rabi_control / 4.0 -
      num * (delta + p.delta_one_photon + i * p.gamma_e / 2.0);
  return {p.coupling_strength() * num / den, delta};
}

struct IndexPoint {
  double n = 1.0;         // real refractive index
  double kappa_abs = 0.0; // intensity absorption coefficient, 1/m
};

inline IndexPoint index_from_chi(const MediumParams& p, std::complex<double> chi) {
  if (std::abs(chi) > 0.1)
    warn("susceptibility |chi| = " + std::to_string(std::abs(chi)) +
         " exceeds the weak-response regime (|chi| << 1)");
  return {1.0 + 0.5 * chi.real(), p.wavenumber() * chi.imag()};
}

inline IndexPoint refractive_index(const MediumParams& p, double delta) {
  return index_from_chi(p, susceptibility(p, delta).chi);
}

/// Half-width of the transparency window (rad/s): the dark-resonance
/// linewidth (Omega^2/4 + gamma_c Gamma/2) / (Gamma/2).
inline double eit_halfwidth(const MediumParams& p) {
  return (p.rabi_control * p.rabi_control / 4.0 +
          p.gamma_c * p.gamma_e / 2.0) /
         (p.gamma_e / 2.0);
}

namespace detail {

// d(Re chi)/d(delta) at delta = 0 by central difference. Differencing Re chi
// directly, not n = 1 + Re chi / 2, keeps full relative precision when the
// dispersion is many orders below unity.
inline double rechi_slope_fd(const MediumParams& p, double h) {
  const double fp = susceptibility(p, h).chi.real();
  const double fm = susceptibility(p, -h).chi.real();
  return (fp - fm) / (2.0 * h);
}

} // namespace detail

/// Group velocity v_g = c / (n + omega dn/domega) evaluated on the dark
/// resonance, with dn/domega from an adaptive central finite difference.
inline double group_velocity(const MediumParams& p) {
  p.validate();
  if (!(p.rabi_control > 0.0))
    throw std::domain_error("EIT window closed: rabi_control must be > 0");
  const double n0 = 1.0 + 0.5 * susceptibility(p, 0.0).chi.real();

  double h = 1.0e-3 * p.rabi_control * p.rabi_control / p.gamma_e;
  double prev = detail::rechi_slope_fd(p, h);
  for (int iter = 0; iter < 48; ++iter) {
    h *= 0.5;
    const double cur = detail::rechi_slope_fd(p, h);
    const double scale = std::max(std::abs(cur), std::abs(prev));
    if (scale == 0.0 || std::abs(cur - prev) <= 1.0e-3 * scale) {
      const double vg = constants::c / (n0 + p.omega_s() * 0.5 * cur);
      if (!(vg > 0.0) || vg > constants::c * (1.0 + 1e-9))
        throw std::domain_error("window too narrow: group velocity estimate "
                                "left (0, c]");
      return std::min(vg, constants::c);
    }
    prev = cur;
  }
  throw std::domain_error("window too narrow: finite-difference slope did not "
                          "converge to 0.1%");
}

/// Adjusts the coupling strength A (equivalently g*sqrt(N)) so that
/// group_velocity hits target_vg. Deterministic bisection; A is searched in
/// [1e-12, 1e2] rad/s.
inline MediumParams calibrate_to_vg(const MediumParams& p, double target_vg) {
  p.validate();
  if (!(target_vg > 0.0) || !(target_vg < constants::c))
    throw std::invalid_argument("target velocity must lie in (0, c)");

  constexpr double a_lo = 1.0e-12;
  constexpr double a_hi = 1.0e2;
  MediumParams trial = p;

  auto vg_at = [&](double a) {
    trial.set_coupling_strength(a);
    return group_velocity(trial);
  };

  // v_g is monotone decreasing in A.
  if (target_vg > vg_at(a_lo) || target_vg < vg_at(a_hi))
    throw std::domain_error("unreachable velocity: target requires coupling "
                            "strength outside [1e-12, 1e2]");

  double lo = a_lo, hi = a_hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double vg = vg_at(mid);
    if (std::abs(vg - target_vg) <= 1.0e-3 * target_vg) break;
    if (vg > target_vg)
      lo = mid;
    else
      hi = mid;
  }
  trial.set_coupling_strength(0.5 * (lo + hi));
  return trial;
}

} // namespace slowlight
