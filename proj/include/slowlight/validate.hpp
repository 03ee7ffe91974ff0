#pragma once

#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "slowlight/analysis.hpp"
#include "slowlight/beamprop.hpp"
#include "slowlight/constants.hpp"
#include "slowlight/fields.hpp"
#include "slowlight/fock.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/polariton.hpp"
#include "slowlight/scenario.hpp"

namespace slowlight {

/// Fast self-check battery behind the `validate` CLI verb. Returns the
/// number of failed checks; prints one line per check.
inline int run_validation(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& fn) {
    bool ok = false;
    std::string note;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      note = std::string(" (") + e.what() + ")";
    }
    out << (ok ? "ok   " : "FAIL ") << name << note << "\n";
    if (!ok) ++failures;
  };

  MediumParams med;
  med.rabi_control = constants::two_pi * 50e3;
  med.gamma_c = 0.0;
  med.set_coupling_strength(10.0);

  check("susceptibility parity (delta=0 one-photon)", [&] {
    for (double d : {0.1 * med.rabi_control, 0.37 * med.rabi_control}) {
      const auto plus = susceptibility(med, d).chi;
      const auto minus = susceptibility(med, -d).chi;
      if (std::abs(plus.real() + minus.real()) > 1e-12 * std::abs(plus.real()))
        return false;
      if (std::abs(plus.imag() - minus.imag()) > 1e-12 * std::abs(plus.imag()))
        return false;
    }
    return true;
  });

  check("transparency loss grows with gamma_c", [&] {
    MediumParams m = med;
    double prev = -1.0;
    for (double gc : {0.0, 50.0, 500.0, 5000.0}) {
      m.gamma_c = gc;
      const double im = susceptibility(m, 0.0).chi.imag();
      if (im <= prev) return false;
      prev = im;
    }
    return true;
  });

  check("normal dispersion at the dark resonance", [&] {
    const double h = 1e-3 * eit_halfwidth(med);
    const double slope = (susceptibility(med, h).chi.real() -
                          susceptibility(med, -h).chi.real()) /
                         (2 * h);
    return slope > 0.0 && group_velocity(med) < constants::c;
  });

  check("group velocity matches c cos^2(theta)", [&] {
    const MediumParams m = calibrate_to_vg(med, 300.0);
    const PolaritonState ps =
        from_coupling(m.rabi_control, m.coupling_collective, m.g_factor);
    return std::abs(ps.v_g - group_velocity(m)) < 0.01 * ps.v_g;
  });

  check("Fock moment equals 2 gF muB sin^2(theta)", [&] {
    const FockSpace fs(3, 1);
    for (double theta : {0.2, 0.7, 1.2}) {
      const double analytic = from_mixing_angle(theta, 0.5).mu_pol;
      if (std::abs(fock_moment(fs, theta, 0.5) - analytic) > 1e-12 * analytic)
        return false;
    }
    return true;
  });

  check("moment extraction inverts the deflection", [&] {
    const PolaritonState ps = from_mixing_angle(1.2, 0.5);
    const double k = constants::two_pi / 795e-9;
    const double alpha = sg_deflection(ps, 0.05, 9.1e-6, k);
    const double mu = extract_moment(alpha, ps.v_g, 0.05, 9.1e-6, k);
    return std::abs(mu - ps.mu_pol) <= 1e-14 * ps.mu_pol;
  });

  const GridSpec grid = GridSpec::automatic(0.2e-3, 0.05, 795e-9);
  const TransverseField beam = gaussian_input(0.2e-3, 1e-6, grid);
  const MediumParams cal = calibrate_to_vg(med, 300.0);

  check("zero gradient leaves the beam undeflected", [&] {
    FieldMap flat{116e-7, 0.0};
    const TransverseField exit = propagate_cell(beam, cal, flat, 0.0, 256);
    return std::abs(centroid_and_angle(beam, exit).angle) < 1e-9;
  });

  check("gradient reversal flips the deflection", [&] {
    FieldMap fwd{116e-7, 9.1e-6}, rev{116e-7, -9.1e-6};
    const double a1 =
        centroid_and_angle(beam, propagate_cell(beam, cal, fwd, 0.0, 256)).angle;
    const double a2 =
        centroid_and_angle(beam, propagate_cell(beam, cal, rev, 0.0, 256)).angle;
    return std::abs(a1 + a2) < 1e-9 * std::abs(a1) + 1e-15;
  });

  check("config round-trip is exact", [&] {
    Scenario s;
    s.medium.rabi_control = constants::two_pi * 31.7e3;
    s.medium.coupling_collective = 1.234e8;
    s.sweep_rabi = {1e5, 2.5e5};
    s.seed = 99;
    return parse_scenario(serialize_scenario(s)) == s;
  });

  check("sweep extraction round-trips the moment", [&] {
    MediumParams m = med;
    m.coupling_collective = 5e8;
    const FieldMap fm{116e-7, 9.1e-6};
    const std::vector<double> rabis = {constants::two_pi * 30e3,
                                       constants::two_pi * 60e3};
    const SweepResult sweep = synthetic_sweep(m, fm, 2.0, rabis);
    const MomentEstimate est = extract_moment_from_sweep(sweep);
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
      const PolaritonState ps =
          from_coupling(sweep.rows[i].rabi_control, m.coupling_collective, 0.5);
      if (std::abs(est.per_row[i] - ps.mu_pol) > 1e-14 * ps.mu_pol) return false;
    }
    return true;
  });

  return failures;
}

} // namespace slowlight
