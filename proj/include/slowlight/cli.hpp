#pragma once

#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slowlight/analysis.hpp"
#include "slowlight/beamprop.hpp"
#include "slowlight/csv.hpp"
#include "slowlight/fock.hpp"
#include "slowlight/pulse.hpp"
#include "slowlight/scenario.hpp"
#include "slowlight/svg.hpp"
#include "slowlight/validate.hpp"

namespace slowlight::cli {

namespace detail {

inline GridSpec grid_for(const Scenario& s) {
  if (s.grid_points > 0 && s.grid_window > 0.0)
    return {s.grid_points, s.grid_window};
  GridSpec g = GridSpec::automatic(s.beam_waist, s.medium.cell_length,
                                   s.medium.lambda_s);
  if (s.grid_points > 0) g.n = s.grid_points;
  if (s.grid_window > 0.0) g.window = s.grid_window;
  return g;
}

inline std::vector<double> delta_axis(const Scenario& s,
                                      const MediumParams& medium) {
  const double span =
      s.delta_span > 0.0 ? s.delta_span : 5.0 * eit_halfwidth(medium);
  int n = s.delta_points;
  if (n < 9) n = 9;
  if (n % 2 == 0) ++n; // keep delta = 0 on the axis
  std::vector<double> deltas(n);
  for (int i = 0; i < n; ++i)
    deltas[i] = -span + 2.0 * span * i / (n - 1);
  deltas[n / 2] = 0.0;
  return deltas;
}

inline std::vector<double> sweep_ladder(const Scenario& s,
                                        const MediumParams& medium) {
  if (!s.sweep_rabi.empty()) return s.sweep_rabi;
  // factor 2^(3/2) in Rabi frequency spans a factor 8 in 1/v_g
  std::vector<double> ladder;
  for (int i = 0; i <= 6; ++i)
    ladder.push_back(medium.rabi_control * std::pow(2.0, i / 4.0));
  return ladder;
}

} // namespace detail

inline int cmd_spectrum(const Scenario& s, unsigned threads) {
  const MediumParams medium = s.resolved_medium();
  const TransverseField beam = gaussian_input(
      s.beam_waist, s.beam_power, detail::grid_for(s), medium.lambda_s);
  const std::vector<double> deltas = detail::delta_axis(s, medium);
  const std::vector<DeflectionRecord> records = deflection_spectrum(
      medium, s.field, beam, deltas, s.camera_distance, s.n_steps, threads);

  const std::filesystem::path dir(s.out_dir);
  std::vector<std::vector<double>> rows;
  std::vector<double> xs, trans, angles;
  for (const DeflectionRecord& r : records) {
    rows.push_back({r.delta_laser, r.transmission, r.angle,
                    r.camera_displacement});
    xs.push_back(r.delta_laser);
    trans.push_back(r.transmission);
    angles.push_back(r.angle);
  }
  write_csv(dir / "spectrum.csv",
            {"delta_rad_s", "transmission", "angle_rad",
             "camera_displacement_m"},
            rows);
  write_svg_line_chart(dir / "transmission.svg", "Transmitted power",
                       "two-photon detuning (rad/s)", "transmission", xs,
                       trans);
  write_svg_line_chart(dir / "deflection.svg", "Deflection angle",
                       "two-photon detuning (rad/s)", "angle (rad)", xs,
                       angles);
  write_file_atomic(dir / "scenario.cfg", serialize_scenario(s));
  std::cout << "spectrum: " << records.size() << " points -> "
            << (dir / "spectrum.csv").string() << "\n";
  return 0;
}

inline int cmd_pulse(const Scenario& s) {
  const MediumParams medium = s.resolved_medium();
  const PulsePair pair =
      propagate_pulse(medium, 0.0, s.pulse_sigma, s.pulse_points, s.beam_power);
  const VgMeasurement vg = measure_vg(medium, s.pulse_sigma, s.pulse_points);

  const std::filesystem::path dir(s.out_dir);
  auto dump = [&](const PulseTrace& tr, const char* name) {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index i = 0; i < tr.t.size(); ++i)
      rows.push_back({tr.t[i], tr.intensity[i]});
    write_csv(dir / name, {"t_s", "intensity_W"}, rows);
  };
  dump(pair.entry, "pulse_entry.csv");
  dump(pair.exit, "pulse_exit.csv");

  std::ostringstream fit;
  fit << "entry_peak_s = " << format_number(pair.entry.fit_peak_time) << "\n"
      << "entry_sigma_s = " << format_number(pair.entry.fit_sigma) << "\n"
      << "exit_peak_s = " << format_number(pair.exit.fit_peak_time) << "\n"
      << "exit_sigma_s = " << format_number(pair.exit.fit_sigma) << "\n"
      << "exit_fit_residual_rms_W = " << format_number(pair.exit.fit_residual)
      << "\n"
      << "delay_s = "
      << format_number(pair.exit.fit_peak_time - pair.entry.fit_peak_time)
      << "\n"
      << "vg_m_per_s = " << format_number(vg.v_g) << "\n"
      << "vg_sigma_m_per_s = " << format_number(vg.sigma) << "\n";
  write_file_atomic(dir / "pulse_fit.txt", fit.str());
  write_file_atomic(dir / "scenario.cfg", serialize_scenario(s));
  std::cout << "pulse: v_g = " << vg.v_g << " m/s (delay fit) -> "
            << (dir / "pulse_fit.txt").string() << "\n";
  return 0;
}

inline int cmd_vg_sweep(const Scenario& s) {
  const MediumParams medium = s.resolved_medium();
  const TransverseField beam = gaussian_input(
      s.beam_waist, s.beam_power, detail::grid_for(s), medium.lambda_s);

  SweepOptions opt;
  opt.pulse_sigma = s.pulse_sigma;
  opt.pulse_points = s.pulse_points;
  opt.repeats = s.sweep_repeats;
  opt.noise_sigma_camera = s.sweep_noise_camera;
  opt.seed = s.seed;
  opt.n_steps = s.n_steps;

  const SweepResult sweep =
      run_vg_sweep(medium, s.field, beam, s.camera_distance,
                   detail::sweep_ladder(s, medium), opt);
  const MomentEstimate est = extract_moment_from_sweep(sweep);
  const std::vector<double> dev = sublinearity(sweep);

  std::vector<double> inv_vg, angles;
  std::vector<std::vector<double>> rows;
  for (const SweepRow& r : sweep.rows) {
    inv_vg.push_back(1.0 / r.v_g);
    angles.push_back(r.angle);
    rows.push_back({r.rabi_control, 1.0 / r.v_g, r.v_g, r.v_g_sigma, r.angle,
                    r.angle_sigma, r.camera_displacement});
  }
  const LinearFit fit = linear_fit(inv_vg, angles);

  const std::filesystem::path dir(s.out_dir);
  write_csv(dir / "sweep.csv",
            {"rabi_rad_s", "inv_vg_s_per_m", "vg_m_per_s", "vg_sigma_m_per_s",
             "angle_rad", "angle_sigma_rad", "camera_displacement_m"},
            rows);
  write_svg_line_chart(dir / "sweep.svg", "Deflection vs inverse group velocity",
                       "1/v_g (s/m)", "angle (rad)", inv_vg, angles);

  std::ostringstream sum;
  sum << "mu_estimate_J_per_T = " << format_number(est.mu) << "\n"
      << "ratio_2gFmuB_over_mu = " << format_number(est.ratio) << "\n"
      << "linear_fit_slope_rad_m_per_s = " << format_number(fit.slope) << "\n"
      << "linear_fit_intercept_rad = " << format_number(fit.intercept) << "\n"
      << "linear_fit_r2 = " << format_number(fit.r2) << "\n";
  for (std::size_t i = 0; i < sweep.rows.size(); ++i)
    sum << "sublinearity_row" << i << " = " << format_number(dev[i]) << "\n";
  write_file_atomic(dir / "sweep_summary.txt", sum.str());
  write_file_atomic(dir / "scenario.cfg", serialize_scenario(s));
  std::cout << "vg-sweep: " << sweep.rows.size()
            << " rows, mu = " << est.mu << " J/T (ratio " << est.ratio
            << ") -> " << (dir / "sweep.csv").string() << "\n";
  return 0;
}

inline int cmd_fock_check(int n_atoms, const std::vector<double>& thetas,
                          const std::string& out_dir) {
  std::ostringstream table;
  table << "n_atoms theta fock_moment_J_per_T analytic_J_per_T rel_error\n";
  for (int n = 1; n <= n_atoms; ++n) {
    const FockSpace fs(n, 1);
    for (double theta : thetas) {
      const double fock = fock_moment(fs, theta, 0.5);
      const double analytic = from_mixing_angle(theta, 0.5).mu_pol;
      const double rel =
          analytic != 0.0 ? std::abs(fock - analytic) / analytic : std::abs(fock);
      table << n << " " << format_number(theta) << " " << format_number(fock)
            << " " << format_number(analytic) << " " << format_number(rel)
            << "\n";
    }
  }
  std::cout << table.str();
  if (!out_dir.empty())
    write_file_atomic(std::filesystem::path(out_dir) / "fock_check.txt",
                      table.str());
  return 0;
}

inline int run(int argc, const char* const* argv) {
  CLI::App app{"slow-light Stern-Gerlach deflection simulator"};
  app.require_subcommand(1);

  std::string config, out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned threads = 1;
  int n_atoms = 5;
  std::vector<double> thetas = {0.2, 0.7853981633974483, 1.2};

  app.add_option("--config", config, "scenario config file");
  app.add_option("--out", out, "output directory (overrides config)");
  app.add_option("--seed", seed, "random seed (overrides config)")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--threads", threads, "worker threads for spectra");

  CLI::App* sp_spectrum =
      app.add_subcommand("spectrum", "transmission and deflection spectra");
  CLI::App* sp_sweep =
      app.add_subcommand("vg-sweep", "deflection vs inverse group velocity");
  CLI::App* sp_pulse =
      app.add_subcommand("pulse", "pulse delay and group-velocity fit");
  CLI::App* sp_fock =
      app.add_subcommand("fock-check", "Fock-space moment vs analytic table");
  sp_fock->add_option("--n-atoms", n_atoms, "largest atom number checked");
  sp_fock->add_option("--theta", thetas, "mixing angles to check");
  CLI::App* sp_validate =
      app.add_subcommand("validate", "run the invariant self-checks");
  for (CLI::App* sub : {sp_spectrum, sp_sweep, sp_pulse, sp_fock, sp_validate})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Scenario s;
    if (!config.empty()) s = load_scenario(config);
    if (!out.empty()) s.out_dir = out;
    if (seed_set) s.seed = seed;

    if (*sp_spectrum) return cmd_spectrum(s, threads);
    if (*sp_sweep) return cmd_vg_sweep(s);
    if (*sp_pulse) return cmd_pulse(s);
    if (*sp_fock) return cmd_fock_check(n_atoms, thetas, out);
    if (*sp_validate) return run_validation(std::cout) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace slowlight::cli
