#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "slowlight/analysis.hpp"
#include "slowlight/constants.hpp"

using namespace slowlight;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MediumParams sweep_base(double gamma_c = 0.0) {
  MediumParams p;
  p.rabi_control = constants::two_pi * 40e3;
  p.gamma_c = gamma_c;
  p.set_coupling_strength(8.0); // fixed atomic coupling across the sweep
  return p;
}

std::vector<double> rabi_ladder(const MediumParams& base, int n_points) {
  // factor 2^(3/2) in Rabi spans a factor 8 in 1/v_g
  std::vector<double> rabis;
  for (int i = 0; i < n_points; ++i)
    rabis.push_back(base.rabi_control *
                    std::pow(2.0, 1.5 * i / double(n_points - 1)));
  return rabis;
}

} // namespace

TEST_CASE("synthetic sweep round-trips the polariton moment exactly") {
  const MediumParams base = sweep_base();
  const FieldMap fmap{116e-7, 9.1e-6};
  const SweepResult sweep =
      synthetic_sweep(base, fmap, 2.0, rabi_ladder(base, 5));

  REQUIRE(sweep.rows.size() == 5);
  const MomentEstimate est = extract_moment_from_sweep(sweep);
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const PolaritonState ps = from_coupling(sweep.rows[i].rabi_control,
                                            base.coupling_collective, 0.5);
    CHECK_THAT(est.per_row[i], WithinRel(ps.mu_pol, 1e-14));
  }
}

TEST_CASE("rows are sorted by inverse group velocity") {
  const MediumParams base = sweep_base();
  const FieldMap fmap{116e-7, 9.1e-6};
  const SweepResult sweep =
      synthetic_sweep(base, fmap, 2.0, rabi_ladder(base, 6));
  for (std::size_t i = 1; i < sweep.rows.size(); ++i)
    CHECK(1.0 / sweep.rows[i].v_g > 1.0 / sweep.rows[i - 1].v_g);
}

TEST_CASE("scaled deflections reproduce the headline moment arithmetic") {
  MediumParams base = sweep_base();
  // deep slow-light rows so sin^2(theta) is essentially 1
  base.set_coupling_strength(40.0);
  const FieldMap fmap{116e-7, 9.1e-6};
  const SweepResult sweep =
      synthetic_sweep(base, fmap, 2.0, rabi_ladder(base, 5), 1.0 / 1.8);
  const MomentEstimate est = extract_moment_from_sweep(sweep);
  CHECK_THAT(est.mu, WithinRel(5.15e-24, 5e-3));
  CHECK_THAT(est.mu, WithinRel(5.1e-24, 0.02));
  CHECK_THAT(est.ratio, WithinAbs(1.8, 0.02));
}

TEST_CASE("averaging per-row moments equals extracting the averaged slope") {
  // identical gradients: mean_i(alpha_i v_i) * hbar k / (L grad) both ways
  const MediumParams base = sweep_base();
  const FieldMap fmap{116e-7, 9.1e-6};
  const SweepResult sweep =
      synthetic_sweep(base, fmap, 2.0, rabi_ladder(base, 4));
  const MomentEstimate est = extract_moment_from_sweep(sweep);

  double mean_alpha_v = 0.0;
  for (const SweepRow& row : sweep.rows) mean_alpha_v += row.angle * row.v_g;
  mean_alpha_v /= double(sweep.rows.size());
  const double mu_pooled = mean_alpha_v * constants::hbar *
                           sweep.meta.wavenumber /
                           (sweep.meta.cell_length * sweep.meta.grad_x);
  CHECK_THAT(est.mu, WithinRel(mu_pooled, 1e-12));
}

TEST_CASE("empty sweeps and zero gradients are rejected") {
  const MediumParams base = sweep_base();
  const FieldMap fmap{116e-7, 9.1e-6};
  SweepResult sweep = synthetic_sweep(base, fmap, 2.0, rabi_ladder(base, 3));
  sweep.rows.clear();
  REQUIRE_THROWS_AS(extract_moment_from_sweep(sweep), std::invalid_argument);

  SweepResult no_grad = synthetic_sweep(base, fmap, 2.0, rabi_ladder(base, 3));
  no_grad.meta.grad_x = 0.0;
  REQUIRE_THROWS_AS(extract_moment_from_sweep(no_grad), std::domain_error);

  REQUIRE_THROWS_AS(synthetic_sweep(base, fmap, 2.0, {}), std::invalid_argument);
}

TEST_CASE("full-pipeline sweep: narrow beam follows the linear law") {
  const MediumParams base = sweep_base();
  const FieldMap fmap{116e-7, 9.1e-6};
  const GridSpec grid = GridSpec::automatic(0.05e-3, base.cell_length, base.lambda_s);
  const TransverseField beam = gaussian_input(0.05e-3, 1e-6, grid);

  SweepOptions opt;
  opt.pulse_sigma = 50e-3;
  opt.n_steps = 256;
  const std::vector<double> rabis = rabi_ladder(base, 4);
  const SweepResult sweep = run_vg_sweep(base, fmap, beam, 2.0, rabis, opt);

  REQUIRE(sweep.rows.size() == 4);
  std::vector<double> inv_vg, angles;
  for (const SweepRow& row : sweep.rows) {
    inv_vg.push_back(1.0 / row.v_g);
    angles.push_back(row.angle);
    CHECK(row.v_g_sigma >= 0.0);
    CHECK(row.angle_sigma == 0.0); // repeats = 1
  }
  const LinearFit fit = linear_fit(inv_vg, angles);
  CHECK(fit.r2 > 0.999);
  CHECK(fit.slope > 0.0);
}

TEST_CASE("single-row sweep carries no spread") {
  const MediumParams base = sweep_base();
  const FieldMap fmap{116e-7, 9.1e-6};
  const GridSpec grid = GridSpec::automatic(0.2e-3, base.cell_length, base.lambda_s);
  const TransverseField beam = gaussian_input(0.2e-3, 1e-6, grid);
  SweepOptions opt;
  opt.pulse_sigma = 30e-3;
  opt.n_steps = 128;
  const SweepResult sweep =
      run_vg_sweep(base, fmap, beam, 2.0, {base.rabi_control}, opt);
  REQUIRE(sweep.rows.size() == 1);
  CHECK(sweep.rows[0].angle_sigma == 0.0);
}

TEST_CASE("injected camera noise is reproducible from the seed") {
  const MediumParams base = sweep_base();
  const FieldMap fmap{116e-7, 9.1e-6};
  const GridSpec grid = GridSpec::automatic(0.2e-3, base.cell_length, base.lambda_s);
  const TransverseField beam = gaussian_input(0.2e-3, 1e-6, grid);
  SweepOptions opt;
  opt.pulse_sigma = 30e-3;
  opt.n_steps = 128;
  opt.repeats = 12;
  opt.noise_sigma_camera = 2e-6;
  opt.seed = 424242;

  const SweepResult a =
      run_vg_sweep(base, fmap, beam, 2.0, {base.rabi_control}, opt);
  const SweepResult b =
      run_vg_sweep(base, fmap, beam, 2.0, {base.rabi_control}, opt);
  CHECK(a.rows[0].angle == b.rows[0].angle);
  CHECK(a.rows[0].angle_sigma == b.rows[0].angle_sigma);
  CHECK(a.rows[0].angle_sigma > 0.0);
}

TEST_CASE("wide beam develops a growing sub-linear shortfall") {
  const MediumParams base = sweep_base();
  const FieldMap fmap{116e-7, 9.1e-6};
  const GridSpec grid = GridSpec::automatic(1e-3, base.cell_length, base.lambda_s);
  const TransverseField beam = gaussian_input(1e-3, 1e-6, grid); // 2 mm diameter

  SweepOptions opt;
  opt.pulse_sigma = 50e-3;
  opt.n_steps = 256;
  const SweepResult sweep =
      run_vg_sweep(base, fmap, beam, 2.0, rabi_ladder(base, 4), opt);
  const std::vector<double> dev = sublinearity(sweep);

  // rows are sorted fastest first; shortfall must be nonnegative and grow
  // with 1/v_g
  for (std::size_t i = 0; i < dev.size(); ++i) {
    INFO("row " << i << " 1/v_g = " << 1.0 / sweep.rows[i].v_g
                << " shortfall = " << dev[i]);
    CHECK(dev[i] > -1e-3);
    if (i > 0) CHECK(dev[i] > dev[i - 1]);
  }
}

TEST_CASE("linear fit statistics") {
  const std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  const std::vector<double> ys = {2.1, 4.1, 6.1, 8.1};
  const LinearFit fit = linear_fit(xs, ys);
  CHECK_THAT(fit.slope, WithinRel(2.0, 1e-12));
  CHECK_THAT(fit.intercept, WithinAbs(0.1, 1e-12));
  CHECK_THAT(fit.r2, WithinRel(1.0, 1e-12));
  REQUIRE_THROWS_AS(linear_fit({1.0}, {2.0}), std::invalid_argument);
}
