#include <catch2/catch_amalgamated.hpp>

#include "slowlight/constants.hpp"
#include "slowlight/fields.hpp"

using namespace slowlight;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::ArrayXd linear_grid(double half, int n) {
  Eigen::ArrayXd g(n);
  for (int i = 0; i < n; ++i) g[i] = -half + 2.0 * half * i / (n - 1);
  return g;
}

} // namespace

TEST_CASE("zero field gives zero Zeeman shift") {
  FieldMap f{0.0, 0.0};
  CHECK(zeeman_shift(f, 0.5, 0.0) == 0.0);
  CHECK(zeeman_shift(f, 0.5, 1e-3) == 0.0);
}

TEST_CASE("on-axis Zeeman shift at the 116 mG bias") {
  // Frozen hand arithmetic: mu_B * 1.16e-5 T / hbar with g_F = 1/2.
  FieldMap f{1.16e-5, 0.0};
  const double shift = zeeman_shift(f, 0.5, 0.0);
  CHECK_THAT(shift, WithinRel(1.0201e6, 1e-3));
  CHECK_THAT(shift / constants::two_pi, WithinRel(162.36e3, 1e-2));
}

TEST_CASE("differential shift across one millimeter of the reference gradient") {
  // Frozen hand arithmetic: mu_B * 9.1e-6 T/m * 1e-3 m / hbar.
  FieldMap f{1.16e-5, 9.1e-6};
  const double diff = zeeman_shift(f, 0.5, 1e-3) - zeeman_shift(f, 0.5, 0.0);
  CHECK_THAT(diff, WithinRel(800.26, 1e-3));
}

TEST_CASE("detuning profile is referenced to the beam axis") {
  FieldMap f{1.16e-5, 9.1e-6};
  const Eigen::ArrayXd grid = linear_grid(2e-3, 41);
  const double delta_laser = 1234.5;
  const Eigen::ArrayXd prof = detuning_profile(f, 0.5, delta_laser, grid);
  CHECK_THAT(prof[20], WithinRel(delta_laser, 1e-12)); // x = 0 sample
}

TEST_CASE("zero gradient gives a flat profile") {
  FieldMap f{1.16e-5, 0.0};
  const Eigen::ArrayXd prof =
      detuning_profile(f, 0.5, 77.0, linear_grid(2e-3, 17));
  for (double v : prof) CHECK_THAT(v, WithinAbs(77.0, 1e-9));
}

TEST_CASE("positive gradient gives a strictly increasing linear profile") {
  FieldMap f{1.16e-5, 9.1e-6};
  const Eigen::ArrayXd grid = linear_grid(2e-3, 33);
  const Eigen::ArrayXd prof = detuning_profile(f, 0.5, 0.0, grid);
  for (int i = 1; i < prof.size(); ++i) CHECK(prof[i] > prof[i - 1]);

  const double slope = (prof[32] - prof[0]) / (grid[32] - grid[0]);
  const double expected = 2.0 * 0.5 * constants::mu_bohr * f.grad_x /
                          constants::hbar;
  CHECK_THAT(slope, WithinRel(expected, 1e-12));
  CHECK_THAT(slope, WithinRel(detuning_slope(f, 0.5), 1e-12));
}

TEST_CASE("profile is linear in the gradient") {
  const Eigen::ArrayXd grid = linear_grid(1.5e-3, 21);
  const double alpha = 3.7;
  FieldMap base{1.16e-5, 2e-6};
  FieldMap scaled{1.16e-5, alpha * 2e-6};
  const Eigen::ArrayXd p1 = detuning_profile(base, 0.5, 0.0, grid);
  const Eigen::ArrayXd pa = detuning_profile(scaled, 0.5, 0.0, grid);
  for (int i = 0; i < grid.size(); ++i)
    CHECK_THAT(pa[i], WithinAbs(alpha * p1[i], 1e-9));
}

TEST_CASE("reversing the gradient negates the differential profile") {
  const Eigen::ArrayXd grid = linear_grid(1.5e-3, 21);
  FieldMap fwd{1.16e-5, 2e-6};
  FieldMap rev{1.16e-5, -2e-6};
  const Eigen::ArrayXd pf = detuning_profile(fwd, 0.5, 0.0, grid);
  const Eigen::ArrayXd pr = detuning_profile(rev, 0.5, 0.0, grid);
  for (int i = 0; i < grid.size(); ++i)
    CHECK_THAT(pr[i], WithinAbs(-pf[i], 1e-9));
}

TEST_CASE("field sign flip inside the window is rejected") {
  FieldMap f{1e-8, 9.1e-6}; // 10 uG bias, standard gradient
  REQUIRE_THROWS_AS(detuning_profile(f, 0.5, 0.0, linear_grid(2e-3, 11)),
                    std::invalid_argument);
}

TEST_CASE("non-monotone grid is rejected") {
  FieldMap f{1.16e-5, 9.1e-6};
  Eigen::ArrayXd grid(3);
  grid << 0.0, 1e-3, 0.5e-3;
  REQUIRE_THROWS_AS(detuning_profile(f, 0.5, 0.0, grid), std::invalid_argument);
}
