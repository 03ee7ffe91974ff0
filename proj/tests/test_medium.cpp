#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "slowlight/constants.hpp"
#include "slowlight/medium.hpp"

using namespace slowlight;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

MediumParams eit_medium(double rabi = constants::two_pi * 50e3,
                        double gamma_c = 0.0, double a = 10.0) {
  MediumParams p;
  p.rabi_control = rabi;
  p.gamma_c = gamma_c;
  p.set_coupling_strength(a);
  return p;
}

// Analytic slope of Re chi at delta = 0 for Delta = 0; independent route for
// checking the finite-difference group velocity.
double analytic_rechi_slope(const MediumParams& p) {
  const double u = p.rabi_control * p.rabi_control / 4.0;
  const double b = p.gamma_c * p.gamma_e / 2.0;
  return p.coupling_strength() * (u - p.gamma_c * p.gamma_c) /
         ((u + b) * (u + b));
}

} // namespace

TEST_CASE("dark resonance is perfectly transparent without decoherence") {
  const MediumParams p = eit_medium();
  const auto s = susceptibility(p, 0.0);
  REQUIRE(std::abs(s.chi) == 0.0);
  REQUIRE(s.delta == 0.0);
}

TEST_CASE("residual absorption at line center is purely imaginary") {
  const MediumParams p = eit_medium(constants::two_pi * 50e3, 200.0);
  const auto chi = susceptibility(p, 0.0).chi;
  REQUIRE(chi.real() == 0.0);
  REQUIRE(chi.imag() > 0.0);
}

TEST_CASE("susceptibility parity about the dark resonance") {
  const MediumParams p = eit_medium(constants::two_pi * 50e3, 150.0);
  for (double frac : {0.1, 0.31, 0.77, 2.5}) {
    const double d = frac * p.rabi_control;
    const auto plus = susceptibility(p, d).chi;
    const auto minus = susceptibility(p, -d).chi;
    CHECK_THAT(minus.real(), WithinRel(-plus.real(), 1e-13));
    CHECK_THAT(minus.imag(), WithinRel(plus.imag(), 1e-13));
  }
}

TEST_CASE("medium is passive across the line") {
  const MediumParams p = eit_medium(constants::two_pi * 50e3, 150.0);
  double min_im = 1e9;
  double min_at = -1.0;
  for (int i = -400; i <= 400; ++i) {
    const double d = i * 1e4;
    const double im = susceptibility(p, d).chi.imag();
    REQUIRE(im >= 0.0);
    if (im < min_im) {
      min_im = im;
      min_at = d;
    }
  }
  CHECK(min_at == 0.0);
}

TEST_CASE("line-center absorption grows strictly with gamma_c") {
  double prev = -1.0;
  for (double gc : {0.0, 10.0, 100.0, 1000.0, 6283.0}) {
    const double im = susceptibility(eit_medium(constants::two_pi * 50e3, gc), 0.0)
                          .chi.imag();
    CHECK(im > prev);
    prev = im;
  }
}

TEST_CASE("lossless medium with no decay is rejected as singular") {
  MediumParams p = eit_medium();
  p.gamma_e = 0.0;
  p.gamma_c = 0.0;
  REQUIRE_THROWS_WITH(susceptibility(p, 0.0),
                      Catch::Matchers::ContainsSubstring("lossless-singular"));
}

TEST_CASE("parameter invariants are enforced") {
  MediumParams p = eit_medium();
  SECTION("negative rate") {
    p.gamma_c = -1.0;
    REQUIRE_THROWS_AS(susceptibility(p, 0.0), std::invalid_argument);
  }
  SECTION("coherence decay above the optical decay") {
    p.gamma_c = 2.0 * p.gamma_e;
    REQUIRE_THROWS_AS(susceptibility(p, 0.0), std::invalid_argument);
  }
  SECTION("bad wavelength") {
    p.lambda_s = 0.0;
    REQUIRE_THROWS_AS(susceptibility(p, 0.0), std::invalid_argument);
  }
}

TEST_CASE("refractive index and absorption from chi") {
  const MediumParams p = eit_medium();
  SECTION("vacuum response") {
    const IndexPoint ip = index_from_chi(p, {0.0, 0.0});
    CHECK(ip.n == 1.0);
    CHECK(ip.kappa_abs == 0.0);
  }
  SECTION("small real chi") {
    const IndexPoint ip = index_from_chi(p, {2e-6, 0.0});
    CHECK_THAT(ip.n, WithinRel(1.000001, 1e-12));
  }
  SECTION("first-order transmission matches the exact square-root index") {
    // exact plane wave: intensity decays as exp(-2 k Im(sqrt(1+chi)) z)
    const std::complex<double> chi(1e-4, 1e-4);
    const IndexPoint ip = index_from_chi(p, chi);
    const double kappa_exact =
        2.0 * p.wavenumber() * std::sqrt(1.0 + chi).imag();
    CHECK_THAT(ip.kappa_abs, WithinRel(kappa_exact, 1e-4));
    const double L = 1.0 / kappa_exact; // unit optical depth
    CHECK_THAT(std::exp(-ip.kappa_abs * L), WithinRel(std::exp(-kappa_exact * L), 1e-4));
  }
}

TEST_CASE("strong response triggers the weak-probe warning") {
  std::vector<std::string> captured;
  auto saved = warning_sink();
  warning_sink() = [&](const std::string& msg) { captured.push_back(msg); };
  index_from_chi(eit_medium(), {0.2, 0.1});
  warning_sink() = saved;
  REQUIRE(captured.size() == 1);
  CHECK(captured[0].find("weak-response") != std::string::npos);
}

TEST_CASE("group velocity in the negligible-dispersion limit") {
  MediumParams p = eit_medium();
  p.rabi_control = 1e3 * p.coupling_collective;
  const double vg = group_velocity(p);
  CHECK(vg <= constants::c);
  CHECK_THAT(vg, WithinRel(constants::c, 5e-3));
}

TEST_CASE("group velocity agrees with the analytic dispersion slope") {
  for (double gc : {0.0, 300.0}) {
    const MediumParams p = eit_medium(constants::two_pi * 40e3, gc, 20.0);
    const double slope = analytic_rechi_slope(p);
    const double expected = constants::c / (1.0 + p.omega_s() * 0.5 * slope);
    CHECK_THAT(group_velocity(p), WithinRel(expected, 1e-3));
  }
}

TEST_CASE("normal dispersion inside the window forces v_g < c") {
  const MediumParams p = eit_medium();
  const double h = 1e-3 * eit_halfwidth(p);
  const double slope =
      (susceptibility(p, h).chi.real() - susceptibility(p, -h).chi.real()) /
      (2.0 * h);
  CHECK(slope > 0.0);
  CHECK(group_velocity(p) < constants::c);
}

TEST_CASE("group velocity requires an open window") {
  MediumParams p = eit_medium();
  p.rabi_control = 0.0;
  REQUIRE_THROWS_AS(group_velocity(p), std::domain_error);
}

TEST_CASE("calibration hits the requested group velocity") {
  const MediumParams base = eit_medium();
  SECTION("round trip at 300 m/s") {
    const MediumParams cal = calibrate_to_vg(base, 300.0);
    const double vg = group_velocity(cal);
    CHECK(vg >= 298.5);
    CHECK(vg <= 301.5);
    // omega dn/domega = c/v_g - n at resonance
    const double dispersion = cal.omega_s() * 0.5 * analytic_rechi_slope(cal);
    CHECK_THAT(dispersion, WithinRel(constants::c / 300.0, 5e-3));
  }
  SECTION("near-c target drives the coupling to zero") {
    const MediumParams cal = calibrate_to_vg(base, 0.999 * constants::c);
    CHECK(cal.coupling_strength() < 1e-6);
    CHECK(std::abs(susceptibility(cal, eit_halfwidth(cal)).chi) < 1e-12);
  }
  SECTION("coupling scales inversely with the velocity target") {
    const double a300 = calibrate_to_vg(base, 300.0).coupling_strength();
    const double a600 = calibrate_to_vg(base, 600.0).coupling_strength();
    CHECK_THAT(a300 / a600, WithinAbs(2.0, 0.01));
  }
  SECTION("unreachable target") {
    REQUIRE_THROWS_WITH(calibrate_to_vg(base, 1e-6),
                        Catch::Matchers::ContainsSubstring("unreachable"));
    REQUIRE_THROWS_AS(calibrate_to_vg(base, constants::c), std::invalid_argument);
  }
}

TEST_CASE("group velocity matches c cos^2 theta from the particle picture") {
  for (double theta : {constants::pi / 6, constants::pi / 4, constants::pi / 3}) {
    MediumParams p = eit_medium(constants::two_pi * 50e3, 0.0);
    p.coupling_collective = p.rabi_control * std::tan(theta);
    const double particle = constants::c * std::cos(theta) * std::cos(theta);
    CHECK_THAT(group_velocity(p), WithinRel(particle, 1e-2));
  }
}
