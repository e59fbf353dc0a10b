#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "orblab/asymptotics.hpp"
#include "orblab/frame_curvature.hpp"

using namespace orblab;
using Catch::Approx;

namespace {
std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v(n);
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i < n; ++i) v[i] = std::exp(la + (lb - la) * i / (n - 1.0));
  return v;
}

// the family's known closed form psi = s^-2 + n, packaged as a solution object
GreensFunctionSolution exact_green(int n) {
  GreensFunctionSolution g;
  g.n = n;
  g.sing_coeffs = {1.0, double(n)};
  g.reg_coeffs = {1.0};
  g.mix = 0.0;
  g.leading_coefficient = 1.0;
  g.regular_term_s = n;
  g.series_s_max = 1e300;  // series is exact everywhere
  return g;
}
}  // namespace

TEST_CASE("Green's function reproduces s^-2 + n", "[green]") {
  for (int n : {1, 2, 3, 5}) {
    const auto geom = RadialGeometry::lebrun_compact(n);
    const auto grid = logspace(0.01, 100.0, 301);
    const auto sol = green_function_radial(geom, grid);
    REQUIRE(std::abs(sol.leading_coefficient - 1.0) <= 1e-8);
    for (size_t i = 0; i < grid.size(); ++i) {
      const double exact = 1.0 / (grid[i] * grid[i]) + n;
      REQUIRE(std::abs(sol.psi[i] - exact) <= 1e-8 * exact);
    }
  }
}

TEST_CASE("Green's function spot values", "[green]") {
  const auto g2 = green_function_radial(RadialGeometry::lebrun_compact(2));
  REQUIRE(std::abs(g2.eval(1.0) - 3.0) <= 1e-8 * 3.0);

  const auto g1 = green_function_radial(RadialGeometry::lebrun_compact(1));
  REQUIRE(std::abs(g1.regular_term_s - 1.0) <= 1e-8);

  const auto g5 = green_function_radial(RadialGeometry::lebrun_compact(5));
  REQUIRE(std::abs(g5.leading_coefficient - 1.0) <= 1e-8);
  REQUIRE(std::abs(g5.regular_term_s - 5.0) <= 1e-7);
}

TEST_CASE("blow-up with the computed psi matches the ALE coefficients", "[green]") {
  for (int n : {2, 3}) {
    const auto geom = RadialGeometry::lebrun_compact(n);
    const auto psi = green_function_radial(geom);
    const auto field = conformal_blowup(geom, psi);
    const auto ale = lebrun_ale_field(n);
    for (double r : logspace(0.1, 100.0, 40)) {
      REQUIRE(std::abs(field.A(r) - ale.A(r)) <= 1e-8 * ale.A(r));
      REQUIRE(std::abs(field.B(r) - ale.B(r)) <= 1e-8 * ale.B(r));
      REQUIRE(std::abs(field.C(r) - ale.C(r)) <= 1e-8 * ale.C(r));
    }
  }
}

TEST_CASE("blow-up with the exact psi matches to 1e-10", "[green]") {
  const auto geom = RadialGeometry::lebrun_compact(2);
  const auto field = conformal_blowup(geom, exact_green(2));
  const auto ale = lebrun_ale_field(2);
  for (double r : logspace(0.05, 500.0, 30)) {
    REQUIRE(std::abs(field.A(r) - ale.A(r)) <= 1e-10 * ale.A(r));
    REQUIRE(std::abs(field.B(r) - ale.B(r)) <= 1e-10 * ale.B(r));
    REQUIRE(std::abs(field.C(r) - ale.C(r)) <= 1e-10 * ale.C(r));
  }
}

TEST_CASE("Kelvin transform of the flat cone is Euclidean", "[green]") {
  // psi = s^-2 applied to ds^2 + s^2 (sum sigma^2), written in the hat_r chart
  auto psi2 = [](double r) { return r * r * r * r; };  // (s^-2)^2 at s = 1/r
  RadialMetricField flat_cone_hat;
  flat_cone_hat.A = [&psi2](double r) { return psi2(r) / (r * r * r * r); };
  flat_cone_hat.B = [&psi2](double r) { return psi2(r) / (r * r); };
  flat_cone_hat.C = flat_cone_hat.B;
  for (double r : {1.0, 5.0, 20.0}) {
    REQUIRE(flat_cone_hat.A(r) == Approx(1.0));
    REQUIRE(flat_cone_hat.B(r) == Approx(r * r));
    REQUIRE(flat_cone_hat.C(r) == Approx(r * r));
  }
}

TEST_CASE("blow-up metric is scalar-flat", "[green]") {
  const auto geom = RadialGeometry::lebrun_compact(3);
  const auto psi = green_function_radial(geom);
  const auto field = conformal_blowup(geom, psi);
  FrameCoefficients c{field.A, field.B, field.B, field.C};
  for (double r : {8.0, 30.0}) {
    REQUIRE(std::abs(frame_scalar_curvature(c, r, 1e-3 * (1.0 + r))) <= 1e-6);
  }
}

TEST_CASE("blow-up mass and the implied regular term", "[green]") {
  MassOptions mo;
  mo.nodes_theta = mo.nodes_phi = mo.nodes_psi = 16;
  for (int n : {1, 2, 3}) {
    const auto chk = mass_regular_term_check(RadialGeometry::lebrun_compact(n), {}, mo);
    const double target = -2.0 * (n - 2.0);
    if (n == 2)
      REQUIRE(std::abs(chk.mass.extrapolated) <= 0.02);
    else
      REQUIRE(std::abs(chk.mass.extrapolated - target) <= 0.02 * std::abs(target));
    const double implied_A_target = -(n - 2.0) / 6.0;
    REQUIRE(std::abs(chk.implied_A - implied_A_target) <= 0.01);
    // the naive s-coordinate constant term is n, NOT the mass-implied A
    const auto psi = green_function_radial(RadialGeometry::lebrun_compact(n));
    REQUIRE(psi.regular_term_s == Approx(double(n)).margin(1e-6));
  }
}

TEST_CASE("sample grid validation", "[green]") {
  const auto geom = RadialGeometry::lebrun_compact(2);
  REQUIRE_THROWS_AS(green_function_radial(geom, {0.5, 0.2}), std::invalid_argument);
  REQUIRE_THROWS_AS(green_function_radial(RadialGeometry::lebrun_ale(2)),
                    std::invalid_argument);
}
