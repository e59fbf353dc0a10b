#include <catch_amalgamated.hpp>

#include <cmath>

#include "orblab/bubble.hpp"
#include "orblab/pohozaev.hpp"
#include "orblab/pohozaev_lebrun.hpp"

using namespace orblab;
using Catch::Approx;

namespace {
PohozaevProfile bubble_profile(double c) {
  BubbleProfile b(c);
  return {[b](double r) { return b.value(r); },
          [b](double r) { return b.deriv(r); },
          [b](double r) { return b.second(r); }};
}
KFamily ridge(double a) {
  return KFamily::custom(
      "ridge", [a](double s) { return 1.0 + a * s * s * std::exp(-s * s); },
      [a](double s) { return a * (2.0 * s - 2.0 * s * s * s) * std::exp(-s * s); },
      2.0 * a, 1.0);
}
}  // namespace

TEST_CASE("boundary quantity spot values", "[pohozaev]") {
  // constant profile: both terms die with u'
  PohozaevProfile c5{[](double) { return 5.0; }, [](double) { return 0.0; },
                     [](double) { return 0.0; }};
  for (double r : {0.5, 2.0}) REQUIRE(pohozaev_boundary(c5, r) == 0.0);

  // unit bubble at r=1: 2 pi^2 (1*(1/2)(-1/2) + (1/2)(1/4)) = -pi^2/4
  const auto u8 = bubble_profile(8.0);
  REQUIRE(pohozaev_boundary(u8, 1.0) == Approx(-kPi * kPi / 4.0).epsilon(1e-13));

  // harmonic kernel a + b r^-2 gives the r-independent value -2ab Vol(S^3)
  PohozaevProfile h{[](double r) { return 1.0 + 1.0 / (r * r); },
                    [](double r) { return -2.0 / (r * r * r); },
                    [](double r) { return 6.0 / (r * r * r * r); }};
  const double first = pohozaev_boundary(h, 0.5);
  REQUIRE(first == Approx(-2.0 * kVolS3).epsilon(1e-12));
  for (double r : {0.8, 1.3, 2.9})
    REQUIRE(pohozaev_boundary(h, r) == Approx(first).epsilon(1e-12));
}

TEST_CASE("flat bubble satisfies the identity at ten radii", "[pohozaev]") {
  for (double c : {8.0, 2.0}) {
    const auto u = bubble_profile(c);
    const auto co = flat_pohozaev_coefficients(c, 3.0, 1.0);
    for (int i = 1; i <= 10; ++i) {
      const auto rep = pohozaev_volume_terms(u, co, 0.25 * i);
      REQUIRE(rep.residual <= 1e-6 * rep.scale);
      // vanishing groups at p=3 on the flat background
      REQUIRE(rep.term_coeff_deviation == Approx(0.0).margin(1e-14));
      REQUIRE(rep.term_exponent_deficit == Approx(0.0).margin(1e-14));
      REQUIRE(rep.term_k_gradient == Approx(0.0).margin(1e-14));
    }
  }
}

TEST_CASE("non-solutions leave a visible defect", "[pohozaev]") {
  PohozaevProfile bad{[](double r) { return 1.0 + r * r; },
                      [](double r) { return 2.0 * r; }, [](double) { return 2.0; }};
  const auto co = flat_pohozaev_coefficients(8.0, 3.0, 1.0);
  const auto rep = pohozaev_volume_terms(bad, co, 1.0);
  REQUIRE(rep.residual > 0.01 * rep.scale);
}

TEST_CASE("quotient order scales every term", "[pohozaev]") {
  const auto u = bubble_profile(8.0);
  auto co1 = flat_pohozaev_coefficients(8.0, 3.0, 1.0);
  auto co2 = flat_pohozaev_coefficients(8.0, 3.0, 2.0);
  const auto a = pohozaev_volume_terms(u, co1, 1.5);
  const auto b = pohozaev_volume_terms(u, co2, 1.5);
  REQUIRE(a.boundary_P == Approx(2.0 * b.boundary_P).epsilon(1e-14));
  REQUIRE(a.term_k_boundary == Approx(2.0 * b.term_k_boundary).epsilon(1e-14));
  REQUIRE(a.residual / a.scale == Approx(b.residual / b.scale).margin(1e-12));
}

TEST_CASE("solver output passes the identity at discretization accuracy",
          "[pohozaev]") {
  const auto geom = RadialGeometry::lebrun_compact(2);
  const auto K = ridge(0.5);
  const auto sr = solve_bvp(geom, K, 3.0);
  REQUIRE(sr.solution);
  const auto& sol = *sr.solution;
  const auto d2u = lebrun_solution_d2u(geom, K, sol);
  const auto co = lebrun_compact_pohozaev_coefficients(2, K, 3.0);
  for (double r : {0.5, 1.0, 1.5}) {
    const auto rep = pohozaev_volume_terms_sampled(sol.s, sol.u, sol.du, d2u, co, r);
    REQUIRE(rep.residual <= 1e-4 * rep.scale);
  }
}

TEST_CASE("defect decays at second order under grid refinement", "[pohozaev]") {
  const auto geom = RadialGeometry::lebrun_compact(2);
  const auto K = ridge(0.5);
  const auto co = lebrun_compact_pohozaev_coefficients(2, K, 3.0);
  double res[3];
  int idx = 0;
  for (int pts : {241, 481, 961}) {
    SolverOptions so;
    so.grid_points = pts;
    const auto sr = solve_bvp(geom, K, 3.0, so);
    REQUIRE(sr.solution);
    const auto d2u = lebrun_solution_d2u(geom, K, *sr.solution);
    const auto rep = pohozaev_volume_terms_sampled(sr.solution->s, sr.solution->u,
                                                   sr.solution->du, d2u, co, 1.0);
    res[idx++] = rep.residual;
  }
  const double order1 = std::log2(res[0] / res[1]);
  const double order2 = std::log2(res[1] / res[2]);
  REQUIRE(0.5 * (order1 + order2) >= 1.8);
}
