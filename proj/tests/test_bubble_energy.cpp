#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "orblab/bubble.hpp"
#include "orblab/energy.hpp"
#include "orblab/green.hpp"

using namespace orblab;
using Catch::Approx;

namespace {
std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1.0);
  return v;
}
KFamily ridge(double a) {  // K''(0) = 2a, positive, limit 1
  return KFamily::custom(
      "ridge", [a](double s) { return 1.0 + a * s * s * std::exp(-s * s); },
      [a](double s) { return a * (2.0 * s - 2.0 * s * s * s) * std::exp(-s * s); },
      2.0 * a, 1.0);
}
}  // namespace

TEST_CASE("bubble point values", "[bubble]") {
  REQUIRE(bubble_eval(8.0, 0.0) == Approx(1.0));
  REQUIRE(bubble_eval(8.0, 1.0) == Approx(0.5));
  REQUIRE(bubble_eval(2.0, 0.0) == Approx(2.0));
}

TEST_CASE("bubble residual with analytic derivatives", "[bubble]") {
  const auto grid = linspace(0.0, 10.0, 1001);
  for (double c : {1.0, 2.0, 8.0, 8.5}) REQUIRE(bubble_residual(c, grid) <= 1e-8);
}

TEST_CASE("doubled bubble is not a solution", "[bubble]") {
  const auto grid = linspace(0.0, 10.0, 101);
  BubbleProfile b(8.0);
  const double res = flat_cubic_residual(
      [&b](double r) { return 2.0 * b.value(r); },
      [&b](double r) { return 2.0 * b.deriv(r); },
      [&b](double r) { return 2.0 * b.second(r); }, 8.0, grid);
  REQUIRE(res > 1.0);  // nonlinearity breaks the scaling
}

TEST_CASE("Sobolev quotient values", "[bubble]") {
  REQUIRE(sobolev_quotient(4) ==
          Approx(2.0 * std::sqrt(8.0 * kPi * kPi / 3.0)).epsilon(1e-14));
  REQUIRE(sobolev_quotient(3) ==
          Approx(0.75 * std::pow(2.0 * kPi * kPi, 2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("hat constants by quadrature", "[bubble]") {
  const auto h = hat_constants(4);
  REQUIRE(h.converged);
  REQUIRE(std::abs(h.c2_hat - 0.25) <= 1e-6);
  REQUIRE(std::abs(h.d1_hat - 6.0) <= 1e-6);
  const double lhs = conformal_coupling(4) * h.c0_hat;
  REQUIRE(std::abs(lhs - sobolev_quotient(4)) <= 1e-6 * sobolev_quotient(4));
}

TEST_CASE("energy of the constant function on the round sphere", "[energy]") {
  const auto fb = RadialGeometry::round_sphere();
  RadialProfile one{[](double) { return 1.0; }, [](double) { return 0.0; }};
  const auto rep = energy_J(one, KFamily::constant(2.0), 3.0, fb);
  REQUIRE(rep.numerator == Approx(2.0 * kVolS4).epsilon(1e-11));
  REQUIRE(rep.denominator == Approx(std::sqrt(2.0 * kVolS4)).epsilon(1e-11));
  REQUIRE(rep.value == Approx(std::sqrt(2.0 * kVolS4)).epsilon(1e-11));
}

TEST_CASE("the quotient is scale invariant", "[energy]") {
  const auto geom = RadialGeometry::lebrun_compact(2);
  RadialProfile u{[](double s) { return 1.0 / (1.0 + s * s); },
                  [](double s) {
                    const double d = 1.0 + s * s;
                    return -2.0 * s / (d * d);
                  }};
  const auto base = energy_J(u, KFamily::constant(1.0), 3.0, geom);
  for (double lam : {0.3, 7.0}) {
    RadialProfile ul{[lam, &u](double s) { return lam * u.value(s); },
                     [lam, &u](double s) { return lam * u.deriv(s); }};
    const auto rep = energy_J(ul, KFamily::constant(1.0), 3.0, geom);
    REQUIRE(rep.value == Approx(base.value).epsilon(1e-12));
  }
}

TEST_CASE("modified maximum B_K", "[energy]") {
  REQUIRE(modified_max_BK(KFamily::constant(1.0), RadialGeometry::lebrun_compact(3)) ==
          Approx(3.0));
  REQUIRE(modified_max_BK(KFamily::constant(1.0), RadialGeometry::football(2)) ==
          Approx(2.0));
  // sup branch: K(0) = 1 but sup K = 10 at infinity
  REQUIRE(modified_max_BK(KFamily::rational_decay(10.0, -9.0),
                          RadialGeometry::lebrun_compact(3)) == Approx(10.0));
}

TEST_CASE("test function limits", "[energy]") {
  const auto geom = RadialGeometry::lebrun_compact(2);
  const auto psi = green_function_radial(geom);
  for (double lam : {5.0, 50.0}) {
    const auto phi = test_function(geom, lam, psi);
    REQUIRE(phi.value(1e-9) == Approx(lam).epsilon(1e-12));  // s -> 0 gives lambda
  }
  const auto phi = test_function(geom, 1e6, psi);
  REQUIRE(std::abs(phi.value(0.7)) < 1e-4);  // lambda -> inf pointwise zero
}

TEST_CASE("energy of the test family approaches the threshold", "[energy]") {
  const auto geom = RadialGeometry::lebrun_compact(2);
  const auto psi = green_function_radial(geom);
  const auto phi = test_function(geom, 50.0, psi);
  const double J = energy_J(phi, KFamily::constant(1.0), 3.0, geom).value;
  const double target = sobolev_quotient(4) / std::sqrt(2.0);
  REQUIRE(std::abs(J - target) <= 0.05 * target);
}

TEST_CASE("synthetic lambda^-2 sweep is recovered exactly", "[energy]") {
  std::vector<double> lams{10, 20, 40, 80};
  std::vector<double> J;
  for (double l : lams) J.push_back(5.0 + 3.0 / (l * l));
  const auto fit = fit_energy_sweep(lams, J);
  REQUIRE(fit.limit_estimate == Approx(5.0).margin(1e-10));
  REQUIRE(fit.slope == Approx(3.0).margin(1e-8));
  REQUIRE(fit.slope_sign == 1);
}

TEST_CASE("expansion slope signs track the wall side", "[energy]") {
  // n=1 constant K: margin +1, energy dips below its limit (slope < 0)
  {
    const auto geom = RadialGeometry::lebrun_compact(1);
    const auto psi = green_function_radial(geom);
    const auto ex = energy_expansion_check(geom, KFamily::constant(1.0), psi,
                                           {20, 40, 80, 160});
    REQUIRE(ex.slope_sign == -1);
    REQUIRE(classify_wall(KFamily::constant(1.0), 1).margin > 0.0);
  }
  // n=3 constant K: margin -1, energy stays above its limit (slope > 0)
  {
    const auto geom = RadialGeometry::lebrun_compact(3);
    const auto psi = green_function_radial(geom);
    const auto ex = energy_expansion_check(geom, KFamily::constant(1.0), psi,
                                           {20, 40, 80, 160});
    REQUIRE(ex.slope_sign == 1);
    REQUIRE(classify_wall(KFamily::constant(1.0), 3).margin < 0.0);
  }
  // n=2 with K''(0) >> 0 (Plus side): energy dips below the threshold
  {
    const auto geom = RadialGeometry::lebrun_compact(2);
    const auto psi = green_function_radial(geom);
    const auto K = ridge(2.0);
    REQUIRE(classify_wall(K, 2).margin > 0.0);
    const auto ex = energy_expansion_check(geom, K, psi, {20, 40, 80, 160});
    REQUIRE(ex.slope_sign == -1);
  }
}

TEST_CASE("constant-K energy decreases toward its limit for n >= 3", "[energy]") {
  for (int n : {3, 5}) {
    const auto geom = RadialGeometry::lebrun_compact(n);
    const auto psi = green_function_radial(geom);
    const auto ex = energy_expansion_check(geom, KFamily::constant(1.0), psi,
                                           {20, 40, 80, 160});
    for (size_t i = 1; i < ex.J.size(); ++i) REQUIRE(ex.J[i] < ex.J[i - 1]);
    REQUIRE(ex.J.back() > ex.limit_estimate);
    // the fitted limit respects the B_K threshold bound
    const double bound =
        sobolev_quotient(4) / std::sqrt(modified_max_BK(KFamily::constant(1.0), geom));
    REQUIRE(ex.limit_estimate <= bound * 1.02);
  }
}
