#include <catch_amalgamated.hpp>

#include <cmath>

#include "orblab/kfamily.hpp"

using namespace orblab;
using Catch::Approx;

namespace {
// bounded positive family with K''(0) = 2a and limit 1
KFamily ridge(double a) {
  return KFamily::custom(
      "ridge", [a](double s) { return 1.0 + a * s * s * std::exp(-s * s); },
      [a](double s) { return a * (2.0 * s - 2.0 * s * s * s) * std::exp(-s * s); },
      2.0 * a, 1.0);
}
}  // namespace

TEST_CASE("wall classification", "[kfamily]") {
  const auto w2 = classify_wall(KFamily::constant(1.0), 2);
  REQUIRE(w2.label == WallSide::Zero);
  REQUIRE(w2.margin == Approx(0.0).margin(1e-15));

  const auto w3 = classify_wall(KFamily::constant(1.0), 3);
  REQUIRE(w3.label == WallSide::Minus);
  REQUIRE(w3.margin == Approx(-1.0));

  const auto wp = classify_wall(ridge(1.0), 3);  // K''(0) = 2, K(0) = 1
  REQUIRE(wp.label == WallSide::Plus);
  REQUIRE(wp.margin == Approx(1.0));
}

TEST_CASE("wall margin is scale invariant", "[kfamily]") {
  const KFamily base = ridge(0.7);
  for (double c : {0.25, 4.0}) {
    const KFamily scaled = KFamily::custom(
        "scaled", [base, c](double s) { return c * base.value(s); },
        [base, c](double s) { return c * base.deriv(s); }, c * base.d2_at_0(),
        c * base.limit_inf());
    REQUIRE(classify_wall(scaled, 4).margin ==
            Approx(classify_wall(base, 4).margin).epsilon(1e-13));
  }
}

TEST_CASE("bump family derivatives", "[kfamily]") {
  const auto K = KFamily::bump(1.0, 0.5);
  REQUIRE(K.value(0.0) == Approx(1.5));
  REQUIRE(K.d2_at_0() == Approx(-1.0));
  REQUIRE(K.limit_inf() == Approx(1.0));
  // K'(0) = 0 for every family
  REQUIRE(K.deriv(0.0) == 0.0);
  REQUIRE(KFamily::rational_decay(1.0, 1.0).deriv(0.0) == 0.0);
  // finite-difference check of the derivative callback
  const double h = 1e-6;
  for (double s : {0.3, 1.1}) {
    const double fd = (K.value(s + h) - K.value(s - h)) / (2 * h);
    REQUIRE(K.deriv(s) == Approx(fd).margin(1e-8));
  }
}

TEST_CASE("K_minus product family", "[kfamily]") {
  // n=2 prefactor is identically 1
  const auto K2c = make_K_minus(2, KFamily::constant(3.0));
  for (double s : {0.0, 0.5, 2.0, 40.0}) REQUIRE(K2c.value(s) == Approx(3.0));

  // monotone decreasing K2m = 1 + 1/(1+s^2)
  const auto K2m = KFamily::rational_decay(1.0, 1.0);
  const auto K3 = make_K_minus(3, K2m);
  REQUIRE(K3.value(0.0) == Approx(4.0 / 3.0));
  REQUIRE(classify_wall(K3, 3).label == WallSide::Minus);
  REQUIRE(classify_wall(K3, 3).margin == Approx(K2m.d2_at_0() / K2m.at_origin()));

  const auto K5 = make_K_minus(5, KFamily::constant(1.0));
  REQUIRE(K5.value(0.0) == Approx(0.4));
  REQUIRE(K5.limit_inf() == Approx(1.0));
  for (double s : {1.0, 3.0})
    REQUIRE(K5.value(s) == Approx((2.0 + 5 * s * s) / (5.0 + 5 * s * s)));

  // derivative callback consistency
  const double h = 1e-6;
  for (double s : {0.4, 1.7}) {
    const double fd = (K3.value(s + h) - K3.value(s - h)) / (2 * h);
    REQUIRE(K3.deriv(s) == Approx(fd).margin(1e-8));
  }
}

TEST_CASE("K_minus input validation", "[kfamily]") {
  // increasing family rejected
  REQUIRE_THROWS_AS(make_K_minus(3, KFamily::bump(1.0, -0.5)), std::invalid_argument);
  // positivity at infinity required
  REQUIRE_THROWS_AS(KFamily::rational_decay(0.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(KFamily::constant(-1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(KFamily::bump(1.0, -1.5), std::invalid_argument);
}
