#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "orblab/transform.hpp"

using namespace orblab;
using Catch::Approx;

namespace {
KFamily ridge(double a) {
  return KFamily::custom(
      "ridge", [a](double s) { return 1.0 + a * s * s * std::exp(-s * s); },
      [a](double s) { return a * (2.0 * s - 2.0 * s * s * s) * std::exp(-s * s); },
      2.0 * a, 1.0);
}
}  // namespace

TEST_CASE("residual identity on random smooth profiles", "[transform]") {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> amp(-1.0, 1.0), freq(0.2, 2.0);
  std::vector<double> t_grid;
  for (int i = 1; i <= 50; ++i) t_grid.push_back(0.05 + (22.0 - 0.05) * i / 51.0);
  const std::vector<KFamily> families = {
      KFamily::constant(1.3), KFamily::bump(1.0, 0.8),
      KFamily::rational_decay(2.0, -1.0), ridge(1.2)};
  for (int trial = 0; trial < 20; ++trial) {
    const double a1 = amp(rng), a2 = amp(rng), w1 = freq(rng), w2 = freq(rng),
                 b = amp(rng);
    auto w = [=](double t) {
      return 1.0 + a1 * std::sin(w1 * t) + a2 * std::cos(w2 * t) +
             b * std::exp(-0.3 * t);
    };
    auto d2w = [=](double t) {
      return -a1 * w1 * w1 * std::sin(w1 * t) - a2 * w2 * w2 * std::cos(w2 * t) +
             0.09 * b * std::exp(-0.3 * t);
    };
    const KFamily& K = families[trial % families.size()];
    const int n = 1 + trial % 5;
    const auto rep = transform_residual_identity(w, d2w, K, n, t_grid);
    REQUIRE(rep.max_rel_diff <= 1e-12);
  }
}

TEST_CASE("n=2 rewrite is the identity", "[transform]") {
  const auto K = KFamily::bump(1.0, 0.4);
  for (double t : {0.1, 1.0, 5.0}) {
    const double s = std::sqrt(std::expm1(t) / 2.0);
    REQUIRE(transformed_k2_bar(K, 2, t) == Approx(K.value(s)).epsilon(1e-15));
  }
}

TEST_CASE("s-form ALE Laplacian is consistent with the t form", "[transform]") {
  // v(s) = vbar(t(s)) with vbar = sin: both routes must give the same Delta v
  const int n = 3;
  auto t_of_s = [n](double s) { return std::log1p(double(n) * s * s); };
  for (double s : {0.4, 1.0, 2.5}) {
    const double t = t_of_s(s);
    const double tp = 2.0 * n * s / (1.0 + n * s * s);
    const double b = 1.0 + n * s * s;
    const double tpp = 2.0 * n * (1.0 - n * s * s) / (b * b);
    const double dv = std::cos(t) * tp;
    const double d2v = -std::sin(t) * tp * tp + std::cos(t) * tpp;
    const double via_s = ale_laplacian_s(n, s, dv, d2v);
    const double via_t = ale_laplacian_t_coeff(n, t) * (-std::sin(t));
    REQUIRE(via_s == Approx(via_t).epsilon(1e-12));
  }
}

TEST_CASE("solved Plus-side profile transforms with bounded residual growth",
          "[transform]") {
  const auto g3 = RadialGeometry::lebrun_compact(3);
  const auto K = ridge(1.0);  // margin +2 at n=3? margin = 2 - 1 = +1
  REQUIRE(classify_wall(K, 3).label == WallSide::Plus);
  const auto sr = solve_bvp(g3, K, 3.0);
  REQUIRE(sr.solution);
  std::vector<double> s_grid;
  for (int i = 0; i <= 20; ++i) s_grid.push_back(0.2 + (1.8 - 0.2) * i / 20.0);
  const auto tr =
      transform_n_to_2(g3, K, 3.0, sr.solution->shooting_parameter, s_grid);
  REQUIRE(tr.o2_residual_sup <= 10.0 * std::max(tr.input_residual_sup, 1e-10));
  for (double v : tr.v2) REQUIRE(v > 0.0);
}

TEST_CASE("transform rejects the football", "[transform]") {
  REQUIRE_THROWS_AS(transform_n_to_2(RadialGeometry::football(2),
                                     KFamily::constant(1.0), 3.0, 1.0, {0.5}),
                    std::invalid_argument);
}
