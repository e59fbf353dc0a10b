#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace orblab {

// Dormand-Prince 5(4) for 2-state systems (all radial ODEs here are (y, y')).
using State2 = std::array<double, 2>;
using Rhs2 = std::function<State2(double, const State2&)>;

struct OdeOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  double h_init = 1e-4;
  double h_max = 0.5;
  double h_min = 1e-14;
  bool stop_on_zero = false;  // terminate when y[0] crosses zero downward
};

struct Checkpoint {
  double t;
  State2 y;
};

struct OdeResult {
  double t_end = 0.0;
  State2 y_end{};
  bool crossed_zero = false;
  double t_cross = 0.0;
  State2 y_cross{};
  bool step_underflow = false;
  std::vector<Checkpoint> at;  // states at requested checkpoints, in order
};

namespace detail {

inline constexpr double kDP_c[7] = {0., 1. / 5, 3. / 10, 4. / 5, 8. / 9, 1., 1.};
inline constexpr double kDP_a[7][6] = {
    {},
    {1. / 5},
    {3. / 40, 9. / 40},
    {44. / 45, -56. / 15, 32. / 9},
    {19372. / 6561, -25360. / 2187, 64448. / 6561, -212. / 729},
    {9017. / 3168, -355. / 33, 46732. / 5247, 49. / 176, -5103. / 18656},
    {35. / 384, 0., 500. / 1113, 125. / 192, -2187. / 6784, 11. / 84}};
inline constexpr double kDP_b5[7] = {35. / 384,     0., 500. / 1113, 125. / 192,
                                     -2187. / 6784, 11. / 84, 0.};
inline constexpr double kDP_b4[7] = {5179. / 57600,    0.,           7571. / 16695,
                                     393. / 640,       -92097. / 339200,
                                     187. / 2100,      1. / 40};

}  // namespace detail

// Integrate from t0 to t1 (t1 > t0), landing exactly on each checkpoint.
// Checkpoints must be sorted ascending and lie in [t0, t1].
inline OdeResult integrate_rk45(const Rhs2& f, double t0, State2 y0, double t1,
                                std::span<const double> checkpoints,
                                const OdeOptions& opts = {}) {
  OdeResult res;
  double t = t0;
  State2 y = y0;
  double h = std::min(opts.h_init, t1 - t0);
  size_t next_cp = 0;
  while (next_cp < checkpoints.size() && checkpoints[next_cp] <= t0) {
    res.at.push_back({t0, y0});
    ++next_cp;
  }
  State2 k[7];
  k[0] = f(t, y);
  while (t1 - t > 1e-14 * (1.0 + std::abs(t1))) {
    double target = t1;
    if (next_cp < checkpoints.size()) target = std::min(target, checkpoints[next_cp]);
    if (h > target - t) h = target - t;
    if (h < opts.h_min) {
      res.step_underflow = true;
      break;
    }
    for (int i = 1; i < 7; ++i) {
      State2 yi = y;
      for (int j = 0; j < i; ++j) {
        yi[0] += h * detail::kDP_a[i][j] * k[j][0];
        yi[1] += h * detail::kDP_a[i][j] * k[j][1];
      }
      k[i] = f(t + detail::kDP_c[i] * h, yi);
    }
    State2 y5 = y, y4 = y;
    for (int i = 0; i < 7; ++i) {
      y5[0] += h * detail::kDP_b5[i] * k[i][0];
      y5[1] += h * detail::kDP_b5[i] * k[i][1];
      y4[0] += h * detail::kDP_b4[i] * k[i][0];
      y4[1] += h * detail::kDP_b4[i] * k[i][1];
    }
    double err = 0.0;
    for (int c = 0; c < 2; ++c) {
      const double sc = opts.atol + opts.rtol * std::max(std::abs(y[c]), std::abs(y5[c]));
      err = std::max(err, std::abs(y5[c] - y4[c]) / sc);
    }
    if (!std::isfinite(err)) err = 1e10;
    if (err <= 1.0) {
      const double t_new = t + h;
      if (opts.stop_on_zero && y[0] > 0.0 && y5[0] <= 0.0) {
        // Locate the crossing with a cubic Hermite on (y, y') over the step.
        const double va = y[0], da = k[0][0] * h;  // wrt normalized step variable
        const double vb = y5[0], db = k[6][0] * h;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          const double s = 0.5 * (lo + hi);
          const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
          const double h10 = s * (1 - s) * (1 - s);
          const double h01 = s * s * (3 - 2 * s);
          const double h11 = s * s * (s - 1);
          const double vs = h00 * va + h10 * da + h01 * vb + h11 * db;
          (vs > 0.0 ? lo : hi) = s;
        }
        const double s = 0.5 * (lo + hi);
        res.crossed_zero = true;
        res.t_cross = t + s * h;
        res.y_cross = {0.0, y[1] + s * (y5[1] - y[1])};  // linear slope estimate
        res.t_end = res.t_cross;
        res.y_end = res.y_cross;
        return res;
      }
      t = t_new;
      y = y5;
      k[0] = k[6];  // FSAL
      while (next_cp < checkpoints.size() &&
             t >= checkpoints[next_cp] - 1e-13 * (1 + std::abs(t))) {
        res.at.push_back({checkpoints[next_cp], y});
        ++next_cp;
      }
      const double fac = std::min(5.0, std::max(0.2, 0.9 * std::pow(err > 1e-300 ? err : 1e-300, -0.2)));
      h = std::min(opts.h_max, h * fac);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (h < opts.h_min) {
        res.step_underflow = true;
        break;
      }
    }
    if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
      res.step_underflow = true;
      break;
    }
  }
  res.t_end = t;
  res.y_end = y;
  return res;
}

}  // namespace orblab
