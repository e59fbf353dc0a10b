#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "orblab/kfamily.hpp"
#include "orblab/solver.hpp"

namespace orblab {

// The O(-n) -> O(-2) rewrite of the critical radial equation: with
// Kbar_2(t) = (1 + (n-1)e^-t) Kbar_n(t) / (1 + e^-t), the coefficient
// products satisfy Kbar_2 w_2 = Kbar_n w_n identically, so the two residual
// forms agree pointwise for ANY profile, solution or not.
inline double transformed_k2_bar(const KFamily& Kn, int n, double t) {
  const double em = std::exp(-t);
  const double s = std::sqrt(std::expm1(t) / n);
  return (1.0 + (n - 1.0) * em) * Kn.value(s) / (1.0 + em);
}

struct TransformIdentityReport {
  std::vector<double> t_grid;
  std::vector<double> residual_n;  // w'' + Kbar_n w_n w^3
  std::vector<double> residual_2;  // w'' + Kbar_2 w_2 w^3
  double max_rel_diff = 0.0;
};

// Pointwise residual equality of the two forms on an analytic profile.
inline TransformIdentityReport transform_residual_identity(
    const std::function<double(double)>& w, const std::function<double(double)>& d2w,
    const KFamily& Kn, int n, const std::vector<double>& t_grid) {
  TransformIdentityReport rep;
  rep.t_grid = t_grid;
  for (double t : t_grid) {
    const double s = std::sqrt(std::expm1(t) / n);
    const double wv = w(t);
    const double rn = d2w(t) + Kn.value(s) * lebrun_w_coeff(n, t) * wv * wv * wv;
    const double r2 = d2w(t) + transformed_k2_bar(Kn, n, t) * lebrun_w_coeff(2, t) *
                                   wv * wv * wv;
    rep.residual_n.push_back(rn);
    rep.residual_2.push_back(r2);
    const double scale = std::max({std::abs(rn), std::abs(r2), 1e-300});
    rep.max_rel_diff = std::max(rep.max_rel_diff, std::abs(rn - r2) / scale);
  }
  return rep;
}

struct TransformResult {
  std::vector<double> s_grid;      // O(-2) s coordinate
  std::vector<double> v2;          // candidate profile v2(s) = vbar_n(log(2s^2+1))
  std::vector<double> k2;          // K_2(s)
  double input_residual_sup = 0.0;   // FD residual of the O(-n) t-form
  double o2_residual_sup = 0.0;      // FD residual of the O(-2) s-form
};

// ALE Laplacian of O(-n) in the s = 1/hat_r coordinate:
// Delta u = s^4 (n s^2+1)/(s^2+1) u'' + s^3 (n s^2-1)/(s^2+1) u'.
inline double ale_laplacian_s(int n, double s, double du, double d2u) {
  const double s2 = s * s;
  return s2 * s2 * (n * s2 + 1.0) / (s2 + 1.0) * d2u
         + s2 * s * (n * s2 - 1.0) / (s2 + 1.0) * du;
}

// Map a solved O(-n) profile to the O(-2) candidate v2(s) = vbar_n(log(2s^2+1))
// and evaluate the O(-2) equation residual in the s coordinate by finite
// differences of exactly re-sampled values. The rewrite is exact algebra, so
// the s-form residual differs from the t-form input residual only by
// discretization.
inline TransformResult transform_n_to_2(const RadialGeometry& geom, const KFamily& Kn,
                                        double p, double slope,
                                        std::vector<double> s_grid,
                                        const SolverOptions& opts = {}) {
  if (geom.kind() == GeometryKind::Football)
    throw std::invalid_argument("transform_n_to_2: LeBrun backgrounds only");
  if (std::abs(p - 3.0) > 1e-12)
    throw std::invalid_argument("transform_n_to_2: the rewrite is the critical p=3 one");
  const int n = geom.order();
  TransformResult out;
  out.s_grid = std::move(s_grid);

  const double hs = 1e-3;
  std::vector<double> t_points;
  auto t_of_s = [](double s) { return std::log1p(2.0 * s * s); };
  for (double s : out.s_grid)
    for (int k = -2; k <= 2; ++k) t_points.push_back(t_of_s(s + k * hs));
  std::sort(t_points.begin(), t_points.end());
  t_points.erase(std::unique(t_points.begin(), t_points.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                 t_points.end());
  if (t_points.front() < opts.t0 || t_points.back() > opts.T)
    throw std::invalid_argument("transform_n_to_2: s grid maps outside the solve window");

  const ShotResult shot_res = shoot(geom, Kn, p, slope, opts, t_points);
  auto v_at = [&shot_res](double t) {
    auto it = std::lower_bound(shot_res.traj.x.begin(), shot_res.traj.x.end(),
                               t - 1e-12);
    if (it == shot_res.traj.x.end())
      throw std::runtime_error("transform_n_to_2: lost sample");
    return shot_res.traj.v[it - shot_res.traj.x.begin()];
  };

  // t-form FD residual at the mapped points (the input residual)
  const double ht = 1e-2;
  std::vector<double> t_res_points;
  for (double s : out.s_grid) t_res_points.push_back(t_of_s(s));
  std::vector<double> t_stencil;
  for (double t : t_res_points)
    for (int k = -2; k <= 2; ++k) t_stencil.push_back(t + k * ht);
  std::sort(t_stencil.begin(), t_stencil.end());
  t_stencil.erase(std::unique(t_stencil.begin(), t_stencil.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                  t_stencil.end());
  const ShotResult shot_t = shoot(geom, Kn, p, slope, opts, t_stencil);
  auto vt_at = [&shot_t](double t) {
    auto it =
        std::lower_bound(shot_t.traj.x.begin(), shot_t.traj.x.end(), t - 1e-12);
    if (it == shot_t.traj.x.end())
      throw std::runtime_error("transform_n_to_2: lost t sample");
    return shot_t.traj.v[it - shot_t.traj.x.begin()];
  };
  for (double t : t_res_points) {
    const double d2 = (-vt_at(t - 2 * ht) + 16 * vt_at(t - ht) - 30 * vt_at(t) +
                       16 * vt_at(t + ht) - vt_at(t + 2 * ht)) /
                      (12 * ht * ht);
    const double v = vt_at(t);
    const double s_n = std::sqrt(std::expm1(t) / n);
    const double res = d2 + Kn.value(s_n) * lebrun_w_coeff(n, t) * v * v * v;
    out.input_residual_sup = std::max(out.input_residual_sup, std::abs(res));
  }

  // s-form O(-2) residual: Delta_{g_LEB(2)} v2 + K_2 v2^3 by FD in s
  for (double s : out.s_grid) {
    double vs[5];
    for (int k = -2; k <= 2; ++k) vs[k + 2] = v_at(t_of_s(s + k * hs));
    const double v0 = vs[2];
    const double d1 = (vs[0] - 8 * vs[1] + 8 * vs[3] - vs[4]) / (12 * hs);
    const double d2 = (-vs[0] + 16 * vs[1] - 30 * vs[2] + 16 * vs[3] - vs[4]) /
                      (12 * hs * hs);
    const double k2 = transformed_k2_bar(Kn, n, t_of_s(s));
    const double res = ale_laplacian_s(2, s, d1, d2) + k2 * v0 * v0 * v0;
    out.v2.push_back(v0);
    out.k2.push_back(k2);
    out.o2_residual_sup = std::max(out.o2_residual_sup, std::abs(res));
  }
  return out;
}

// C^1 match at the series/integrator seam: state predicted by the series at
// t0 versus integrating from a much smaller series start up to t0.
inline double seam_jump(const RadialGeometry& geom, const KFamily& K, double p,
                        double slope, const SolverOptions& opts = {}) {
  if (geom.kind() == GeometryKind::Football)
    throw std::invalid_argument("seam_jump: LeBrun backgrounds only");
  const int n = geom.order();
  const State2 direct = detail::lebrun_series_start(K, n, p, slope, opts.t0);
  SolverOptions inner = opts;
  inner.t0 = opts.t0 / 16.0;
  const State2 y0 = detail::lebrun_series_start(K, n, p, slope, inner.t0);
  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  oo.h_init = inner.t0 / 4.0;
  const OdeResult r = integrate_rk45(detail::lebrun_system(K, n, p), inner.t0, y0,
                                     opts.t0, {}, oo);
  const double dv = std::abs(r.y_end[0] - direct[0]) / (std::abs(direct[0]) + 1e-300);
  const double dp = std::abs(r.y_end[1] - direct[1]) / (std::abs(direct[1]) + 1e-300);
  return std::max(dv, dp);
}

}  // namespace orblab
