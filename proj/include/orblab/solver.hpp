#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orblab/geometry.hpp"
#include "orblab/kfamily.hpp"
#include "orblab/rk45.hpp"

namespace orblab {

// ---------------------------------------------------------------------------
// Radial solver for -Delta u + c(4) R u = K u^p.
//
// LeBrun backgrounds are solved on the ALE side in the t coordinate: with
// u = phi * vbar, phi = n + s^-2 = n/(1-e^-t), the compact equation maps
// exactly to
//     vbar''(t) = -Kbar(t) * phi(t)^{p-3} * w_n(t) * vbar^p,
// where w_n(t) = e^-t (1+(n-1)e^-t) / (4(1-e^-t)^3) is the inverse of the
// pure-second-derivative ALE Laplacian coefficient. At p = 3 the phi factor
// drops out and this is the familiar critical transform. Boundary data:
// vbar(0) = 0 with slope vbar'(0) = u(q)/n at the orbifold point, vbar' -> 0
// at the regular P^1 center (truncated at t = T, coefficient decays like
// e^-t so the truncation error is below integrator tolerance).
//
// The football is solved in theta with the self-adjoint flux variable
// w = sin^3(theta) u', shooting on u(0) from one pole to the other.
// ---------------------------------------------------------------------------

struct SolverOptions {
  double t0 = 1e-6;   // series-start offset at the singular endpoint
  double T = 25.0;    // far-end truncation (LeBrun); pole margin for football
  double pole_margin = 1e-3;  // football: integrate on [theta0, pi - margin]
  double theta0 = 1e-4;
  double rtol = 1e-11;
  double atol = 1e-13;
  int grid_points = 481;
  double slope_min = 1e-2;
  double slope_max = 50.0;
  int scan_points = 200;
  int bisect_iters = 80;
  double residual_h = 1e-2;        // FD stencil step for the residual check
  double residual_tol_base = 1e-8; // accepted if sup residual <= base*(1+max_u^p)
  double positivity_floor = 1e-3;  // terminal v >= floor * max v
  double balanced_tol = 1e-8;      // |terminal slope| <= tol*slope -> balanced
  double blowup_ratio = 10.0;      // continuation classification threshold
};

inline double sgn_pow(double v, double p) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), p), v);
}

// conformal factor phi(t) = n + s^-2 = n/(1 - e^-t)
inline double lebrun_conf_factor(int n, double t) {
  return n / (-std::expm1(-t));
}

// w_n(t) = e^-t (1 + (n-1) e^-t) / (4 (1 - e^-t)^3)
inline double lebrun_w_coeff(int n, double t) {
  const double em = std::exp(-t);
  const double om = -std::expm1(-t);
  return em * (1.0 + (n - 1.0) * em) / (4.0 * om * om * om);
}

// Effective ODE coefficient q(t) = Kbar(t) phi^{p-3} w_n(t); regular at t=0
// with limit K(0) n^{p-2}/4.
inline double lebrun_q_coeff(const KFamily& K, int n, double p, double t) {
  const double s = std::sqrt(std::expm1(t) / n);
  return K.value(s) * std::pow(lebrun_conf_factor(n, t), p - 3.0) *
         lebrun_w_coeff(n, t);
}

// Second derivative of the shooting variable: vbar'' for LeBrun backgrounds
// (t coordinate), u'' for the football (theta coordinate).
inline double ode_rhs(const RadialGeometry& geom, const KFamily& K, double p,
                      double t, double v, double vp) {
  if (geom.kind() == GeometryKind::Football) {
    if (!(t > 0.0) || !(t < kPi))
      throw std::domain_error("ode_rhs: theta at singular pole");
    const double u = v;
    return 2.0 * u - K.value(t) * sgn_pow(u, p) - 3.0 / std::tan(t) * vp;
  }
  if (!(t > 0.0)) throw std::domain_error("ode_rhs: t at singular endpoint");
  return -lebrun_q_coeff(K, geom.order(), p, t) * sgn_pow(v, p);
}

enum class ShotFate { HitsZero, Diverges, Balanced };

inline const char* to_string(ShotFate f) {
  switch (f) {
    case ShotFate::HitsZero: return "hits-zero";
    case ShotFate::Diverges: return "diverges";
    case ShotFate::Balanced: return "balanced";
  }
  return "?";
}

struct ShotDiagnostics {
  double slope = 0.0;
  ShotFate fate = ShotFate::Diverges;
  double terminal_v = 0.0;
  double terminal_vp = 0.0;  // shooting functional F(slope)
  bool crossed = false;
  double first_zero = 0.0;  // crossing location when crossed
  bool integrator_failed = false;
  double max_v = 0.0;
  double argmax = 0.0;
};

struct Trajectory {
  std::vector<double> x;  // t (LeBrun) or theta (football)
  std::vector<double> v, vp;
};

struct ShotResult {
  ShotDiagnostics diag;
  Trajectory traj;
};

namespace detail {

inline Rhs2 lebrun_system(const KFamily& K, int n, double p) {
  return [K, n, p](double t, const State2& y) -> State2 {
    return {y[1], -lebrun_q_coeff(K, n, p, t) * sgn_pow(y[0], p)};
  };
}

// football system in (u, w = sin^3 theta * u')
inline Rhs2 football_system(const KFamily& K, double p) {
  return [K, p](double th, const State2& y) -> State2 {
    const double s3 = std::pow(std::sin(th), 3.0);
    return {y[1] / s3, s3 * (2.0 * y[0] - K.value(th) * sgn_pow(y[0], p))};
  };
}

// q(t) -> K(0) n^{p-2}/4 =: q0 as t -> 0, so vbar = slope*t - D t^2/2 + O(t^3)
// with D = q0 * slope^p.
inline State2 lebrun_series_start(const KFamily& K, int n, double p, double slope,
                                  double t0) {
  const double q0 = K.at_origin() * std::pow(double(n), p - 2.0) / 4.0;
  const double D = q0 * std::pow(slope, p);
  return {slope * t0 - 0.5 * D * t0 * t0, slope - D * t0};
}

inline State2 football_series_start(const KFamily& K, double p, double u0,
                                    double th0) {
  const double c2 = (2.0 * u0 - K.at_origin() * sgn_pow(u0, p)) / 8.0;
  return {u0 + c2 * th0 * th0, 2.0 * c2 * th0};
}

}  // namespace detail

// One shot from the singular endpoint; checkpoints (if any) must be
// ascending within the integration window.
inline ShotResult shoot(const RadialGeometry& geom, const KFamily& K, double p,
                        double slope, const SolverOptions& opts = {},
                        std::vector<double> checkpoints = {}) {
  if (!(slope > 0.0)) throw std::invalid_argument("shoot: slope must be > 0");
  const bool football = geom.kind() == GeometryKind::Football;
  const double x0 = football ? opts.theta0 : opts.t0;
  const double x1 = football ? kPi - opts.pole_margin : opts.T;
  if (checkpoints.empty()) {
    checkpoints.resize(opts.grid_points);
    for (int i = 0; i < opts.grid_points; ++i)
      checkpoints[i] = x0 + (x1 - x0) * i / (opts.grid_points - 1.0);
  }
  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  oo.h_max = 0.25;
  oo.stop_on_zero = true;
  const Rhs2 sys = football ? detail::football_system(K, p)
                            : detail::lebrun_system(K, geom.order(), p);
  State2 y0;
  if (football) {
    y0 = detail::football_series_start(K, p, slope, x0);
    y0[1] *= std::pow(std::sin(x0), 3.0);  // state carries the flux w = sin^3 u'
  } else {
    y0 = detail::lebrun_series_start(K, geom.order(), p, slope, x0);
  }
  const OdeResult r = integrate_rk45(sys, x0, y0, x1, checkpoints, oo);

  ShotResult out;
  out.diag.slope = slope;
  out.diag.crossed = r.crossed_zero;
  out.diag.first_zero = r.t_cross;
  out.diag.integrator_failed = r.step_underflow;
  out.diag.terminal_v = r.y_end[0];
  out.diag.terminal_vp = r.y_end[1];
  out.traj.x.reserve(r.at.size());
  for (const auto& c : r.at) {
    if (c.t > r.t_end + 1e-12) break;
    out.traj.x.push_back(c.t);
    out.traj.v.push_back(c.y[0]);
    out.traj.vp.push_back(c.y[1]);
  }
  double mv = 0.0, am = x0;
  for (size_t i = 0; i < out.traj.x.size(); ++i) {
    if (out.traj.v[i] > mv) {
      mv = out.traj.v[i];
      am = out.traj.x[i];
    }
  }
  out.diag.max_v = std::max(mv, r.y_end[0]);
  out.diag.argmax = am;
  // terminal slope functional: for the football the flux w is already the
  // natural regular-center functional; for LeBrun it is vbar'(T)
  const double functional = out.diag.terminal_vp;
  if (r.crossed_zero || r.step_underflow) {
    out.diag.fate = r.step_underflow && !r.crossed_zero ? ShotFate::Diverges
                                                        : ShotFate::HitsZero;
  } else if (std::abs(functional) <= opts.balanced_tol * slope) {
    out.diag.fate = ShotFate::Balanced;
  } else if (functional > 0.0) {
    out.diag.fate = ShotFate::Diverges;  // linear growth; u unbounded at center
  } else {
    out.diag.fate = ShotFate::HitsZero;  // dead coefficient => future crossing
  }
  return out;
}

// ---------------------------------------------------------------------------

struct RadialSolution {
  GeometryKind kind = GeometryKind::LebrunCompact;
  int order = 1;
  double p = 3.0;
  double shooting_parameter = 0.0;
  std::vector<double> x;   // t (LeBrun) or theta (football)
  std::vector<double> s;   // s = s(t); empty for football
  std::vector<double> u, du;  // u and du/ds (du/dtheta on the football)
  std::vector<double> v, vp;  // ALE-side profile; equals (u, u') on football
  double max_u = 0.0, argmax = 0.0, min_u = 0.0;
  double u_orbifold = 0.0, u_center = 0.0;
  double residual_sup = 0.0, residual_tol = 0.0;
  std::vector<double> residual_grid, residual_values;
};

struct ScanEvidence {
  std::vector<ShotDiagnostics> shots;
  int sign_change_brackets = 0;       // brackets where both ends reached the
                                      // far boundary with positive profile
  int refined_rejected = 0;           // brackets whose root failed acceptance
  std::vector<double> rejected_slopes;
};

struct SolveResult {
  std::optional<RadialSolution> solution;
  ScanEvidence evidence;
};

namespace detail {

// Shooting functional used for bracketing: terminal slope, with crossings
// counted as negative.
inline double shot_functional(const ShotResult& r) {
  if (r.diag.crossed) return r.diag.terminal_vp < 0.0 ? r.diag.terminal_vp : -1e-30;
  if (r.diag.integrator_failed) return 1e30;
  return r.diag.terminal_vp;
}

}  // namespace detail

// Validate a slope candidate: re-integrate on the storage grid plus the FD
// residual stencils, enforce positivity and the sup-residual contract, and
// assemble the solution record (u recovered via u = phi * vbar on LeBrun).
inline std::optional<RadialSolution> verify_candidate(const RadialGeometry& geom,
                                                      const KFamily& K, double p,
                                                      double slope,
                                                      const SolverOptions& opts = {}) {
  const bool football = geom.kind() == GeometryKind::Football;
  const int n = geom.order();
  const double x0 = football ? opts.theta0 : opts.t0;
  const double x1 = football ? kPi - opts.pole_margin : opts.T;
  const double h = opts.residual_h;
  // residual grid: 2x finer than the storage grid; for subcritical p the
  // sixth derivative of vbar blows up like t^{p-4} at the orbifold end, so
  // the FD window starts at a fixed margin there
  double lo = x0 + 2.0 * h;
  if (!football && p < 3.0 - 1e-9) lo = std::max(lo, 0.25);
  const double hi = x1 - 2.0 * h;
  const int nres = 2 * opts.grid_points - 1;
  std::vector<double> res_grid(nres);
  for (int i = 0; i < nres; ++i) res_grid[i] = lo + (hi - lo) * i / (nres - 1.0);

  std::vector<double> cps(opts.grid_points);
  for (int i = 0; i < opts.grid_points; ++i)
    cps[i] = x0 + (x1 - x0) * i / (opts.grid_points - 1.0);
  for (double t : res_grid)
    for (int k = -2; k <= 2; ++k) cps.push_back(t + k * h);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-13; }),
            cps.end());

  SolverOptions so = opts;
  const ShotResult r = shoot(geom, K, p, slope, so, cps);
  if (r.diag.crossed || r.diag.integrator_failed) return std::nullopt;

  // index checkpoints
  auto value_at = [&r](double t) -> std::pair<double, double> {
    auto it = std::lower_bound(r.traj.x.begin(), r.traj.x.end(), t - 1e-12);
    if (it == r.traj.x.end()) throw std::runtime_error("verify_candidate: lost checkpoint");
    const size_t i = it - r.traj.x.begin();
    return {r.traj.v[i], r.traj.vp[i]};
  };

  double max_v = 0.0;
  for (double v : r.traj.v) max_v = std::max(max_v, v);
  if (!(r.diag.terminal_v >= opts.positivity_floor * max_v)) return std::nullopt;
  for (double v : r.traj.v)
    if (!(v > 0.0)) return std::nullopt;

  RadialSolution sol;
  sol.kind = geom.kind();
  sol.order = n;
  sol.p = p;
  sol.shooting_parameter = slope;

  // FD residual on the refined grid (derivatives from checkpointed samples,
  // independent of the integrator's internal stages)
  double max_u_for_tol = 0.0;
  std::vector<double> resv(res_grid.size());
  for (size_t i = 0; i < res_grid.size(); ++i) {
    const double t = res_grid[i];
    const double vm2 = value_at(t - 2 * h).first, vm1 = value_at(t - h).first;
    const double v0 = value_at(t).first;
    const double vp1 = value_at(t + h).first, vp2 = value_at(t + 2 * h).first;
    const double d1 = (vm2 - 8 * vm1 + 8 * vp1 - vp2) / (12 * h);
    const double d2 = (-vm2 + 16 * vm1 - 30 * v0 + 16 * vp1 - vp2) / (12 * h * h);
    resv[i] = std::abs(d2 - ode_rhs(geom, K, p, t, v0, d1));
  }
  sol.residual_grid = res_grid;
  sol.residual_values = std::move(resv);
  sol.residual_sup = *std::max_element(sol.residual_values.begin(),
                                       sol.residual_values.end());

  // assemble samples on the storage grid
  for (int i = 0; i < opts.grid_points; ++i) {
    const double x = x0 + (x1 - x0) * i / (opts.grid_points - 1.0);
    const auto [v, vp] = value_at(x);
    sol.x.push_back(x);
    sol.v.push_back(v);
    sol.vp.push_back(vp);
    if (football) {
      sol.u.push_back(v);
      sol.du.push_back(vp / std::pow(std::sin(x), 3.0));  // vp stores the flux w
    } else {
      const double s = std::sqrt(std::expm1(x) / n);
      const double phi = n + 1.0 / (s * s);
      const double dphi = -2.0 / (s * s * s);
      const double dt_ds = 2.0 * n * s / (1.0 + n * s * s);
      sol.s.push_back(s);
      sol.u.push_back(phi * v);
      sol.du.push_back(dphi * v + phi * vp * dt_ds);
    }
  }
  sol.max_u = 0.0;
  sol.min_u = sol.u.front();
  for (size_t i = 0; i < sol.u.size(); ++i) {
    if (sol.u[i] > sol.max_u) {
      sol.max_u = sol.u[i];
      sol.argmax = sol.x[i];
    }
    sol.min_u = std::min(sol.min_u, sol.u[i]);
  }
  if (football) {
    sol.u_orbifold = slope;  // u at the theta=0 pole
    sol.u_center = r.diag.terminal_v;
  } else {
    sol.u_orbifold = n * slope;          // lim phi*vbar at t -> 0
    sol.u_center = n * r.diag.terminal_v;  // phi(inf) = n
    sol.max_u = std::max(sol.max_u, sol.u_orbifold);
    if (sol.u_orbifold >= sol.max_u) sol.argmax = 0.0;
  }
  sol.residual_tol = opts.residual_tol_base * (1.0 + std::pow(sol.max_u, p));
  if (!(sol.residual_sup <= sol.residual_tol)) return std::nullopt;
  if (!(sol.min_u > 0.0)) return std::nullopt;
  return sol;
}

// Exact constant solutions exist where c(4) R is constant: u = (c(4)R/K)^{1/(p-1)}
// on the football (c(4)R = 2) and on the n=1 compactification (c(4)R = 4).
// Seeding them keeps the scan honest in the degenerate case (constant K on
// the round background carries a noncompact conformal family, so the
// terminal-slope functional is flat and bracketing cannot isolate the
// symmetric representative).
inline std::optional<double> constant_solution_slope(const RadialGeometry& geom,
                                                     const KFamily& K, double p) {
  if (K.kind() != KFamilyKind::Constant) return std::nullopt;
  const double k = K.at_origin();
  if (geom.kind() == GeometryKind::Football)
    return std::pow(2.0 / k, 1.0 / (p - 1.0));
  if (geom.kind() == GeometryKind::LebrunCompact && geom.order() == 1)
    return std::pow(4.0 / k, 1.0 / (p - 1.0));
  return std::nullopt;
}

// Bisection + secant polish inside a sign-change bracket of the terminal
// shooting functional.
inline double refine_bracket(const RadialGeometry& geom, const KFamily& K, double p,
                             double lo, double hi, double flo, double fhi,
                             const SolverOptions& opts = {}) {
  const double cp0 = geom.kind() == GeometryKind::Football ? opts.theta0 : opts.t0;
  for (int i = 0; i < opts.bisect_iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = detail::shot_functional(shoot(geom, K, p, mid, opts, {cp0}));
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (fhi != flo) {
    const double sec = lo - flo * (hi - lo) / (fhi - flo);
    if (sec > lo && sec < hi) return sec;
  }
  return 0.5 * (lo + hi);
}

// Full scan-and-refine solve. NotFound keeps the scan evidence.
inline SolveResult solve_bvp(const RadialGeometry& geom, const KFamily& K, double p,
                             const SolverOptions& opts = {}) {
  if (!(p > 1.0) || !(p <= 3.0))
    throw std::invalid_argument("solve_bvp: p must lie in (1, 3]");
  SolveResult out;
  if (auto seed = constant_solution_slope(geom, K, p)) {
    out.solution = verify_candidate(geom, K, p, *seed, opts);
    if (out.solution) return out;
  }
  std::vector<double> slopes(opts.scan_points);
  const double l0 = std::log(opts.slope_min), l1 = std::log(opts.slope_max);
  for (int i = 0; i < opts.scan_points; ++i)
    slopes[i] = std::exp(l0 + (l1 - l0) * i / (opts.scan_points - 1.0));
  std::vector<double> F(slopes.size());
  std::vector<bool> clean(slopes.size());  // reached far end with v > 0
  for (size_t i = 0; i < slopes.size(); ++i) {
    // scan shots only need the endpoint, not the storage grid
    const ShotResult r = shoot(geom, K, p, slopes[i], opts, {opts.t0});
    out.evidence.shots.push_back(r.diag);
    F[i] = detail::shot_functional(r);
    clean[i] = !r.diag.crossed && !r.diag.integrator_failed;
  }
  for (size_t i = 0; i + 1 < slopes.size(); ++i) {
    if (F[i] == 0.0 || (F[i] > 0.0) != (F[i + 1] > 0.0)) {
      if (clean[i] && clean[i + 1]) ++out.evidence.sign_change_brackets;
      const double root =
          refine_bracket(geom, K, p, slopes[i], slopes[i + 1], F[i], F[i + 1], opts);
      auto cand = verify_candidate(geom, K, p, root, opts);
      if (cand) {
        if (!out.solution) out.solution = std::move(cand);
      } else {
        ++out.evidence.refined_rejected;
        out.evidence.rejected_slopes.push_back(root);
      }
    }
  }
  return out;
}

struct MultiStartResult {
  int count = 0;
  std::vector<RadialSolution> solutions;
  ScanEvidence evidence;
};

// Count distinct solutions over the slope scan; dedupe by max-norm distance
// of the u samples.
inline MultiStartResult multi_start_count(const RadialGeometry& geom,
                                          const KFamily& K, double p,
                                          const SolverOptions& opts = {}) {
  if (opts.scan_points < 100)
    throw std::invalid_argument("multi_start_count: scan needs >= 100 points");
  MultiStartResult out;
  if (auto seed = constant_solution_slope(geom, K, p)) {
    if (auto sol = verify_candidate(geom, K, p, *seed, opts))
      out.solutions.push_back(std::move(*sol));
  }
  std::vector<double> slopes(opts.scan_points);
  const double l0 = std::log(opts.slope_min), l1 = std::log(opts.slope_max);
  for (int i = 0; i < opts.scan_points; ++i)
    slopes[i] = std::exp(l0 + (l1 - l0) * i / (opts.scan_points - 1.0));
  std::vector<double> F(slopes.size());
  for (size_t i = 0; i < slopes.size(); ++i) {
    const ShotResult r = shoot(geom, K, p, slopes[i], opts, {opts.t0});
    out.evidence.shots.push_back(r.diag);
    F[i] = detail::shot_functional(r);
  }
  for (size_t i = 0; i + 1 < slopes.size(); ++i) {
    if (F[i] == 0.0 || (F[i] > 0.0) != (F[i + 1] > 0.0)) {
      const double root =
          refine_bracket(geom, K, p, slopes[i], slopes[i + 1], F[i], F[i + 1], opts);
      auto cand = verify_candidate(geom, K, p, root, opts);
      if (!cand) {
        ++out.evidence.refined_rejected;
        out.evidence.rejected_slopes.push_back(root);
        continue;
      }
      bool dup = false;
      for (const auto& s : out.solutions) {
        double d = 0.0;
        for (size_t k = 0; k < s.u.size(); ++k)
          d = std::max(d, std::abs(s.u[k] - cand->u[k]));
        if (d <= 1e-6 * (1.0 + s.max_u)) {
          dup = true;
          break;
        }
      }
      if (!dup) out.solutions.push_back(std::move(*cand));
    }
  }
  out.count = static_cast<int>(out.solutions.size());
  return out;
}

struct ContinuationStep {
  double p = 0.0;
  bool found = false;
  double slope = 0.0, max_u = 0.0, argmax = 0.0, u_center = 0.0, residual_sup = 0.0;
};

struct ContinuationResult {
  std::vector<ContinuationStep> steps;
  std::string classification;  // "compact", "blow-up evidence", "inconclusive"
  double growth_ratio = 0.0;   // max_u(last)/max_u(first)
  bool monotone_growth = false;
  bool argmax_at_orbifold = false;
};

// Subcritical continuation with warm-started brackets; failures are recorded
// and the sweep continues.
inline ContinuationResult continuation_in_p(const RadialGeometry& geom,
                                            const KFamily& K,
                                            std::vector<double> p_grid,
                                            const SolverOptions& opts = {}) {
  if (p_grid.empty()) throw std::invalid_argument("continuation_in_p: empty grid");
  for (size_t i = 1; i < p_grid.size(); ++i)
    if (!(p_grid[i] > p_grid[i - 1]))
      throw std::invalid_argument("continuation_in_p: p grid must increase");
  ContinuationResult out;
  double warm = 0.0;
  for (double p : p_grid) {
    ContinuationStep st;
    st.p = p;
    std::optional<RadialSolution> sol;
    if (warm > 0.0) {
      // try a local bracket around the previous root first
      double lo = warm / 1.6, hi = warm * 1.6;
      for (int widen = 0; widen < 4 && !sol; ++widen) {
        const double flo =
            detail::shot_functional(shoot(geom, K, p, lo, opts, {opts.t0}));
        const double fhi =
            detail::shot_functional(shoot(geom, K, p, hi, opts, {opts.t0}));
        if ((flo > 0.0) != (fhi > 0.0)) {
          const double root = refine_bracket(geom, K, p, lo, hi, flo, fhi, opts);
          sol = verify_candidate(geom, K, p, root, opts);
          break;
        }
        lo /= 2.0;
        hi *= 2.0;
      }
    }
    if (!sol) {
      auto full = solve_bvp(geom, K, p, opts);
      if (full.solution) sol = std::move(full.solution);
    }
    if (sol) {
      st.found = true;
      st.slope = sol->shooting_parameter;
      st.max_u = sol->max_u;
      st.argmax = sol->argmax;
      st.u_center = sol->u_center;
      st.residual_sup = sol->residual_sup;
      warm = st.slope;
    }
    out.steps.push_back(st);
  }
  // classification over the found steps
  std::vector<const ContinuationStep*> ok;
  for (const auto& s : out.steps)
    if (s.found) ok.push_back(&s);
  if (ok.size() >= 2) {
    out.growth_ratio = ok.back()->max_u / ok.front()->max_u;
    out.monotone_growth = true;
    for (size_t i = 1; i < ok.size(); ++i)
      if (ok[i]->max_u < ok[i - 1]->max_u * (1.0 - 1e-9)) out.monotone_growth = false;
    out.argmax_at_orbifold = true;
    for (const auto* s : ok)
      if (s->argmax > 1.0) out.argmax_at_orbifold = false;
    if (out.growth_ratio > opts.blowup_ratio && out.monotone_growth &&
        out.argmax_at_orbifold)
      out.classification = "blow-up evidence";
    else if (out.growth_ratio <= opts.blowup_ratio)
      out.classification = "compact";
    else
      out.classification = "inconclusive";
  } else {
    out.classification = "inconclusive";
  }
  return out;
}

}  // namespace orblab
