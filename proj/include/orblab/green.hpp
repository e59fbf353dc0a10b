#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "orblab/fitting.hpp"
#include "orblab/geometry.hpp"
#include "orblab/metric_field.hpp"
#include "orblab/rk45.hpp"

namespace orblab {

// Radial Green's function of the conformal Laplacian on the compactified
// LeBrun orbifold: L psi = 0 with psi ~ s^-2 at the orbifold point and psi
// bounded (psi' -> 0) at the regular P^1 center. In self-adjoint form the
// equation is (p(s) psi')' = q(s) psi with p = s^3/(1+n s^2) and
// q = 4 n s^3/(1+n s^2)^3; in the t coordinate it becomes
// ((1-e^-t)^2 psi_t)_t = e^-t (1-e^-t) psi, which is what gets integrated.
struct GreensFunctionSolution {
  int n = 1;
  std::vector<double> s_grid;   // sample locations, ascending
  std::vector<double> psi;      // psi values on s_grid
  std::vector<double> dpsi_ds;  // d psi / d s on s_grid
  double leading_coefficient = 1.0;  // fitted coefficient of s^-2
  double regular_term_s = 0.0;       // fitted constant term in the s expansion
  double mix = 0.0;                  // regular-basis admixture from the shoot
  double terminal_slope = 0.0;       // psi_t at the far end (should be ~0)

  // Frobenius series data (series in s^2, valid for s <= series_s_max)
  double series_s_max = 0.05;
  std::vector<double> sing_coeffs;  // psi_sing = s^-2 * sum a_k s^{2k}, a_1 = 0
  std::vector<double> reg_coeffs;   // psi_reg  = sum b_k s^{2k}, b_0 = 1

  double eval_series(double s) const {
    const double s2 = s * s;
    double acc_s = 0.0, acc_r = 0.0, pw = 1.0;
    for (size_t k = 0; k < sing_coeffs.size(); ++k) {
      acc_s += sing_coeffs[k] * pw;
      acc_r += reg_coeffs[k] * pw;
      pw *= s2;
    }
    return acc_s / s2 + mix * acc_r;
  }
  double eval_series_deriv(double s) const {
    const double s2 = s * s;
    double acc_s = 0.0, acc_r = 0.0;
    double s_pow = 1.0 / (s2 * s);  // d/ds s^{2k-2} = (2k-2) s^{2k-3}
    for (size_t k = 0; k < sing_coeffs.size(); ++k) {
      acc_s += sing_coeffs[k] * (2.0 * k - 2.0) * s_pow;
      s_pow *= s2;
    }
    double r_pow = s;  // d/ds s^{2k} = 2k s^{2k-1}
    for (size_t k = 1; k < reg_coeffs.size(); ++k) {
      acc_r += reg_coeffs[k] * 2.0 * k * r_pow;
      r_pow *= s2;
    }
    return acc_s + mix * acc_r;
  }

  // Value at arbitrary s: series region or cubic Hermite on the sample grid.
  double eval(double s) const {
    if (s <= series_s_max) return eval_series(s);
    auto it = std::upper_bound(s_grid.begin(), s_grid.end(), s);
    if (it == s_grid.end()) --it;
    size_t hi = std::max<size_t>(1, it - s_grid.begin());
    if (hi >= s_grid.size()) hi = s_grid.size() - 1;
    const size_t lo = hi - 1;
    const double h = s_grid[hi] - s_grid[lo];
    const double u = (s - s_grid[lo]) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return h00 * psi[lo] + h * h10 * dpsi_ds[lo] + h01 * psi[hi] +
           h * h11 * dpsi_ds[hi];
  }
};

namespace detail {

// Frobenius recurrence for (p psi')' = q psi about s = 0 with indicial root
// rho in {-2, 0}: coefficients of psi = sum_k c_k s^{2k+rho}. Matching powers
// gives (2j+rho+2)(2j+rho) c_j =
//   4n sum_{k<j} Tt_{j-1-k} c_k - (2j+rho+2) sum_{k<j} (-n)^{j-k} (2k+rho) c_k,
// with Tt_m = (m+1)(m+2)/2 (-n)^m from expanding (1+n s^2)^{-3}.
inline std::vector<double> frobenius_coeffs(int n, int rho, int terms) {
  std::vector<double> c(terms, 0.0);
  c[0] = 1.0;
  const double dn = n;
  for (int j = 1; j < terms; ++j) {
    const double lead = (2.0 * j + rho + 2.0) * (2.0 * j + rho);
    double rhs = 0.0;
    for (int k = 0; k < j; ++k) {
      const int m = j - 1 - k;
      const double tt = 0.5 * (m + 1.0) * (m + 2.0) * std::pow(-dn, m);
      rhs += 4.0 * dn * tt * c[k];
      rhs -= (2.0 * j + rho + 2.0) * std::pow(-dn, j - k) * (2.0 * k + rho) * c[k];
    }
    if (std::abs(lead) < 1e-14) {
      // resonance at j=1 for rho=-2: consistent (rhs = 0), coefficient free;
      // fixing it to 0 defines the pure singular basis element
      if (std::abs(rhs) > 1e-10 * std::abs(c[0]))
        throw std::runtime_error("frobenius_coeffs: inconsistent resonance");
      c[j] = 0.0;
    } else {
      c[j] = rhs / lead;
    }
  }
  return c;
}

}  // namespace detail

struct GreenOptions {
  double series_s_max = 0.0;  // <= 0 picks 0.25/sqrt(n), inside the n s^2 < 1 disk
  int series_terms = 26;
  double t_end = 25.0;
  double rtol = 1e-12;
  double atol = 1e-14;
};

// Default sample grid: log-spaced s values covering the verification range.
inline std::vector<double> default_green_grid(double s_lo = 5e-3, double s_hi = 200.0,
                                              int points = 2400) {
  std::vector<double> g(points);
  const double l0 = std::log(s_lo), l1 = std::log(s_hi);
  for (int i = 0; i < points; ++i)
    g[i] = std::exp(l0 + (l1 - l0) * i / (points - 1.0));
  return g;
}

inline GreensFunctionSolution green_function_radial(
    const RadialGeometry& geom, std::vector<double> s_samples = {},
    const GreenOptions& opts = {}) {
  if (geom.kind() != GeometryKind::LebrunCompact)
    throw std::invalid_argument(
        "green_function_radial: geometry must be the compact LeBrun orbifold");
  const int n = geom.order();
  if (s_samples.empty()) s_samples = default_green_grid();
  if (!std::is_sorted(s_samples.begin(), s_samples.end()) || s_samples.front() <= 0.0)
    throw std::invalid_argument("green_function_radial: samples must be ascending, > 0");
  GreensFunctionSolution sol;
  sol.n = n;
  sol.series_s_max =
      opts.series_s_max > 0.0 ? opts.series_s_max : 0.25 / std::sqrt(double(n));
  sol.sing_coeffs = detail::frobenius_coeffs(n, -2, opts.series_terms);
  sol.reg_coeffs = detail::frobenius_coeffs(n, 0, opts.series_terms);

  // t-form system y = (psi, w), w = (1-e^-t)^2 psi_t; w = n s^3 psi'/(2(1+n s^2)).
  auto rhs = [](double t, const State2& y) -> State2 {
    const double om = -std::expm1(-t);
    const double em = std::exp(-t);
    return {y[1] / (om * om), em * om * y[0]};
  };
  auto w_of = [n](double s, double dpsi) {
    return n * s * s * s * dpsi / (2.0 * (1.0 + n * s * s));
  };
  const double s0 = sol.series_s_max;
  const double t0 = std::log1p(double(n) * s0 * s0);

  auto series_eval = [&](const std::vector<double>& c, int rho, double s,
                         double& v, double& dv) {
    const double s2 = s * s;
    v = 0.0;
    dv = 0.0;
    for (size_t k = 0; k < c.size(); ++k) {
      const double e = 2.0 * k + rho;
      v += c[k] * std::pow(s, e);
      if (e != 0.0) dv += c[k] * e * std::pow(s, e - 1.0);
    }
  };

  // integrate both basis solutions; the ODE is linear, so the final solution
  // is the exact linear combination of the two trajectories
  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  oo.h_max = 0.25;
  std::vector<double> t_checkpoints;
  std::vector<size_t> grid_index;  // which s_samples entries lie beyond s0
  for (size_t i = 0; i < s_samples.size(); ++i) {
    if (s_samples[i] > s0) {
      t_checkpoints.push_back(std::log1p(double(n) * s_samples[i] * s_samples[i]));
      grid_index.push_back(i);
    }
  }
  const double t_end = std::max(opts.t_end, t_checkpoints.empty()
                                                ? opts.t_end
                                                : t_checkpoints.back() + 1.0);

  double vs, dvs, vr, dvr;
  series_eval(sol.sing_coeffs, -2, s0, vs, dvs);
  series_eval(sol.reg_coeffs, 0, s0, vr, dvr);
  const OdeResult sing =
      integrate_rk45(rhs, t0, {vs, w_of(s0, dvs)}, t_end, t_checkpoints, oo);
  const OdeResult reg =
      integrate_rk45(rhs, t0, {vr, w_of(s0, dvr)}, t_end, t_checkpoints, oo);
  if (sing.step_underflow || reg.step_underflow)
    throw std::runtime_error("green_function_radial: integrator failure");
  if (std::abs(reg.y_end[1]) < 1e-300)
    throw std::runtime_error(
        "green_function_radial: shooting failure, regular basis has zero "
        "terminal flux");
  sol.mix = -sing.y_end[1] / reg.y_end[1];
  sol.terminal_slope = sing.y_end[1] + sol.mix * reg.y_end[1];

  sol.s_grid = std::move(s_samples);
  sol.psi.resize(sol.s_grid.size());
  sol.dpsi_ds.resize(sol.s_grid.size());
  size_t cp = 0;
  for (size_t i = 0; i < sol.s_grid.size(); ++i) {
    const double s = sol.s_grid[i];
    if (s <= s0) {
      sol.psi[i] = sol.eval_series(s);
      sol.dpsi_ds[i] = sol.eval_series_deriv(s);
    } else {
      const State2 ys = sing.at[cp].y, yr = reg.at[cp].y;
      ++cp;
      sol.psi[i] = ys[0] + sol.mix * yr[0];
      const double w = ys[1] + sol.mix * yr[1];
      sol.dpsi_ds[i] = w * 2.0 * (1.0 + n * s * s) / (n * s * s * s);
    }
  }

  // leading coefficient and regular term from small-s fits
  {
    std::vector<double> xs, ys, hs;
    for (double s = 0.5 * s0; s <= s0 * 1.0001; s += 0.1 * s0) {
      xs.push_back(s * s);
      ys.push_back(sol.eval_series(s) * s * s);
    }
    auto lead = fit_linear(xs, ys, {[](double) { return 1.0; },
                                    [](double v) { return v; }});
    sol.leading_coefficient = lead.coeffs[0];
    std::vector<double> hs_y;
    for (double s = 0.5 * s0; s <= s0 * 1.0001; s += 0.1 * s0) {
      hs.push_back(s * s);
      hs_y.push_back(sol.eval_series(s) - sol.leading_coefficient / (s * s));
    }
    auto regt = fit_linear(hs, hs_y, {[](double) { return 1.0; },
                                      [](double v) { return v; }});
    sol.regular_term_s = regt.coeffs[0];
  }
  return sol;
}

// Conformal blow-up ghat = psi^2 gcheck as an ALE radial metric field in the
// hat_r chart; with the exact psi = s^-2 + n this is the ALE LeBrun metric.
inline RadialMetricField conformal_blowup(const RadialGeometry& geom,
                                          const GreensFunctionSolution& psi) {
  if (geom.kind() != GeometryKind::LebrunCompact)
    throw std::invalid_argument("conformal_blowup: expects the compact orbifold");
  const int n = geom.order();
  auto base = lebrun_compact_field_hat_r(n);
  auto psi2 = [psi](double r) {
    const double v = psi.eval(1.0 / r);
    return v * v;
  };
  RadialMetricField f;
  f.r_min = 5.0;
  f.gamma_order = n;
  f.A = [base, psi2](double r) { return psi2(r) * base.A(r); };
  f.B = [base, psi2](double r) { return psi2(r) * base.B(r); };
  f.C = [base, psi2](double r) { return psi2(r) * base.C(r); };
  return f;
}

}  // namespace orblab
