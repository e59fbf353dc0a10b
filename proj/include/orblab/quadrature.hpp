#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "orblab/constants.hpp"

namespace orblab {

struct QuadNodes {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;  // weights
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline QuadNodes gauss_legendre(int npts) {
  if (npts < 1) throw std::invalid_argument("gauss_legendre: npts < 1");
  QuadNodes q;
  q.x.resize(npts);
  q.w.resize(npts);
  const int m = (npts + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi-style initial guess for the i-th root of P_n.
    double z = std::cos(kPi * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < npts; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = npts * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    q.x[i] = -z;
    q.x[npts - 1 - i] = z;
    q.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    q.w[npts - 1 - i] = q.w[i];
  }
  return q;
}

namespace detail {

inline double gl15_panel(const std::function<double(double)>& f, double a, double b) {
  static const QuadNodes q = gauss_legendre(15);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 15; ++i) acc += q.w[i] * f(mid + half * q.x[i]);
  return acc * half;
}

inline void adapt_rec(const std::function<double(double)>& f, double a, double b,
                      double whole, double tol, int depth, double& acc, bool& ok) {
  const double mid = 0.5 * (a + b);
  const double left = gl15_panel(f, a, mid);
  const double right = gl15_panel(f, mid, b);
  const double err = std::abs(left + right - whole);
  if (err < tol || depth > 48) {
    acc += left + right;
    if (depth > 48 && err > tol) ok = false;
    return;
  }
  adapt_rec(f, a, mid, left, 0.5 * tol, depth + 1, acc, ok);
  adapt_rec(f, mid, b, right, 0.5 * tol, depth + 1, acc, ok);
}

}  // namespace detail

struct QuadResult {
  double value = 0.0;
  bool converged = true;
};

// Adaptive composite 15-point Gauss-Legendre on [a, b].
inline QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                     double b, double tol = 1e-12) {
  const double whole = detail::gl15_panel(f, a, b);
  QuadResult r;
  const double scale = std::max(1.0, std::abs(whole));
  detail::adapt_rec(f, a, b, whole, tol * scale, 0, r.value, r.converged);
  return r;
}

// Integral over [0, inf) via r = tan(z), z in (0, pi/2).
inline QuadResult integrate_half_line(const std::function<double(double)>& f,
                                      double tol = 1e-12) {
  auto g = [&f](double z) {
    const double c = std::cos(z);
    const double r = std::tan(z);
    return f(r) / (c * c);
  };
  return integrate_adaptive(g, 1e-14, 0.5 * kPi - 1e-14, tol);
}

}  // namespace orblab
