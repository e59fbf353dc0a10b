#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "orblab/constants.hpp"
#include "orblab/quadrature.hpp"

namespace orblab {

// Standard bubble U_c(y) = (n(n-2)/c)^{(n-2)/4} (1+|y|^2)^{(2-n)/2}, the
// entire solution of Delta U + c U^{(n+2)/(n-2)} = 0; dimension 4 throughout
// evaluation: U_c = sqrt(8/c) / (1 + r^2).
struct BubbleProfile {
  double c = 8.0;
  explicit BubbleProfile(double c_) : c(c_) {
    if (!(c > 0.0)) throw std::invalid_argument("BubbleProfile: c must be > 0");
  }
  double value(double r) const { return std::sqrt(8.0 / c) / (1.0 + r * r); }
  double deriv(double r) const {
    const double d = 1.0 + r * r;
    return std::sqrt(8.0 / c) * (-2.0 * r) / (d * d);
  }
  double second(double r) const {
    const double d = 1.0 + r * r;
    return std::sqrt(8.0 / c) * (8.0 * r * r / (d * d * d) - 2.0 / (d * d));
  }
};

inline double bubble_eval(double c, double y_radius) {
  return BubbleProfile(c).value(y_radius);
}

// max |Delta U + c U^3| over the grid, flat radial Laplacian u'' + (3/r) u',
// analytic derivatives. At r = 0 the Laplacian limit is 4 u''(0).
template <class F1, class F2, class F3>
double flat_cubic_residual(F1&& value, F2&& deriv, F3&& second, double c,
                           std::span<const double> grid) {
  double worst = 0.0;
  for (double r : grid) {
    const double u = value(r);
    const double lap = r == 0.0 ? 4.0 * second(0.0) : second(r) + 3.0 * deriv(r) / r;
    worst = std::max(worst, std::abs(lap + c * u * u * u));
  }
  return worst;
}

inline double bubble_residual(double c, std::span<const double> grid) {
  BubbleProfile b(c);
  return flat_cubic_residual([&b](double r) { return b.value(r); },
                             [&b](double r) { return b.deriv(r); },
                             [&b](double r) { return b.second(r); }, c, grid);
}

// Sobolev quotient Q(S^n) = n(n-2)/4 * Vol(S^n)^{2/n}.
inline double sobolev_quotient(int n) {
  if (n < 3) throw std::invalid_argument("sobolev_quotient: n >= 3");
  return n * (n - 2.0) / 4.0 * std::pow(sphere_volume(n), 2.0 / n);
}

struct HatConstants {
  double c0_hat = 0.0;  // 4n(n-1) (int (1+r^2)^-n)^{2/n}
  double c2_hat = 0.0;  // int r^2(1+r^2)^-n / (2n int (1+r^2)^-n)
  double d1_hat = 0.0;  // 2n int r^n (1+r^2)^-(n+1) / ((n-2) int (1+r^2)^-n)
  bool converged = true;
};

// The three radial integrals behind the test-function energy expansion,
// computed over R^n by adaptive quadrature with the r = tan(z) substitution.
inline HatConstants hat_constants(int n = 4) {
  if (n < 3) throw std::invalid_argument("hat_constants: n >= 3");
  const double voln1 = sphere_volume(n - 1);
  auto radial = [&](auto&& f) {
    return integrate_half_line(
        [&f, n](double r) { return f(r) * std::pow(r, n - 1.0); }, 1e-12);
  };
  const auto i0 = radial([n](double r) { return std::pow(1.0 + r * r, -double(n)); });
  const auto i2 =
      radial([n](double r) { return r * r * std::pow(1.0 + r * r, -double(n)); });
  const auto in = radial([n](double r) {
    return std::pow(r, double(n)) * std::pow(1.0 + r * r, -double(n + 1));
  });
  HatConstants h;
  h.converged = i0.converged && i2.converged && in.converged;
  if (!h.converged) return h;
  const double I0 = voln1 * i0.value, I2 = voln1 * i2.value, In = voln1 * in.value;
  h.c0_hat = 4.0 * n * (n - 1.0) * std::pow(I0, 2.0 / n);
  h.c2_hat = I2 / (2.0 * n * I0);
  h.d1_hat = 2.0 * n * In / ((n - 2.0) * I0);
  return h;
}

}  // namespace orblab
