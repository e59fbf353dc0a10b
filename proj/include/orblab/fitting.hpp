#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace orblab {

struct LinearFit {
  std::vector<double> coeffs;  // one per basis column
  double residual_rms = 0.0;   // rms of data-space residuals
  double r_squared = 1.0;
};

// Least squares y ~ sum_k c_k * basis[k](x) via normal equations (few columns).
inline LinearFit fit_linear(std::span<const double> x, std::span<const double> y,
                            const std::vector<std::function<double(double)>>& basis) {
  const size_t m = x.size(), k = basis.size();
  if (m != y.size() || m < k) throw std::invalid_argument("fit_linear: bad sizes");
  std::vector<double> ata(k * k, 0.0), aty(k, 0.0);
  for (size_t i = 0; i < m; ++i) {
    std::vector<double> row(k);
    for (size_t j = 0; j < k; ++j) row[j] = basis[j](x[i]);
    for (size_t j = 0; j < k; ++j) {
      aty[j] += row[j] * y[i];
      for (size_t l = 0; l < k; ++l) ata[j * k + l] += row[j] * row[l];
    }
  }
  // Gaussian elimination with partial pivoting.
  std::vector<double> a = ata, b = aty;
  for (size_t col = 0; col < k; ++col) {
    size_t piv = col;
    for (size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r * k + col]) > std::abs(a[piv * k + col])) piv = r;
    if (piv != col) {
      for (size_t c = 0; c < k; ++c) std::swap(a[col * k + c], a[piv * k + c]);
      std::swap(b[col], b[piv]);
    }
    const double d = a[col * k + col];
    if (d == 0.0) throw std::runtime_error("fit_linear: singular normal equations");
    for (size_t r = col + 1; r < k; ++r) {
      const double f = a[r * k + col] / d;
      for (size_t c = col; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
      b[r] -= f * b[col];
    }
  }
  LinearFit fit;
  fit.coeffs.assign(k, 0.0);
  for (size_t col = k; col-- > 0;) {
    double s = b[col];
    for (size_t c = col + 1; c < k; ++c) s -= a[col * k + c] * fit.coeffs[c];
    fit.coeffs[col] = s / a[col * k + col];
  }
  double ss_res = 0.0, ss_tot = 0.0, mean = 0.0;
  for (size_t i = 0; i < m; ++i) mean += y[i];
  mean /= m;
  for (size_t i = 0; i < m; ++i) {
    double pred = 0.0;
    for (size_t j = 0; j < k; ++j) pred += fit.coeffs[j] * basis[j](x[i]);
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  fit.residual_rms = std::sqrt(ss_res / m);
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

// Fit y = c0 + c1 * x^(-2); returns {c0, c1}.
inline LinearFit fit_inverse_square(std::span<const double> x, std::span<const double> y) {
  return fit_linear(x, y, {[](double) { return 1.0; },
                           [](double v) { return 1.0 / (v * v); }});
}

// Log-log slope of |y - y_inf| vs x; returns the decay order (positive).
inline double fit_decay_order(std::span<const double> x, std::span<const double> y,
                              double y_inf) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i) {
    const double d = std::abs(y[i] - y_inf);
    if (d > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(d));
    }
  }
  if (lx.size() < 2) throw std::runtime_error("fit_decay_order: degenerate data");
  auto f = fit_linear(lx, ly, {[](double) { return 1.0; },
                               [](double v) { return v; }});
  return -f.coeffs[1];
}

}  // namespace orblab
