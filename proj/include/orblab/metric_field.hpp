#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "orblab/geometry.hpp"

namespace orblab {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

// An ALE radial metric A(r) dr^2 + B(r)(s1^2+s2^2) + C(r) s3^2 in the chart
// where r = |z|. Euclidean space is A=1, B=C=r^2.
struct RadialMetricField {
  std::function<double(double)> A, B, C;
  double r_min = 5.0;
  int gamma_order = 1;  // |Gamma| of the ALE end (diagnostic only)
};

inline RadialMetricField euclidean_field() {
  return {[](double) { return 1.0; }, [](double r) { return r * r; },
          [](double r) { return r * r; }, 0.0, 1};
}

inline RadialMetricField lebrun_ale_field(int n) {
  const double dn = n;
  return {[dn](double r) { return (1.0 + r * r) / (dn + r * r); },
          [](double r) { return 1.0 + r * r; },
          [dn](double r) { return r * r * (dn + r * r) / (1.0 + r * r); },
          5.0, n};
}

// Compactified LeBrun coefficients expressed in the hat_r coordinate.
inline RadialMetricField lebrun_compact_field_hat_r(int n) {
  const double dn = n;
  return {[dn](double r) {
            const double f = dn + r * r;
            return (1.0 + r * r) / (f * f * f);
          },
          [dn](double r) {
            const double f = dn + r * r;
            return (1.0 + r * r) / (f * f);
          },
          [dn](double r) { return r * r / ((1.0 + r * r) * (dn + r * r)); },
          0.0, n};
}

namespace detail {

// Orthogonal frame on the 3-sphere of radius |z|: X.z = 0, |X_i| = |z|,
// X3 along the Hopf circle. Dual coframe gives s_i = X_i^flat / |z|^2.
inline Vec4 hopf_x1(const Vec4& z) { return {-z[2], z[3], z[0], -z[1]}; }
inline Vec4 hopf_x2(const Vec4& z) { return {-z[3], -z[2], z[1], z[0]}; }
inline Vec4 hopf_x3(const Vec4& z) { return {-z[1], z[0], -z[3], z[2]}; }

}  // namespace detail

// Cartesian components g_ij(z) assembled from the radial closed forms:
// g = A zz^T/r^2 + B (X1 X1^T + X2 X2^T)/r^4 + C X3 X3^T / r^4.
inline Mat4 cartesian_metric_components(const RadialMetricField& field, const Vec4& z) {
  const double r2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
  const double r = std::sqrt(r2);
  if (r < field.r_min)
    throw std::domain_error("cartesian_metric_components: |z| below r_min");
  const double a = field.A(r) / r2;
  const double b = field.B(r) / (r2 * r2);
  const double c = field.C(r) / (r2 * r2);
  const Vec4 x1 = detail::hopf_x1(z), x2 = detail::hopf_x2(z), x3 = detail::hopf_x3(z);
  Mat4 g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      g[i][j] = a * z[i] * z[j] + b * (x1[i] * x1[j] + x2[i] * x2[j]) +
                c * x3[i] * x3[j];
  return g;
}

}  // namespace orblab
