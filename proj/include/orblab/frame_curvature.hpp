#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "orblab/geometry.hpp"

namespace orblab {

// Independent scalar-curvature oracle for diagonal cohomogeneity-one metrics
//   g = f0^2 dx^2 + f1^2 s1^2 + f2^2 s2^2 + f3^2 s3^2
// via the orthonormal-coframe structure equations (ds_i = -2 s_j ^ s_k for the
// normalization where flat space is dr^2 + r^2(s1^2+s2^2+s3^2)). With
// A_i = f_i'/(f0 f_i) (arclength log-derivative) and
// P_i = (f_i^2 - f_j^2 - f_k^2)/(f1 f2 f3), the sectional curvatures are
//   K(0,i) = -(d^2 f_i/d eta^2)/f_i,
//   K(j,k) = -( 2 f_i P_i/(f_j f_k) + A_j A_k + P_j P_k ),  i = third index,
// and R = 2 * sum over the six planes. Derivatives of the four coefficient
// functions are taken by 4th-order central differences.
struct FrameCoefficients {
  // squared coefficients, as produced by metric_coeffs
  std::function<double(double)> radial, s12a, s12b, s3;
};

inline double frame_scalar_curvature(const FrameCoefficients& c, double x, double h) {
  auto d1 = [&](const std::function<double(double)>& f) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
  };
  auto d2 = [&](const std::function<double(double)>& f) {
    return (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) /
           (12 * h * h);
  };
  const std::function<double(double)> fs[4] = {
      [&c](double v) { return std::sqrt(c.radial(v)); },
      [&c](double v) { return std::sqrt(c.s12a(v)); },
      [&c](double v) { return std::sqrt(c.s12b(v)); },
      [&c](double v) { return std::sqrt(c.s3(v)); }};
  double f[4], fp[4], fpp[4];
  for (int i = 0; i < 4; ++i) {
    f[i] = fs[i](x);
    fp[i] = d1(fs[i]);
    fpp[i] = d2(fs[i]);
  }
  const double f0 = f[0], f0p = fp[0];
  double A[4], Keta[4];  // A_i and K(0,i) for i = 1..3
  for (int i = 1; i < 4; ++i) {
    A[i] = fp[i] / (f0 * f[i]);
    const double d2eta = (fpp[i] * f0 - fp[i] * f0p) / (f0 * f0 * f0);
    Keta[i] = -d2eta / f[i];
  }
  const double prod = f[1] * f[2] * f[3];
  double P[4];
  P[1] = (f[1] * f[1] - f[2] * f[2] - f[3] * f[3]) / prod;
  P[2] = (f[2] * f[2] - f[3] * f[3] - f[1] * f[1]) / prod;
  P[3] = (f[3] * f[3] - f[1] * f[1] - f[2] * f[2]) / prod;
  auto Kspatial = [&](int j, int k, int i) {
    return -(2.0 * f[i] * P[i] / (f[j] * f[k]) + A[j] * A[k] + P[j] * P[k]);
  };
  const double sum = Keta[1] + Keta[2] + Keta[3] + Kspatial(1, 2, 3) +
                     Kspatial(1, 3, 2) + Kspatial(2, 3, 1);
  return 2.0 * sum;
}

// Frame-based finite-difference scalar curvature of a RadialGeometry.
inline double numeric_scalar_curvature(const RadialGeometry& geom, double x,
                                       double step = 0.0) {
  geom.require_interior(x, "numeric_scalar_curvature");
  double h = step > 0.0 ? step : 1e-3 * (1.0 + std::abs(x));
  const double margin = std::min(x - geom.domain_min(), geom.domain_max() - x);
  if (2.0 * h >= margin) {
    if (step > 0.0) throw std::domain_error("numeric_scalar_curvature: margin < 2*step");
    h = 0.25 * margin;
  }
  FrameCoefficients c{
      [&geom](double v) { return metric_coeffs(geom, v).coeff_radial; },
      [&geom](double v) { return metric_coeffs(geom, v).coeff_s12; },
      [&geom](double v) { return metric_coeffs(geom, v).coeff_s12; },
      [&geom](double v) { return metric_coeffs(geom, v).coeff_s3; }};
  return frame_scalar_curvature(c, x, h);
}

}  // namespace orblab
