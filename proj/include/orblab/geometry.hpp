#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "orblab/constants.hpp"

namespace orblab {

enum class GeometryKind { LebrunALE, LebrunCompact, Football };
enum class Coordinate { HatR, S, T, Theta };

enum class EndpointType { RegularCenter, OrbifoldPoint, AleEnd, RegularPole };

inline const char* to_string(GeometryKind k) {
  switch (k) {
    case GeometryKind::LebrunALE: return "lebrun_ale";
    case GeometryKind::LebrunCompact: return "lebrun_compact";
    case GeometryKind::Football: return "football";
  }
  return "?";
}

inline const char* to_string(Coordinate c) {
  switch (c) {
    case Coordinate::HatR: return "hat_r";
    case Coordinate::S: return "s";
    case Coordinate::T: return "t";
    case Coordinate::Theta: return "theta";
  }
  return "?";
}

// Metric coefficients at one radial value, in the geometry's canonical
// coordinate: g = coeff_radial dx^2 + coeff_s12 (s1^2+s2^2) + coeff_s3 s3^2,
// with {s1,s2,s3} the left-invariant coframe normalized so that the flat
// metric is dr^2 + r^2(s1^2+s2^2+s3^2). On the football, coeff_s12 and
// coeff_s3 are both sin^2(theta).
struct MetricSample {
  double radial_value = 0.0;
  double coeff_radial = 0.0;
  double coeff_s12 = 0.0;
  double coeff_s3 = 0.0;
};

// A cohomogeneity-one radial background: LeBrun ALE metric on O(-n) in the
// hat_r coordinate, its orbifold compactification in the s = 1/hat_r
// coordinate (orbifold point at s=0, regular P^1 center at s=inf), or the
// round-sphere football S^4/Gamma in the polar angle theta.
class RadialGeometry {
 public:
  static RadialGeometry lebrun_ale(int n) {
    if (n < 1) throw std::invalid_argument("lebrun_ale: n must be >= 1");
    return RadialGeometry(GeometryKind::LebrunALE, n, Coordinate::HatR);
  }
  static RadialGeometry lebrun_compact(int n) {
    if (n < 1) throw std::invalid_argument("lebrun_compact: n must be >= 1");
    return RadialGeometry(GeometryKind::LebrunCompact, n, Coordinate::S);
  }
  static RadialGeometry football(int gamma_order) {
    if (gamma_order < 2) throw std::invalid_argument("football: |Gamma| must be >= 2");
    return RadialGeometry(GeometryKind::Football, gamma_order, Coordinate::Theta);
  }
  // Round S^4 without quotient; same formulas with |Gamma| = 1.
  static RadialGeometry round_sphere() {
    return RadialGeometry(GeometryKind::Football, 1, Coordinate::Theta);
  }

  GeometryKind kind() const { return kind_; }
  int order() const { return order_; }  // n for LeBrun, |Gamma| for football
  Coordinate coordinate() const { return coord_; }

  double domain_min() const { return 0.0; }
  double domain_max() const {
    return kind_ == GeometryKind::Football ? kPi
                                           : std::numeric_limits<double>::infinity();
  }
  EndpointType endpoint_min() const {
    switch (kind_) {
      case GeometryKind::LebrunALE: return EndpointType::RegularCenter;  // P^1 bolt
      case GeometryKind::LebrunCompact: return EndpointType::OrbifoldPoint;
      case GeometryKind::Football: return EndpointType::RegularPole;
    }
    return EndpointType::RegularPole;
  }
  EndpointType endpoint_max() const {
    switch (kind_) {
      case GeometryKind::LebrunALE: return EndpointType::AleEnd;
      case GeometryKind::LebrunCompact: return EndpointType::RegularCenter;
      case GeometryKind::Football: return EndpointType::RegularPole;
    }
    return EndpointType::RegularPole;
  }

  // Vol(S^3)/|Gamma| measure constant multiplying radial integrals. For the
  // compactified LeBrun orbifold the quotient group at infinity is Z/n.
  double angular_measure() const { return kVolS3 / order_; }

  void require_interior(double x, const char* who) const {
    if (!(x > domain_min()) || !(x < domain_max())) {
      throw std::domain_error(std::string(who) + ": value " + std::to_string(x) +
                              " not interior; endpoints are " +
                              endpoint_name(endpoint_min()) + " at " +
                              std::to_string(domain_min()) + " and " +
                              endpoint_name(endpoint_max()) + " at " +
                              (kind_ == GeometryKind::Football ? std::to_string(kPi)
                                                               : std::string("inf")));
    }
  }

  static const char* endpoint_name(EndpointType t) {
    switch (t) {
      case EndpointType::RegularCenter: return "regular-center";
      case EndpointType::OrbifoldPoint: return "orbifold-point";
      case EndpointType::AleEnd: return "ALE-end";
      case EndpointType::RegularPole: return "regular-pole";
    }
    return "?";
  }

 private:
  RadialGeometry(GeometryKind k, int order, Coordinate c)
      : kind_(k), order_(order), coord_(c) {}
  GeometryKind kind_;
  int order_;
  Coordinate coord_;
};

// Closed-form metric coefficients in the geometry's canonical coordinate.
inline MetricSample metric_coeffs(const RadialGeometry& geom, double x) {
  geom.require_interior(x, "metric_coeffs");
  MetricSample m;
  m.radial_value = x;
  const double n = geom.order();
  switch (geom.kind()) {
    case GeometryKind::LebrunALE: {
      const double r2 = x * x;
      m.coeff_radial = (1.0 + r2) / (n + r2);
      m.coeff_s12 = 1.0 + r2;
      m.coeff_s3 = r2 * (n + r2) / (1.0 + r2);
      break;
    }
    case GeometryKind::LebrunCompact: {
      // conformal factor (n + hat_r^2)^-2 applied to the ALE form, s = 1/hat_r
      const double s2 = x * x;
      const double a = 1.0 + s2, b = 1.0 + n * s2;
      m.coeff_radial = a / (b * b * b);
      m.coeff_s12 = s2 * a / (b * b);
      m.coeff_s3 = s2 / (a * b);
      break;
    }
    case GeometryKind::Football: {
      const double s = std::sin(x);
      m.coeff_radial = 1.0;
      m.coeff_s12 = s * s;
      m.coeff_s3 = s * s;
      break;
    }
  }
  return m;
}

// Radial coordinate changes: s = 1/hat_r, t = log(n s^2 + 1), and inverses.
inline double coord_transform(const RadialGeometry& geom, double value,
                              Coordinate from, Coordinate to) {
  if (from == to) return value;
  if (geom.kind() == GeometryKind::Football) {
    throw std::invalid_argument("coord_transform: football uses theta only");
  }
  if (from == Coordinate::Theta || to == Coordinate::Theta) {
    throw std::invalid_argument("coord_transform: theta is not a LeBrun coordinate");
  }
  const double n = geom.order();
  // route through s
  double s;
  switch (from) {
    case Coordinate::S: s = value; break;
    case Coordinate::HatR:
      if (!(value > 0.0)) throw std::domain_error("coord_transform: hat_r must be > 0");
      s = 1.0 / value;
      break;
    case Coordinate::T:
      if (!(value >= 0.0)) throw std::domain_error("coord_transform: t must be >= 0");
      s = std::sqrt(std::expm1(value) / n);
      break;
    default: throw std::invalid_argument("coord_transform: bad source");
  }
  switch (to) {
    case Coordinate::S: return s;
    case Coordinate::HatR:
      if (!(s > 0.0)) throw std::domain_error("coord_transform: s=0 maps to hat_r=inf");
      return 1.0 / s;
    case Coordinate::T: return std::log1p(n * s * s);
    default: throw std::invalid_argument("coord_transform: bad target");
  }
}

// Closed-form scalar curvature: 0 for the scalar-flat ALE family,
// 24 n (n + hat_r^2)/(1 + hat_r^2) for the compactification, 12 on S^4/Gamma.
inline double scalar_curvature(const RadialGeometry& geom, double x) {
  geom.require_interior(x, "scalar_curvature");
  switch (geom.kind()) {
    case GeometryKind::LebrunALE: return 0.0;
    case GeometryKind::LebrunCompact: {
      const double n = geom.order(), s2 = x * x;
      return 24.0 * n * (1.0 + n * s2) / (1.0 + s2);
    }
    case GeometryKind::Football: return 12.0;
  }
  return 0.0;
}

inline double scalar_curvature(const RadialGeometry& geom, double value, Coordinate c) {
  return scalar_curvature(geom, coord_transform(geom, value, c, geom.coordinate()));
}

// sqrt(det g) restricted to the radial slice, i.e.
// sqrt(coeff_radial) * coeff_s12 * sqrt(coeff_s3). The fixed S^3/Gamma
// measure constant Vol(S^3)/|Gamma| is NOT included (see angular_measure()).
inline double volume_density(const RadialGeometry& geom, double x) {
  geom.require_interior(x, "volume_density");
  const double n = geom.order();
  switch (geom.kind()) {
    case GeometryKind::LebrunALE:
      return x * (1.0 + x * x);
    case GeometryKind::LebrunCompact: {
      const double s2 = x * x, b = 1.0 + n * s2;
      return x * s2 * (1.0 + s2) / (b * b * b * b);
    }
    case GeometryKind::Football: {
      const double s = std::sin(x);
      return s * s * s;
    }
  }
  return 0.0;
}

// Inverse radial metric component g^{xx} = 1/coeff_radial.
inline double inverse_radial_coeff(const RadialGeometry& geom, double x) {
  const double n = geom.order();
  switch (geom.kind()) {
    case GeometryKind::LebrunALE: return (n + x * x) / (1.0 + x * x);
    case GeometryKind::LebrunCompact: {
      const double s2 = x * x, b = 1.0 + n * s2;
      return b * b * b / (1.0 + s2);
    }
    case GeometryKind::Football: return 1.0;
  }
  return 1.0;
}

// First-order coefficient of the radial Laplacian,
// Delta u = g^{xx} u'' + lap_first_order * u'  (trace-of-Hessian sign).
inline double lap_first_order(const RadialGeometry& geom, double x) {
  const double n = geom.order();
  switch (geom.kind()) {
    case GeometryKind::LebrunALE:
      return (n + 3.0 * x * x) / (x * (1.0 + x * x));
    case GeometryKind::LebrunCompact: {
      const double s2 = x * x, b = 1.0 + n * s2;
      return (3.0 + n * s2) * b * b / (x * (1.0 + s2));
    }
    case GeometryKind::Football:
      return 3.0 / std::tan(x);
  }
  return 0.0;
}

// Radial Laplacian from exact derivative values.
inline double radial_laplacian(const RadialGeometry& geom, double x, double du,
                               double d2u) {
  geom.require_interior(x, "radial_laplacian");
  return inverse_radial_coeff(geom, x) * d2u + lap_first_order(geom, x) * du;
}

// Radial Laplacian of a sampled function by 4th-order central differences.
template <class F>
double radial_laplacian(const RadialGeometry& geom, F&& u, double x,
                        double step = 0.0) {
  geom.require_interior(x, "radial_laplacian");
  double h = step > 0.0 ? step : 2e-3 * (1.0 + std::abs(x));
  const double margin = std::min(x - geom.domain_min(), geom.domain_max() - x);
  if (2.0 * h >= margin) h = 0.25 * margin;
  const double um2 = u(x - 2 * h), um1 = u(x - h), u0 = u(x), up1 = u(x + h),
               up2 = u(x + 2 * h);
  const double du = (um2 - 8 * um1 + 8 * up1 - up2) / (12 * h);
  const double d2u = (-um2 + 16 * um1 - 30 * u0 + 16 * up1 - up2) / (12 * h * h);
  return radial_laplacian(geom, x, du, d2u);
}

// Second-derivative coefficient of the ALE Laplacian in the t coordinate:
// Delta_{g_ALE} u = W_n(t) u''(t), no first-order term.
inline double ale_laplacian_t_coeff(int n, double t) {
  const double em = std::exp(-t);
  const double om = -std::expm1(-t);  // 1 - e^-t
  return 4.0 * om * om * om / (em * (1.0 + (n - 1.0) * em));
}

}  // namespace orblab
