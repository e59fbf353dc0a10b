#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "orblab/constants.hpp"
#include "orblab/fitting.hpp"
#include "orblab/metric_field.hpp"
#include "orblab/quadrature.hpp"

namespace orblab {

struct MassOptions {
  int nodes_theta = 32;  // product Gauss-Legendre on the S^3 Euler angles
  int nodes_phi = 32;
  int nodes_psi = 32;
  double fd_step_rel = 1e-3;     // h = fd_step_rel * r, 4th-order central
  double fit_tolerance = 1e-3;   // acceptance threshold on fit residual rms
  double node_rotation = 0.0;    // rotate the node set (quadrature sanity knob)
};

struct MassEstimate {
  std::vector<double> radii;
  std::vector<double> flux;  // normalized mass integrand per radius
  double extrapolated = 0.0;
  double fit_coefficient = 0.0;  // c in m + c r^-2
  std::string fit_model;
  double fit_residual = 0.0;
  double extrapolated_quartic = 0.0;  // secondary model with a c2 r^-4 term
  bool converged = true;
};

namespace detail {

// Euler-angle chart of S^3 (Hopf form): period 2pi in phi, 4pi in psi,
// measure sin(theta)/8 dtheta dphi dpsi, total 2 pi^2.
inline Vec4 s3_point(double theta, double phi, double psi) {
  const double ct = std::cos(0.5 * theta), st = std::sin(0.5 * theta);
  return {ct * std::cos(0.5 * (psi + phi)), ct * std::sin(0.5 * (psi + phi)),
          st * std::cos(0.5 * (psi - phi)), st * std::sin(0.5 * (psi - phi))};
}

// Sum_{i,j} (d_i g_ij - d_j g_ii) nu_j at z, derivatives by 4th-order FD.
inline double adm_integrand(const RadialMetricField& field, const Vec4& z, double h) {
  Mat4 dg[4];  // dg[k] = d_k g
  for (int k = 0; k < 4; ++k) {
    Vec4 zp = z, zm = z, zp2 = z, zm2 = z;
    zp[k] += h;
    zm[k] -= h;
    zp2[k] += 2 * h;
    zm2[k] -= 2 * h;
    const Mat4 gp = cartesian_metric_components(field, zp);
    const Mat4 gm = cartesian_metric_components(field, zm);
    const Mat4 gp2 = cartesian_metric_components(field, zp2);
    const Mat4 gm2 = cartesian_metric_components(field, zm2);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        dg[k][i][j] =
            (gm2[i][j] - 8 * gm[i][j] + 8 * gp[i][j] - gp2[i][j]) / (12 * h);
  }
  const double r = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3]);
  double acc = 0.0;
  for (int j = 0; j < 4; ++j) {
    double term = 0.0;
    for (int i = 0; i < 4; ++i) term += dg[i][i][j] - dg[j][i][i];
    acc += term * z[j] / r;
  }
  return acc;
}

inline Vec4 rotate_01(const Vec4& z, double angle) {
  if (angle == 0.0) return z;
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * z[0] - s * z[1], s * z[0] + c * z[1], z[2], z[3]};
}

}  // namespace detail

// Flux m(r) = (1/Vol(S^3)) * integral over the full 3-sphere of radius r of
// the ADM integrand (equals the |Gamma| * S_r/Gamma normalization for a
// Gamma-invariant integrand).
inline double adm_flux(const RadialMetricField& field, double r,
                       const MassOptions& opts = {}) {
  if (r < field.r_min + 2.1 * opts.fd_step_rel * r)
    throw std::domain_error("adm_flux: radius too close to r_min for the FD stencil");
  const QuadNodes qt = gauss_legendre(opts.nodes_theta);
  const QuadNodes qf = gauss_legendre(opts.nodes_phi);
  const QuadNodes qp = gauss_legendre(opts.nodes_psi);
  const double h = opts.fd_step_rel * r;
  double acc = 0.0;
  for (int it = 0; it < opts.nodes_theta; ++it) {
    const double theta = 0.5 * kPi * (qt.x[it] + 1.0);
    const double wt = 0.5 * kPi * qt.w[it] * std::sin(theta) / 8.0;
    for (int ifi = 0; ifi < opts.nodes_phi; ++ifi) {
      const double phi = kPi * (qf.x[ifi] + 1.0);
      const double wf = kPi * qf.w[ifi];
      double inner = 0.0;
      for (int ip = 0; ip < opts.nodes_psi; ++ip) {
        const double psi = 2.0 * kPi * (qp.x[ip] + 1.0);
        const double wp = 2.0 * kPi * qp.w[ip];
        Vec4 zu = detail::s3_point(theta, phi, psi);
        zu = detail::rotate_01(zu, opts.node_rotation);
        const Vec4 z = {r * zu[0], r * zu[1], r * zu[2], r * zu[3]};
        inner += wp * detail::adm_integrand(field, z, h);
      }
      acc += wt * wf * inner;
    }
  }
  return acc * r * r * r / kVolS3;
}

// Boundary-flux ADM mass with m + c r^-2 extrapolation over the given radii.
inline MassEstimate adm_mass(const RadialMetricField& field,
                             std::vector<double> radii, const MassOptions& opts = {}) {
  if (radii.size() < 3) throw std::invalid_argument("adm_mass: need >= 3 radii");
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("adm_mass: radii must be strictly increasing");
  MassEstimate est;
  est.radii = std::move(radii);
  est.flux.reserve(est.radii.size());
  for (double r : est.radii) est.flux.push_back(adm_flux(field, r, opts));
  const auto fit = fit_inverse_square(est.radii, est.flux);
  est.extrapolated = fit.coeffs[0];
  est.fit_coefficient = fit.coeffs[1];
  est.fit_model = "m + c*r^-2";
  const double scale = std::max(1.0, std::abs(est.extrapolated));
  est.fit_residual = fit.residual_rms / scale;
  if (est.radii.size() >= 4) {
    const auto fit4 = fit_linear(
        est.radii, est.flux,
        {[](double) { return 1.0; }, [](double v) { return 1.0 / (v * v); },
         [](double v) { return 1.0 / (v * v * v * v); }});
    est.extrapolated_quartic = fit4.coeffs[0];
  } else {
    est.extrapolated_quartic = est.extrapolated;
  }
  est.converged = est.fit_residual <= opts.fit_tolerance;
  return est;
}

inline MassEstimate adm_mass(const RadialGeometry& geom, std::vector<double> radii,
                             const MassOptions& opts = {}) {
  if (geom.kind() != GeometryKind::LebrunALE)
    throw std::invalid_argument("adm_mass: geometry overload expects the ALE family");
  return adm_mass(lebrun_ale_field(geom.order()), std::move(radii), opts);
}

}  // namespace orblab
