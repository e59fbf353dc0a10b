#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orblab/constants.hpp"
#include "orblab/quadrature.hpp"

namespace orblab {

// Radial data for the identity: u with exact or sampled derivatives.
struct PohozaevProfile {
  std::function<double(double)> u, du, d2u;
};

// Radial coefficient fields of a^{ij} d_ij u + b^i d_i u + c u + K u^p = 0
// specialized to radial u on B_sigma/Gamma: for radial u,
//   a^{ij} d_ij u = a_rr u'' + (tr_a - a_rr) u'/rho,
//   b^i d_i u     = b_r u'.
struct PohozaevCoefficients {
  std::function<double(double)> a_rr;    // radial-radial inverse metric entry
  std::function<double(double)> tr_a;    // full trace of a^{ij}
  std::function<double(double)> b_r;     // radial first-order coefficient
  std::function<double(double)> c, dc;   // zeroth-order coefficient and c'
  std::function<double(double)> K, dK;
  double p = 3.0;
  double gamma_order = 1.0;
};

inline PohozaevCoefficients flat_pohozaev_coefficients(double Kconst, double p,
                                                       double gamma = 1.0) {
  PohozaevCoefficients co;
  co.a_rr = [](double) { return 1.0; };
  co.tr_a = [](double) { return 4.0; };
  co.b_r = [](double) { return 0.0; };
  co.c = [](double) { return 0.0; };
  co.dc = [](double) { return 0.0; };
  co.K = [Kconst](double) { return Kconst; };
  co.dK = [](double) { return 0.0; };
  co.p = p;
  co.gamma_order = gamma;
  return co;
}

struct PohozaevReport {
  double r = 0.0;
  double boundary_P = 0.0;
  double term_coeff_deviation = 0.0;  // -(x.grad u + u)((a-delta)dd u + b du)
  double term_c_volume = 0.0;         // (x.grad c/2 + c) u^2
  double term_c_boundary = 0.0;       // -(r/2) oint c u^2
  double term_k_gradient = 0.0;       // (1/(p+1)) int (x.grad K) u^{p+1}
  double term_exponent_deficit = 0.0; // (n/(p+1)-(n-2)/2) int K u^{p+1}
  double term_k_boundary = 0.0;       // -(1/(p+1)) oint K r u^{p+1}
  double residual = 0.0;
  double scale = 0.0;  // max term magnitude
};

// Boundary quantity for radial u on R^4/Gamma:
// P = (Vol(S^3)/|Gamma|) r^3 [ u u' + (r/2) u'^2 ]
// (the |grad u|^2 and |du/dr|^2 surface terms combine for radial u).
inline double pohozaev_boundary(const PohozaevProfile& u, double r,
                                double gamma_order = 1.0) {
  if (!(r > 0.0)) throw std::domain_error("pohozaev_boundary: r must be > 0");
  const double up = u.du(r), uv = u.u(r);
  return kVolS3 / gamma_order * r * r * r * (uv * up + 0.5 * r * up * up);
}

// All right-hand groups of the radial identity, plus the defect |P - sum|.
inline PohozaevReport pohozaev_volume_terms(const PohozaevProfile& u,
                                            const PohozaevCoefficients& co, double r,
                                            double quad_tol = 1e-11) {
  if (!(r > 0.0)) throw std::domain_error("pohozaev_volume_terms: r must be > 0");
  PohozaevReport rep;
  rep.r = r;
  const double meas = kVolS3 / co.gamma_order;
  const double eps = 1e-6 * r;
  auto vol = [&](const std::function<double(double)>& f) {
    const auto q = integrate_adaptive(
        [&](double rho) { return f(rho) * rho * rho * rho; }, eps, r, quad_tol);
    if (!q.converged) throw std::runtime_error("pohozaev_volume_terms: quadrature");
    return meas * q.value;
  };
  const double p = co.p;
  rep.boundary_P = pohozaev_boundary(u, r, co.gamma_order);
  rep.term_coeff_deviation = -vol([&](double rho) {
    const double uu = u.u(rho), up = u.du(rho), upp = u.d2u(rho);
    const double adev = (co.a_rr(rho) - 1.0) * upp +
                        ((co.tr_a(rho) - co.a_rr(rho)) - 3.0) * up / rho;
    return (rho * up + uu) * (adev + co.b_r(rho) * up);
  });
  rep.term_c_volume = vol([&](double rho) {
    const double uu = u.u(rho);
    return (0.5 * rho * co.dc(rho) + co.c(rho)) * uu * uu;
  });
  {
    const double uu = u.u(r);
    rep.term_c_boundary = -0.5 * r * meas * r * r * r * co.c(r) * uu * uu;
  }
  rep.term_k_gradient = vol([&](double rho) {
    return rho * co.dK(rho) * std::pow(std::abs(u.u(rho)), p + 1.0) / (p + 1.0);
  });
  rep.term_exponent_deficit = (4.0 / (p + 1.0) - 1.0) * vol([&](double rho) {
    return co.K(rho) * std::pow(std::abs(u.u(rho)), p + 1.0);
  });
  rep.term_k_boundary = -meas * r * r * r * co.K(r) * r *
                        std::pow(std::abs(u.u(r)), p + 1.0) / (p + 1.0);
  const double sum = rep.term_coeff_deviation + rep.term_c_volume +
                     rep.term_c_boundary + rep.term_k_gradient +
                     rep.term_exponent_deficit + rep.term_k_boundary;
  rep.residual = std::abs(rep.boundary_P - sum);
  rep.scale = std::max({std::abs(rep.boundary_P), std::abs(rep.term_coeff_deviation),
                        std::abs(rep.term_c_volume), std::abs(rep.term_c_boundary),
                        std::abs(rep.term_k_gradient),
                        std::abs(rep.term_exponent_deficit),
                        std::abs(rep.term_k_boundary)});
  return rep;
}

// Sample-based variant: composite trapezoid on the given radial nodes (used
// for solver output; refining the node set shows the expected second-order
// defect decay). Nodes must be ascending and bracket [0, r].
inline PohozaevReport pohozaev_volume_terms_sampled(
    const std::vector<double>& rho, const std::vector<double>& uu,
    const std::vector<double>& dus, const std::vector<double>& d2us,
    const PohozaevCoefficients& co, double r) {
  if (rho.size() < 8 || rho.size() != uu.size() || uu.size() != dus.size() ||
      dus.size() != d2us.size())
    throw std::invalid_argument("pohozaev_volume_terms_sampled: bad samples");
  PohozaevReport rep;
  rep.r = r;
  const double p = co.p;
  const double meas = kVolS3 / co.gamma_order;
  // boundary values by local interpolation at the node nearest to r
  size_t ib = 0;
  while (ib + 1 < rho.size() && rho[ib + 1] <= r) ++ib;
  const double ur = uu[ib], upr = dus[ib];
  const double rb = rho[ib];
  rep.boundary_P = meas * rb * rb * rb * (ur * upr + 0.5 * rb * upr * upr);
  auto trap = [&](auto&& f) {
    double acc = 0.0;
    for (size_t i = 0; i + 1 <= ib; ++i) {
      const double r0 = rho[i], r1 = rho[i + 1];
      if (r1 > rb + 1e-15) break;
      const double f0 = f(i) * r0 * r0 * r0, f1 = f(i + 1) * r1 * r1 * r1;
      acc += 0.5 * (f0 + f1) * (r1 - r0);
    }
    return meas * acc;
  };
  rep.term_coeff_deviation = -trap([&](size_t i) {
    const double adev = (co.a_rr(rho[i]) - 1.0) * d2us[i] +
                        ((co.tr_a(rho[i]) - co.a_rr(rho[i])) - 3.0) * dus[i] / rho[i];
    return (rho[i] * dus[i] + uu[i]) * (adev + co.b_r(rho[i]) * dus[i]);
  });
  rep.term_c_volume = trap([&](size_t i) {
    return (0.5 * rho[i] * co.dc(rho[i]) + co.c(rho[i])) * uu[i] * uu[i];
  });
  rep.term_c_boundary = -0.5 * rb * meas * rb * rb * rb * co.c(rb) * ur * ur;
  rep.term_k_gradient = trap([&](size_t i) {
    return rho[i] * co.dK(rho[i]) * std::pow(std::abs(uu[i]), p + 1.0) / (p + 1.0);
  });
  rep.term_exponent_deficit = (4.0 / (p + 1.0) - 1.0) * trap([&](size_t i) {
    return co.K(rho[i]) * std::pow(std::abs(uu[i]), p + 1.0);
  });
  rep.term_k_boundary =
      -meas * rb * rb * rb * co.K(rb) * rb * std::pow(std::abs(ur), p + 1.0) / (p + 1.0);
  const double sum = rep.term_coeff_deviation + rep.term_c_volume +
                     rep.term_c_boundary + rep.term_k_gradient +
                     rep.term_exponent_deficit + rep.term_k_boundary;
  rep.residual = std::abs(rep.boundary_P - sum);
  rep.scale = std::max({std::abs(rep.boundary_P), std::abs(rep.term_coeff_deviation),
                        std::abs(rep.term_c_volume), std::abs(rep.term_c_boundary),
                        std::abs(rep.term_k_gradient),
                        std::abs(rep.term_exponent_deficit),
                        std::abs(rep.term_k_boundary)});
  return rep;
}

}  // namespace orblab
