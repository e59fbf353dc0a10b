#pragma once

#include <vector>

#include "orblab/kfamily.hpp"
#include "orblab/pohozaev.hpp"
#include "orblab/solver.hpp"

namespace orblab {

// Coefficient fields of the compact LeBrun equation in the s chart (s plays
// |x| near the orbifold point). With gss = (1+n s^2)^3/(1+s^2):
//   a_rr = gss,
//   tr_a = gss + 2 (1+n s^2)^2/(1+s^2) + (1+s^2)(1+n s^2),
//   b_r  = s (n-1)(1+n s^2)(2+(n+1) s^2)/(1+s^2),
//   c    = -c(4) R = -4n (1+n s^2)/(1+s^2).
inline PohozaevCoefficients lebrun_compact_pohozaev_coefficients(int n,
                                                                 const KFamily& K,
                                                                 double p) {
  const double dn = n;
  PohozaevCoefficients co;
  co.gamma_order = dn;
  co.p = p;
  co.a_rr = [dn](double s) {
    const double b = 1.0 + dn * s * s;
    return b * b * b / (1.0 + s * s);
  };
  co.tr_a = [dn](double s) {
    const double s2 = s * s, a = 1.0 + s2, b = 1.0 + dn * s2;
    return b * b * b / a + 2.0 * b * b / a + a * b;
  };
  co.b_r = [dn](double s) {
    const double s2 = s * s;
    return s * (dn - 1.0) * (1.0 + dn * s2) * (2.0 + (dn + 1.0) * s2) / (1.0 + s2);
  };
  co.c = [dn](double s) {
    const double s2 = s * s;
    return -4.0 * dn * (1.0 + dn * s2) / (1.0 + s2);
  };
  co.dc = [dn](double s) {
    const double d = 1.0 + s * s;
    return -8.0 * dn * (dn - 1.0) * s / (d * d);
  };
  co.K = [K](double s) { return K.value(s); };
  co.dK = [K](double s) { return K.deriv(s); };
  return co;
}

// d^2 u/d s^2 on the solution's own s grid: chain rule through v(s) = vbar(t(s))
// with vbar'' supplied by the ODE right-hand side.
inline std::vector<double> lebrun_solution_d2u(const RadialGeometry& geom,
                                               const KFamily& K,
                                               const RadialSolution& sol) {
  const int n = sol.order;
  std::vector<double> out(sol.x.size());
  for (size_t i = 0; i < sol.x.size(); ++i) {
    const double t = sol.x[i], s = sol.s[i];
    const double v = sol.v[i], vp = sol.vp[i];
    const double vpp = ode_rhs(geom, K, sol.p, t, v, vp);
    const double b = 1.0 + n * s * s;
    const double tp = 2.0 * n * s / b;
    const double tpp = 2.0 * n * (1.0 - n * s * s) / (b * b);
    const double v_s = vp * tp;
    const double v_ss = vpp * tp * tp + vp * tpp;
    const double phi = n + 1.0 / (s * s);
    const double dphi = -2.0 / (s * s * s);
    const double d2phi = 6.0 / (s * s * s * s);
    out[i] = d2phi * v + 2.0 * dphi * v_s + phi * v_ss;
  }
  return out;
}

}  // namespace orblab
