#pragma once

#include <vector>

#include "orblab/adm_mass.hpp"
#include "orblab/green.hpp"

namespace orblab {

struct MassRegularTermCheck {
  MassEstimate mass;       // quadrature mass of the conformal blow-up
  double implied_A = 0.0;  // mass / 12
};

// Consistency of the boundary-flux mass with the Green's function regular
// part: compute the blow-up of the compact orbifold from the solved psi,
// push it through the ADM quadrature, and report A = m/12. No conformal
// normal coordinates are constructed; the naive s-coordinate constant term
// (regular_term_s, = n here) is a different quantity from A.
inline MassRegularTermCheck mass_regular_term_check(const RadialGeometry& geom,
                                                    std::vector<double> radii = {},
                                                    const MassOptions& opts = {}) {
  if (radii.empty()) {
    for (double r = 20.0; r <= 200.0; r *= 1.4) radii.push_back(r);
  }
  const auto psi = green_function_radial(geom);
  const auto field = conformal_blowup(geom, psi);
  MassRegularTermCheck out;
  out.mass = adm_mass(field, std::move(radii), opts);
  out.implied_A = out.mass.extrapolated / 12.0;
  return out;
}

}  // namespace orblab
