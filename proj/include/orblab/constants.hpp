#pragma once

#include <cmath>

namespace orblab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Volume of the unit k-sphere S^k embedded in R^{k+1}.
inline double sphere_volume(int k) {
  // Vol(S^k) = 2 pi^{(k+1)/2} / Gamma((k+1)/2)
  return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

inline const double kVolS3 = 2.0 * kPi * kPi;        // Vol(S^3)
inline const double kVolS4 = 8.0 * kPi * kPi / 3.0;  // Vol(S^4)

// Conformal Laplacian coupling c(n) = (n-2)/(4(n-1)); c(4) = 1/6.
inline constexpr double conformal_coupling(int n) {
  return (n - 2.0) / (4.0 * (n - 1.0));
}

}  // namespace orblab
