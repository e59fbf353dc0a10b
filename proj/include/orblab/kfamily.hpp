#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>

#include "orblab/constants.hpp"

namespace orblab {

enum class KFamilyKind { Constant, Bump, RationalDecay, KMinusTransform, Custom };

// A positive radial curvature candidate K(s), s in [0, inf], with exact
// first-derivative callback and exact K''(0). Radial smoothness at the
// orbifold point forces K'(0) = 0 for every family here.
class KFamily {
 public:
  static KFamily constant(double c) {
    require_positive(c, "constant");
    KFamily k(KFamilyKind::Constant, "constant(" + fmt(c) + ")");
    k.value_ = [c](double) { return c; };
    k.deriv_ = [](double) { return 0.0; };
    k.d2_at_0_ = 0.0;
    k.limit_inf_ = c;
    return k;
  }

  // K(s) = base + a * exp(-s^2); K''(0) = -2a, K(inf) = base.
  static KFamily bump(double base, double a) {
    require_positive(base, "bump base");
    if (base + std::min(a, 0.0) <= 0.0)
      throw std::invalid_argument("bump: K(0) = base + a must stay positive");
    KFamily k(KFamilyKind::Bump, "bump(" + fmt(base) + "," + fmt(a) + ")");
    k.value_ = [base, a](double s) { return base + a * std::exp(-s * s); };
    k.deriv_ = [a](double s) { return -2.0 * a * s * std::exp(-s * s); };
    k.d2_at_0_ = -2.0 * a;
    k.limit_inf_ = base;
    return k;
  }

  // K(s) = c_inf + amp/(1+s^2); K''(0) = -2 amp; monotone decreasing iff amp>0.
  static KFamily rational_decay(double c_inf, double amp) {
    require_positive(c_inf, "rational_decay limit");
    if (c_inf + amp <= 0.0)
      throw std::invalid_argument("rational_decay: K(0) must stay positive");
    KFamily k(KFamilyKind::RationalDecay,
              "rational_decay(" + fmt(c_inf) + "," + fmt(amp) + ")");
    k.value_ = [c_inf, amp](double s) { return c_inf + amp / (1.0 + s * s); };
    k.deriv_ = [amp](double s) {
      const double d = 1.0 + s * s;
      return -2.0 * amp * s / (d * d);
    };
    k.d2_at_0_ = -2.0 * amp;
    k.limit_inf_ = c_inf;
    return k;
  }

  static KFamily custom(std::string name, std::function<double(double)> value,
                        std::function<double(double)> deriv, double d2_at_0,
                        double limit_inf) {
    KFamily k(KFamilyKind::Custom, std::move(name));
    k.value_ = std::move(value);
    k.deriv_ = std::move(deriv);
    k.d2_at_0_ = d2_at_0;
    k.limit_inf_ = limit_inf;
    return k;
  }

  double operator()(double s) const { return value_(s); }
  double value(double s) const { return value_(s); }
  double deriv(double s) const { return deriv_(s); }
  double d2_at_0() const { return d2_at_0_; }
  double limit_inf() const { return limit_inf_; }
  double at_origin() const { return value_(0.0); }
  KFamilyKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  // sup over [0, inf] by sampling s = tan(z) plus the limit value
  double sup(int samples = 4096) const {
    double m = std::max(value_(0.0), limit_inf_);
    for (int i = 1; i <= samples; ++i) {
      const double z = 0.5 * kPi * i / (samples + 1.0);
      m = std::max(m, value_(std::tan(z)));
    }
    return m;
  }

 private:
  explicit KFamily(KFamilyKind kind, std::string name)
      : kind_(kind), name_(std::move(name)) {}
  static void require_positive(double v, const char* who) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(who) + " must be > 0");
  }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }

  KFamilyKind kind_;
  std::string name_;
  std::function<double(double)> value_, deriv_;
  double d2_at_0_ = 0.0;
  double limit_inf_ = 0.0;
};

enum class WallSide { Plus, Zero, Minus };

inline const char* to_string(WallSide w) {
  switch (w) {
    case WallSide::Plus: return "Plus";
    case WallSide::Zero: return "Zero";
    case WallSide::Minus: return "Minus";
  }
  return "?";
}

struct WallClass {
  WallSide label = WallSide::Zero;
  double margin = 0.0;  // K''(0)/K(0) - (n-2)
};

// Wall criterion on O(-n): Delta K(q) - 4(n-2)K(q) vs 0 with
// Delta K(q) = 4 K''(0), i.e. margin = K''(0)/K(0) - (n-2).
inline WallClass classify_wall(const KFamily& K, int n) {
  WallClass w;
  w.margin = K.d2_at_0() / K.at_origin() - (n - 2.0);
  if (std::abs(w.margin) <= 1e-12)
    w.label = WallSide::Zero;
  else
    w.label = w.margin > 0.0 ? WallSide::Plus : WallSide::Minus;
  return w;
}

// Product family K(s) = (2+n s^2)/(n+n s^2) * K2m(s) from a monotone
// nonincreasing K2m; lands in the Minus class whenever K2m''(0) < 0.
inline KFamily make_K_minus(int n, const KFamily& K2minus) {
  if (!(K2minus.limit_inf() > 0.0))
    throw std::invalid_argument("make_K_minus: K2minus must stay positive at s=inf");
  for (int i = 0; i <= 256; ++i) {
    const double z = 1.5 * i / 256.0;  // covers s = tan(z) up to ~14
    const double s = std::tan(z);
    if (K2minus.deriv(s) > 1e-12)
      throw std::invalid_argument("make_K_minus: K2minus must be nonincreasing");
  }
  const double dn = n;
  auto pref = [dn](double s) { return (2.0 + dn * s * s) / (dn + dn * s * s); };
  auto dpref = [dn](double s) {
    const double den = dn + dn * s * s;
    return 2.0 * dn * (dn - 2.0) * s / (den * den);
  };
  const KFamily k2 = K2minus;  // captured copy
  const double d2 =
      (2.0 / dn) * (dn - 2.0) * k2.at_origin() + (2.0 / dn) * k2.d2_at_0();
  return KFamily::custom(
      "K_minus(n=" + std::to_string(n) + "; " + K2minus.name() + ")",
      [pref, k2](double s) { return pref(s) * k2.value(s); },
      [pref, dpref, k2](double s) {
        return dpref(s) * k2.value(s) + pref(s) * k2.deriv(s);
      },
      d2, K2minus.limit_inf());
}

}  // namespace orblab
