#pragma once

// Nondimensional flow configuration, mean-flow profiles, the Squire
// reduction of 3-D mean flows to 2-D, and wavenumber geometry.

#include <cmath>
#include <functional>
#include <optional>
#include <variant>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"

namespace ossolve::meanflow {

enum class Regime { ShortWave, LongWave };

// Aspect ratio r = H/L, Reynolds number R = r^2 chi, chi = L V / nu*.
// chi is stored, R derived once, so R = r^2 chi holds to machine precision.
struct FlowConfig {
  double r = 1.0;
  double R = 1.0;
  double chi = 1.0;
  double theta = 0.0;
  Regime regime = Regime::ShortWave;
  bool gray_zone = false;  // r near 1: neither limit is clean; warn only

  static FlowConfig from_r_chi(double r, double chi, double theta = 0.0) {
    if (!(r > 0.0) || !(chi > 0.0)) {
      throw DomainError("FlowConfig: r and chi must be positive");
    }
    FlowConfig c;
    c.r = r;
    c.chi = chi;
    c.R = chi * r * r;
    c.theta = theta;
    c.regime = (r >= 1.0) ? Regime::ShortWave : Regime::LongWave;
    c.gray_zone = (r > 0.5 && r < 2.0);
    return c;
  }

  static FlowConfig from_r_reynolds(double r, double R, double theta = 0.0) {
    if (!(r > 0.0) || !(R > 0.0)) {
      throw DomainError("FlowConfig: r and R must be positive");
    }
    return from_r_chi(r, R / (r * r), theta);
  }
};

// r = H/L, chi = L V / nu*, R = r^2 chi.
inline FlowConfig nondimensionalize(double L, double H, double V,
                                    double nu_star) {
  if (!(L > 0.0) || !(H > 0.0) || !(V > 0.0) || !(nu_star > 0.0)) {
    throw DomainError("nondimensionalize: all inputs must be positive");
  }
  return FlowConfig::from_r_chi(H / L, L * V / nu_star);
}

// Mean-flow profiles Ubar(y). Linear and Quadratic live on [0, inf);
// Sech2 (the wake) on the whole line.
struct Linear {
  double b = 1.0, c = 0.0;
};
struct Quadratic {
  double a = 1.0, b = 0.0, c = 0.0;
};
struct Sech2 {
  double U0 = 1.0;  // amplitude, > 0
  double w = 1.0;   // width parameter, > 0

  Sech2(double U0_, double w_) : U0(U0_), w(w_) {
    if (!(U0 > 0.0) || !(w > 0.0)) {
      throw DomainError("Sech2: U0 and w must be positive");
    }
  }
};

using MeanProfile = std::variant<Linear, Quadratic, Sech2>;

enum class ProfileDomain { SemiInfinite, Infinite };

inline ProfileDomain domain_of(const MeanProfile& p) {
  return std::holds_alternative<Sech2>(p) ? ProfileDomain::Infinite
                                          : ProfileDomain::SemiInfinite;
}

struct ProfileValue {
  double U;
  double Uyy;
};

inline ProfileValue profile_eval(const MeanProfile& p, double y) {
  if (domain_of(p) == ProfileDomain::SemiInfinite && y < 0.0) {
    throw DomainError("profile_eval: profile is defined on [0, inf)");
  }
  return std::visit(
      [y](const auto& prof) -> ProfileValue {
        using T = std::decay_t<decltype(prof)>;
        if constexpr (std::is_same_v<T, Linear>) {
          return {prof.b * y + prof.c, 0.0};
        } else if constexpr (std::is_same_v<T, Quadratic>) {
          return {prof.a * y * y + prof.b * y + prof.c, 2.0 * prof.a};
        } else {
          const double s = 1.0 / std::cosh(prof.w * y);
          const double t = std::tanh(prof.w * y);
          const double s2 = s * s;
          // d^2/dy^2 sech^2(wy) = 2 w^2 sech^2 (2 tanh^2 - sech^2)
          return {prof.U0 * s2,
                  prof.U0 * 2.0 * prof.w * prof.w * s2 * (2.0 * t * t - s2)};
        }
      },
      p);
}

// A quadratic profile qualifies for the long-wave reduction only while the
// curvature term it drops stays subdominant.
inline bool long_wave_admissible(const Quadratic& q, double threshold) {
  return std::abs(q.a) <= threshold;
}

// Squire reduction: the 2-D mean flow seen by a wave at angle theta.
// The spanwise mean flow goes by vbar or wbar in the literature; here it
// is always `wbar`.
struct ReducedProfile {
  std::function<double(double)> U;
  std::function<double(double)> Uyy;  // empty unless derivatives supplied
};

inline ReducedProfile squire_reduce(std::function<double(double)> ubar,
                                    std::function<double(double)> wbar,
                                    double theta) {
  const double ct = std::cos(theta), st = std::sin(theta);
  ReducedProfile r;
  r.U = [=, ubar = std::move(ubar), wbar = std::move(wbar)](double y) {
    return ubar(y) * ct + wbar(y) * st;
  };
  return r;
}

inline ReducedProfile squire_reduce(std::function<double(double)> ubar,
                                    std::function<double(double)> ubar_yy,
                                    std::function<double(double)> wbar,
                                    std::function<double(double)> wbar_yy,
                                    double theta) {
  const double ct = std::cos(theta), st = std::sin(theta);
  ReducedProfile r;
  r.U = [=](double y) { return ubar(y) * ct + wbar(y) * st; };
  r.Uyy = [=](double y) { return ubar_yy(y) * ct + wbar_yy(y) * st; };
  return r;
}

struct WavenumberComponents {
  Complex alpha;  // streamwise
  Complex beta;   // spanwise
};

inline WavenumberComponents decompose_wavenumber(const Complex& k,
                                                 double theta) {
  return {k * std::cos(theta), k * std::sin(theta)};
}

}  // namespace ossolve::meanflow
