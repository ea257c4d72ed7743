#pragma once

// Outer solutions phi ~ Psi/P = -eps^2 Psi / k^2, valid as eps = 1/r -> 0,
// and the standard amplitude-sweep figures (phi_5 for the linear
// profile, phi_2 for the quadratic one, R in {1000..10000}, eps 0.2).

#include <cmath>
#include <string>
#include <vector>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"
#include "ossolve/greens.hpp"
#include "ossolve/hermite.hpp"
#include "ossolve/shortwave.hpp"

namespace ossolve::outer {

using greens::GridFunction;
using shortwave::Eigenpair;

enum class Case { LinearU, QuadraticU };

struct OuterMode {
  Case flow_case = Case::LinearU;
  Eigenpair pair;
  double epsilon = 0.1;  // = 1/r
  double R = 1000.0;
};

// alpha_n for Ubar = y, theta = 0, in the (R, eps) variables; the +(1+i)
// branch option (decaying, right-traveling).
inline Complex outer_alpha_linear(int n, double R, double epsilon) {
  return epsilon * Complex(1.0, 1.0) * (std::sqrt(2.0) / 2.0) *
         std::sqrt(1.5 * R * epsilon) * std::sqrt((n - 0.25) * kPi);
}

// lambda_n(alpha_n) = [ (3/2) (n - 1/4) pi / sqrt(i R alpha) ]^{2/3}
inline Complex outer_lambda_linear(int n, double R, const Complex& alpha) {
  return std::pow(1.5 * (n - 0.25) * kPi / std::sqrt(kI * R * alpha),
                  2.0 / 3.0);
}

inline Complex outer_linear(int n, double R, double epsilon, double y) {
  if (n < 1) throw DomainError("outer_linear: n >= 1 required");
  if (y < 0.0) throw DomainError("outer_linear: y >= 0 required");
  const Complex alpha = outer_alpha_linear(n, R, epsilon);
  const Complex lambda = outer_lambda_linear(n, R, alpha);
  const Complex arg = std::pow(kI * R * alpha, 1.0 / 3.0) * (y - lambda);
  return -(epsilon * epsilon / (alpha * alpha)) * specfun::airy_ai(arg);
}

inline Complex outer_quadratic(int m, double R, double epsilon, double y) {
  if (m < 0) throw DomainError("outer_quadratic: m >= 0 required");
  if (y < 0.0) throw DomainError("outer_quadratic: y >= 0 required");
  const Complex alpha = shortwave::closed_form_alpha_quadratic_outer(m, R, epsilon);
  const Complex eta = std::pow(kI * R * alpha, 0.25) * y;
  return -(epsilon * epsilon / (alpha * alpha)) *
         specfun::hermite_weighted(2 * m + 1, eta);
}

enum class Figure { Fig1, Fig2 };

inline constexpr double kFigureEpsilon = 0.2;
inline constexpr double kFigureReynolds[4] = {1000.0, 2000.0, 5000.0, 10000.0};
inline constexpr int kFigureModeLinear = 5;     // phi_5
inline constexpr int kFigureModeQuadratic = 2;  // phi_2
inline constexpr int kFigureSamples = 1000;
inline constexpr double kFigureYmax = 10.0;

// One panel: |phi_n| of the requested figure at Reynolds number R,
// y in [0, 10] with 1000 samples.
inline GridFunction figure_profile(Figure fig, double R) {
  GridFunction g;
  g.grid.resize(kFigureSamples);
  g.values.resize(kFigureSamples);
  g.meta.mode_index =
      (fig == Figure::Fig1) ? kFigureModeLinear : kFigureModeQuadratic;
  g.meta.provenance = "outer R=" + std::to_string(static_cast<int>(R));
  for (int i = 0; i < kFigureSamples; ++i) {
    const double y = kFigureYmax * i / (kFigureSamples - 1);
    g.grid[i] = y;
    g.values[i] = (fig == Figure::Fig1)
                      ? outer_linear(kFigureModeLinear, R, kFigureEpsilon, y)
                      : outer_quadratic(kFigureModeQuadratic, R,
                                        kFigureEpsilon, y);
  }
  g.validate();
  return g;
}

// The four profiles of one figure, R in {1000, 2000, 5000, 10000}.
inline std::vector<GridFunction> figure_profiles(Figure fig) {
  std::vector<GridFunction> out;
  for (double R : kFigureReynolds) out.push_back(figure_profile(fig, R));
  return out;
}

inline double max_abs(const GridFunction& g) {
  double m = 0.0;
  for (const auto& v : g.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace ossolve::outer
