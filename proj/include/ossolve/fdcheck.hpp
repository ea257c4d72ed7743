#pragma once

// Finite-difference residual oracles. These stencils exist so tests can
// check closed-form solutions against their defining ODEs through a route
// that never touches the evaluation code of the solution itself.

#include <cmath>
#include <limits>

#include "ossolve/complex_utils.hpp"

namespace ossolve::fdcheck {

// 7-point, 6th-order second derivative.
template <typename F>
Complex second_derivative(const F& f, double y, double h) {
  const Complex fm3 = f(y - 3 * h), fm2 = f(y - 2 * h), fm1 = f(y - h);
  const Complex f0 = f(y);
  const Complex fp1 = f(y + h), fp2 = f(y + 2 * h), fp3 = f(y + 3 * h);
  return (2.0 * (fm3 + fp3) - 27.0 * (fm2 + fp2) + 270.0 * (fm1 + fp1) -
          490.0 * f0) /
         (180.0 * h * h);
}

// 7-point, 4th-order fourth derivative.
template <typename F>
Complex fourth_derivative(const F& f, double y, double h) {
  const Complex fm3 = f(y - 3 * h), fm2 = f(y - 2 * h), fm1 = f(y - h);
  const Complex f0 = f(y);
  const Complex fp1 = f(y + h), fp2 = f(y + 2 * h), fp3 = f(y + 3 * h);
  return (-(fm3 + fp3) + 12.0 * (fm2 + fp2) - 39.0 * (fm1 + fp1) + 56.0 * f0) /
         (6.0 * h * h * h * h);
}

// Step choices balancing truncation against rounding for the stencils
// above. `scale` is the local length scale of the function.
inline double step_second(double y, double scale = 1.0) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::cbrt(eps) * std::max(1.0, std::abs(y)) * scale;
}

inline double step_fourth(double scale = 1.0) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::pow(eps, 1.0 / 8.0) * scale;
}

}  // namespace ossolve::fdcheck
