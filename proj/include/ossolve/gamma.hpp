#pragma once

#include <cmath>
#include <complex>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"

namespace ossolve::specfun {

// Gamma(z) for complex z, Lanczos approximation (g = 7, 9 coefficients)
// with the reflection formula for Re(z) < 0.5. Relative error stays below
// ~1e-13 away from the poles.
inline Complex gamma(const Complex& z) {
  static const double g = 7.0;
  static const double coef[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};

  if (is_nonpositive_integer(z)) {
    throw PoleError("gamma: pole at non-positive integer");
  }
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return kPi / (sin_pi(z) * gamma(1.0 - z));
  }
  const Complex zz = z - 1.0;
  Complex x = coef[0];
  for (int i = 1; i < 9; ++i) {
    x += coef[i] / (zz + static_cast<double>(i));
  }
  const Complex t = zz + g + 0.5;
  const Complex r = std::sqrt(2.0 * kPi) * std::pow(t, zz + 0.5) * std::exp(-t) * x;
  return ensure_finite(r, "gamma");
}

// Pochhammer symbol (v)_n = v (v+1) ... (v+n-1); the product form has no
// poles, unlike Gamma(v+n)/Gamma(v).
inline Complex pochhammer(const Complex& v, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be non-negative");
  Complex p = 1.0;
  for (int j = 0; j < n; ++j) {
    p *= v + static_cast<double>(j);
  }
  return p;
}

}  // namespace ossolve::specfun
