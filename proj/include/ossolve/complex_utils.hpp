#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "ossolve/errors.hpp"

namespace ossolve {

// Universal number type of the library. All fractional powers of Complex
// quantities use the principal branch, arg in (-pi, pi].
using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline bool is_finite(double x) { return std::isfinite(x); }

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Throws OverflowError instead of letting NaN/Inf propagate silently.
inline Complex ensure_finite(const Complex& z, const char* what) {
  if (!is_finite(z)) throw OverflowError(std::string(what) + ": non-finite result");
  return z;
}

// True when z sits on the real axis at an integer <= 0 (within tol).
inline bool is_nonpositive_integer(const Complex& z, double tol = 0.0) {
  if (std::abs(z.imag()) > tol) return false;
  const double re = z.real();
  if (re > 0.5) return false;
  return std::abs(re - std::round(re)) <= tol;
}

// Principal branch wrappers, named so call sites read like the formulas.
inline Complex principal_pow(const Complex& z, double p) { return std::pow(z, p); }
inline Complex principal_sqrt(const Complex& z) { return std::sqrt(z); }
inline Complex principal_cbrt(const Complex& z) { return std::pow(z, 1.0 / 3.0); }

// z^w for complex w.
inline Complex principal_pow(const Complex& z, const Complex& w) {
  return std::pow(z, w);
}

// sin(pi z) with argument reduction so relative accuracy survives near the
// zeros at integer z (naive sin(pi*z) loses all digits there).
inline Complex sin_pi(const Complex& z) {
  const double m = std::round(z.real());
  const Complex f(z.real() - m, z.imag());
  const Complex s = std::sin(kPi * f);
  // sin(pi(m+f)) = (-1)^m sin(pi f)
  return (std::fmod(m, 2.0) == 0.0) ? s : -s;
}

// log(cosh x) for real x without overflow for large |x|.
inline double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

inline double rel_diff(const Complex& a, const Complex& b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return 0.0;
  return std::abs(a - b) / scale;
}

}  // namespace ossolve
