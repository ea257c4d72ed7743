#pragma once

#include <cmath>
#include <complex>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"

namespace ossolve::specfun {

// Physicists' Hermite polynomial H_n via H_{n+1} = 2 z H_n - 2 n H_{n-1}.
inline Complex hermite(int n, const Complex& z) {
  if (n < 0 || n > 200) throw DomainError("hermite: order must be in [0, 200]");
  if (n == 0) return 1.0;
  Complex hm = 1.0;       // H_0
  Complex h = 2.0 * z;    // H_1
  for (int j = 1; j < n; ++j) {
    const Complex hn = 2.0 * z * h - 2.0 * static_cast<double>(j) * hm;
    hm = h;
    h = hn;
  }
  return ensure_finite(h, "hermite");
}

// A complex value carried as mantissa * exp(log_scale), so Gaussian-weighted
// Hermite functions survive exponents far outside double range.
struct ScaledComplex {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;

  Complex value() const {
    if (mantissa == Complex(0.0, 0.0)) return {0.0, 0.0};
    if (log_scale < -746.0) return {0.0, 0.0};
    if (log_scale > 709.0) {
      throw OverflowError("ScaledComplex: value exceeds double range");
    }
    return mantissa * std::exp(log_scale);
  }
};

// exp(-eta^2/2) H_n(eta). The recurrence runs on the phase-weighted values
// with |H| renormalized on the fly; the real part of -eta^2/2 is kept in
// log_scale until the end.
inline ScaledComplex hermite_weighted_scaled(int n, const Complex& eta) {
  if (n < 0 || n > 200) {
    throw DomainError("hermite_weighted: order must be in [0, 200]");
  }
  const Complex eta2 = eta * eta;
  ScaledComplex out;
  out.log_scale = -0.5 * eta2.real();
  const Complex phase = std::exp(Complex(0.0, -0.5 * eta2.imag()));

  Complex hm = phase;
  Complex h = 2.0 * eta * phase;
  if (n == 0) {
    out.mantissa = hm;
    return out;
  }
  for (int j = 1; j < n; ++j) {
    Complex hn = 2.0 * eta * h - 2.0 * static_cast<double>(j) * hm;
    hm = h;
    h = hn;
    const double m = std::abs(h);
    if (m > 1e200) {
      hm /= 1e200;
      h /= 1e200;
      out.log_scale += std::log(1e200);
    }
  }
  out.mantissa = h;
  return out;
}

inline Complex hermite_weighted(int n, const Complex& eta) {
  return hermite_weighted_scaled(n, eta).value();
}

// Normalization of the standard Hermite function basis, exposed separately;
// the library returns unnormalized modes.
inline double hermite_norm_factor(int n) {
  double log_fac = 0.0;
  for (int j = 2; j <= n; ++j) log_fac += std::log(static_cast<double>(j));
  return std::exp(-0.5 * (n * std::log(2.0) + log_fac + 0.5 * std::log(kPi)));
}

}  // namespace ossolve::specfun
