#pragma once

// Complex Airy functions Ai, Bi and their derivatives.
//
// Two paths:
//  - |z| <= 9: the 0F1 Maclaurin forms
//        Ai(z) = c1 f(z) - c2 z g(z),  Bi(z) = sqrt(3) (c1 f + c2 z g),
//        f = 0F1(;2/3;z^3/9),  g = 0F1(;4/3;z^3/9),
//    summed in double-double. On the positive real side the two series
//    cancel by a factor ~e^{(4/3)|z|^{3/2}}, which is why working
//    precision is not enough and why the series parameters and the
//    constants c1 = 3^{-2/3}/Gamma(2/3), c2 = 3^{-1/3}/Gamma(1/3) are
//    produced in double-double from exact rationals.
//  - |z| > 9: Poincare expansion in zeta = (2/3) z^{3/2}, truncated at the
//    smallest term; near the negative real axis the expansion is applied
//    to the rotated arguments z e^{+-2pi i/3} through the connection
//    formulas.

#include <array>
#include <cmath>
#include <complex>

#include "ossolve/complex_utils.hpp"
#include "ossolve/dd.hpp"
#include "ossolve/errors.hpp"

namespace ossolve::specfun {

namespace airy_detail {

inline constexpr double kSeriesRadius = 9.0;

// 0F1(; bnum/bden; w) in double-double with the parameter kept as an exact
// integer ratio inside the term recurrence.
inline dd::Cplx dd_0f1(int bnum, int bden, const dd::Cplx& w) {
  dd::Cplx term(1.0, 0.0);
  dd::Cplx sum(1.0, 0.0);
  int streak = 0;
  for (int n = 0; n < 500; ++n) {
    const dd::Real denom =
        dd::Real(static_cast<double>(bnum) + static_cast<double>(n) * bden) *
        dd::Real(static_cast<double>(n + 1));
    term = term * w * dd::Cplx(dd::Real(static_cast<double>(bden)) / denom,
                               dd::Real(0.0));
    sum += term;
    if (dd::abs_estimate(term) < 1e-36 * dd::abs_estimate(sum)) {
      if (++streak >= 2) return sum;
    } else {
      streak = 0;
    }
  }
  throw ConvergenceError("airy: 0F1 series did not converge");
}

struct Constants {
  dd::Real c1, c2, sqrt3;
  Constants() {
    using dd::Real;
    const Real g13 = dd::tgamma(Real(1.0) / Real(3.0));
    const Real g23 = dd::tgamma(Real(2.0) / Real(3.0));
    const Real cbrt3 = dd::nthroot(Real(3.0), 3);
    c1 = Real(1.0) / (cbrt3 * cbrt3 * g23);
    c2 = Real(1.0) / (cbrt3 * g13);
    sqrt3 = dd::sqrt(Real(3.0));
  }
};

inline const Constants& constants() {
  static const Constants c;
  return c;
}

struct SeriesValues {
  Complex ai, bi, aip, bip;
};

inline SeriesValues series_all(const Complex& z) {
  using dd::Cplx;
  const auto& cst = constants();
  const Cplx zz(z);
  const Cplx z2 = zz * zz;
  const Cplx z3 = z2 * zz;
  const Cplx w = z3 / Cplx(9.0, 0.0);

  const Cplx f23 = dd_0f1(2, 3, w);
  const Cplx f43 = dd_0f1(4, 3, w);
  const Cplx f53 = dd_0f1(5, 3, w);
  const Cplx f73 = dd_0f1(7, 3, w);

  const Cplx c1(cst.c1, dd::Real(0.0));
  const Cplx c2(cst.c2, dd::Real(0.0));
  const Cplx s3(cst.sqrt3, dd::Real(0.0));

  const Cplx t1 = c1 * f23;          // even solution
  const Cplx t2 = c2 * (zz * f43);   // odd solution
  const Cplx d1 = c1 * (z2 * f53) / Cplx(2.0, 0.0);
  const Cplx d2 = c2 * (f43 + z3 * f73 / Cplx(4.0, 0.0));

  SeriesValues out;
  out.ai = (t1 - t2).to_complex();
  out.bi = (s3 * (t1 + t2)).to_complex();
  out.aip = (d1 - d2).to_complex();
  out.bip = (s3 * (d1 + d2)).to_complex();
  return out;
}

// u_k, v_k of the large-argument expansions (DLMF 9.7).
inline const std::array<double, 41>& u_coeffs() {
  static const auto u = [] {
    std::array<double, 41> a{};
    a[0] = 1.0;
    for (int k = 1; k <= 40; ++k) {
      a[k] = a[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             (216.0 * k * (2.0 * k - 1.0));
    }
    return a;
  }();
  return u;
}

inline const std::array<double, 41>& v_coeffs() {
  static const auto v = [] {
    std::array<double, 41> a{};
    const auto& u = u_coeffs();
    a[0] = 1.0;
    for (int k = 1; k <= 40; ++k) {
      a[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    }
    return a;
  }();
  return v;
}

struct AsymptoticPair {
  Complex ai, aip;
};

// Valid away from the negative real axis; the truncation floor is about
// e^{-2|zeta|}, far below 1e-11 for |z| > 9.
inline AsymptoticPair asymptotic_direct(const Complex& z) {
  const Complex zeta = (2.0 / 3.0) * std::pow(z, 1.5);
  const Complex inv = 1.0 / zeta;
  const auto& u = u_coeffs();
  const auto& v = v_coeffs();

  Complex su = 1.0, sv = 1.0, p = 1.0;
  double min_term = 1.0;
  for (int k = 1; k <= 40; ++k) {
    p *= -inv;
    const Complex tu = u[k] * p;
    const Complex tv = v[k] * p;
    if (std::abs(tu) > min_term) break;  // past the smallest term
    min_term = std::abs(tu);
    su += tu;
    sv += tv;
    if (min_term < 1e-19) break;
  }
  if (min_term > 1e-11) {
    throw PrecisionError("airy: asymptotic truncation floor above 1e-11");
  }
  const Complex zq = std::pow(z, 0.25);
  const Complex damp = std::exp(-zeta);
  const double c = 0.5 / std::sqrt(kPi);
  return {c * damp * su / zq, -c * damp * sv * zq};
}

inline AsymptoticPair asymptotic_ai(const Complex& z) {
  if (std::abs(std::arg(z)) <= 2.6) {
    return asymptotic_direct(z);
  }
  // connection formula around the negative axis
  const Complex w1 = std::polar(1.0, 2.0 * kPi / 3.0);
  const Complex w2 = std::conj(w1);
  const auto p1 = asymptotic_direct(z * w1);
  const auto p2 = asymptotic_direct(z * w2);
  return {-(w1 * p1.ai + w2 * p2.ai),
          -(w1 * w1 * p1.aip + w2 * w2 * p2.aip)};
}

struct AllValues {
  Complex ai, bi, aip, bip;
};

inline AllValues evaluate(const Complex& z) {
  if (!is_finite(z)) throw DomainError("airy: non-finite argument");
  if (std::abs(z) <= kSeriesRadius) {
    const auto s = series_all(z);
    return {s.ai, s.bi, s.aip, s.bip};
  }
  const auto pa = asymptotic_ai(z);
  const Complex w1 = std::polar(1.0, 2.0 * kPi / 3.0);
  const Complex w2 = std::conj(w1);
  const auto r1 = asymptotic_ai(z * w1);
  const auto r2 = asymptotic_ai(z * w2);
  const Complex e16 = std::polar(1.0, kPi / 6.0);
  AllValues out;
  out.ai = pa.ai;
  out.aip = pa.aip;
  out.bi = e16 * r1.ai + std::conj(e16) * r2.ai;
  out.bip = e16 * w1 * r1.aip + std::conj(e16 * w1) * r2.aip;
  return out;
}

}  // namespace airy_detail

inline Complex airy_ai(const Complex& z) { return airy_detail::evaluate(z).ai; }
inline Complex airy_bi(const Complex& z) { return airy_detail::evaluate(z).bi; }
inline Complex airy_ai_prime(const Complex& z) {
  return airy_detail::evaluate(z).aip;
}
inline Complex airy_bi_prime(const Complex& z) {
  return airy_detail::evaluate(z).bip;
}

}  // namespace ossolve::specfun
