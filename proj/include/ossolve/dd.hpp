#pragma once

// Double-double arithmetic (~31 significant digits). Used only as the
// extended-precision backend of the test oracles and of the Airy series,
// where the Maclaurin terms cancel by many orders of magnitude.

#include <cmath>
#include <complex>
#include <cstdint>

#include "ossolve/complex_utils.hpp"

namespace ossolve::dd {

struct Real {
  double hi = 0.0;
  double lo = 0.0;

  Real() = default;
  Real(double h) : hi(h), lo(0.0) {}  // NOLINT: implicit by design
  Real(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace detail {

inline Real quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Real two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Real two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline Real operator+(const Real& a, const Real& b) {
  Real s = detail::two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return detail::quick_two_sum(s.hi, s.lo);
}

inline Real operator-(const Real& a) { return {-a.hi, -a.lo}; }

inline Real operator-(const Real& a, const Real& b) { return a + (-b); }

inline Real operator*(const Real& a, const Real& b) {
  Real p = detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return detail::quick_two_sum(p.hi, p.lo);
}

inline Real operator/(const Real& a, const Real& b) {
  const double q1 = a.hi / b.hi;
  Real r = a - b * Real(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * Real(q2);
  const double q3 = r.hi / b.hi;
  return detail::quick_two_sum(q1, q2) + Real(q3);
}

inline Real& operator+=(Real& a, const Real& b) { return a = a + b; }
inline Real& operator-=(Real& a, const Real& b) { return a = a - b; }
inline Real& operator*=(Real& a, const Real& b) { return a = a * b; }
inline Real& operator/=(Real& a, const Real& b) { return a = a / b; }

inline bool operator<(const Real& a, const Real& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline Real fabs(const Real& a) { return (a.hi < 0.0) ? -a : a; }

inline Real ldexp(const Real& a, int n) {
  return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)};
}

inline Real sqr(const Real& a) { return a * a; }

// pi and ln2 as standard double-double constant pairs.
inline const Real kPiDD{3.141592653589793116e+00, 1.224646799147353207e-16};
inline const Real kLn2DD{6.931471805599453094e-01, 2.319046813846299558e-17};

inline Real exp(const Real& a) {
  // e^a = 2^k e^r with r = a - k ln2, |r| <= ln2/2, Taylor in dd.
  if (a.hi < -745.0) return Real(0.0);
  const int k = static_cast<int>(std::round(a.hi / kLn2DD.hi));
  const Real r = a - kLn2DD * Real(static_cast<double>(k));
  Real sum(1.0);
  Real term(1.0);
  for (int n = 1; n <= 32; ++n) {
    term = term * r / Real(static_cast<double>(n));
    sum += term;
    if (std::abs(term.hi) < 1e-35 * std::abs(sum.hi)) break;
  }
  return ldexp(sum, k);
}

inline Real log(const Real& a) {
  // Newton refinement of the double log: y <- y + a e^{-y} - 1.
  Real y(std::log(a.hi));
  for (int it = 0; it < 3; ++it) {
    y = y + a * exp(-y) - Real(1.0);
  }
  return y;
}

inline Real sqrt(const Real& a) {
  Real y(std::sqrt(a.hi));
  for (int it = 0; it < 3; ++it) {
    y = (y + a / y) * Real(0.5);
  }
  return y;
}

// nthroot via Newton on y^n - a.
inline Real nthroot(const Real& a, int n) {
  Real y(std::pow(a.hi, 1.0 / n));
  for (int it = 0; it < 4; ++it) {
    Real yn(1.0);
    for (int j = 0; j < n - 1; ++j) yn *= y;
    y = y - (yn * y - a) / (Real(static_cast<double>(n)) * yn);
  }
  return y;
}

// ln Gamma(x) for real x > 0 via Stirling with the argument shifted to
// x + 24 so the Bernoulli tail bottoms out near the dd epsilon. The
// argument is a dd value so rationals like 1/3 enter exactly; a double
// 1/3 would shift Gamma by ~6e-17 relative, which downstream cancellation
// amplifies far beyond the double-double budget.
inline Real lgamma(const Real& x) {
  static const double bern_num[] = {1.0,    -1.0,  1.0,    -1.0,  5.0,
                                    -691.0, 7.0,   -3617.0, 43867.0, -174611.0,
                                    854513.0, -236364091.0};
  static const double bern_den[] = {6.0,    30.0,  42.0,   30.0,  66.0,
                                    2730.0, 6.0,   510.0,  798.0, 330.0,
                                    138.0,  2730.0};
  const int shift = 24;
  Real z = x;
  Real corr(0.0);  // log of the product removed by the shift
  for (int j = 0; j < shift; ++j) {
    corr += log(z);
    z += Real(1.0);
  }
  const Real logz = log(z);
  Real s = (z - Real(0.5)) * logz - z + Real(0.5) * log(kPiDD * Real(2.0));
  Real zpow = z;
  const Real z2 = z * z;
  for (int k = 0; k < 12; ++k) {
    const Real b = Real(bern_num[k]) / Real(bern_den[k]);
    const Real term = b / (Real((2.0 * k + 2.0) * (2.0 * k + 1.0)) * zpow);
    s += term;
    zpow *= z2;
  }
  return s - corr;
}

inline Real tgamma(const Real& x) { return exp(lgamma(x)); }

// Complex double-double.
struct Cplx {
  Real re, im;

  Cplx() = default;
  Cplx(const Real& r, const Real& i) : re(r), im(i) {}
  Cplx(double r, double i = 0.0) : re(r), im(i) {}
  Cplx(const Complex& z) : re(z.real()), im(z.imag()) {}  // NOLINT

  Complex to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline Cplx operator+(const Cplx& a, const Cplx& b) {
  return {a.re + b.re, a.im + b.im};
}
inline Cplx operator-(const Cplx& a, const Cplx& b) {
  return {a.re - b.re, a.im - b.im};
}
inline Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
inline Cplx operator*(const Cplx& a, const Cplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cplx operator/(const Cplx& a, const Cplx& b) {
  const Real n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline Cplx& operator+=(Cplx& a, const Cplx& b) { return a = a + b; }
inline Cplx& operator*=(Cplx& a, const Cplx& b) { return a = a * b; }
inline Cplx& operator/=(Cplx& a, const Cplx& b) { return a = a / b; }

inline double abs_estimate(const Cplx& a) {
  return std::hypot(a.re.to_double(), a.im.to_double());
}

}  // namespace ossolve::dd
