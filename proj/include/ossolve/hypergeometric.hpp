#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ossolve/complex_utils.hpp"
#include "ossolve/dd.hpp"
#include "ossolve/errors.hpp"
#include "ossolve/gamma.hpp"

namespace ossolve::specfun {

// Parameter lists of the generalized hypergeometric series pFq.
struct HypergeometricParams {
  std::vector<Complex> upper;
  std::vector<Complex> lower;

  HypergeometricParams(std::vector<Complex> a, std::vector<Complex> b)
      : upper(std::move(a)), lower(std::move(b)) {
    for (const auto& bj : lower) {
      if (is_nonpositive_integer(bj)) {
        throw DomainError(
            "pFq: lower parameter is zero or a negative integer");
      }
    }
  }

  // Index after which every series term vanishes, if some upper parameter
  // is a non-positive integer (the series is then a polynomial).
  std::optional<int> terminating_order() const {
    std::optional<int> n;
    for (const auto& a : upper) {
      if (is_nonpositive_integer(a)) {
        const int m = static_cast<int>(std::llround(-a.real()));
        n = n ? std::min(*n, m) : m;
      }
    }
    return n;
  }
};

struct PfqResult {
  Complex value;
  double truncation_error;  // estimated, from the last retained terms
  int terms;
};

namespace detail {

constexpr int kPfqMaxTerms = 10000;
constexpr double kPfqRelTol = 1e-16;

inline Complex complex_of(const Complex& z) { return z; }
inline Complex complex_of(const dd::Cplx& z) { return z.to_complex(); }
inline double abs_of(const Complex& z) { return std::abs(z); }
inline double abs_of(const dd::Cplx& z) { return dd::abs_estimate(z); }

inline void check_pfq_domain(const HypergeometricParams& p, const Complex& z) {
  const auto nterm = p.terminating_order();
  const std::size_t P = p.upper.size(), Q = p.lower.size();
  if (nterm) return;  // polynomial: converges everywhere
  if (P > Q + 1) {
    throw DomainError("pFq: p > q+1 diverges for z != 0");
  }
  if (P == Q + 1 && std::abs(z) >= 1.0) {
    throw DomainError("pFq: p = q+1 series requires |z| < 1");
  }
}

// Shared series driver; Number is Complex (working precision) or dd::Cplx.
template <typename Number>
PfqResult pfq_series(const HypergeometricParams& p, const Complex& z,
                     double rel_tol) {
  check_pfq_domain(p, z);
  const auto nterm = p.terminating_order();

  Number term(1.0);
  Number sum(1.0);
  const Number zz(z);
  int small_streak = 0;
  double last_abs = 0.0;

  for (int n = 0; n < kPfqMaxTerms; ++n) {
    if (nterm && n >= *nterm) {
      return {complex_of(sum), 0.0, n};
    }
    Number ratio = zz / Number(static_cast<double>(n + 1));
    for (const auto& a : p.upper) ratio *= Number(a + static_cast<double>(n));
    for (const auto& b : p.lower) ratio /= Number(b + static_cast<double>(n));
    term *= ratio;
    sum += term;

    last_abs = abs_of(term);
    if (last_abs <= rel_tol * abs_of(sum)) {
      // single small terms can precede larger ones for complex z
      if (++small_streak >= 3) {
        return {complex_of(sum), last_abs, n + 1};
      }
    } else {
      small_streak = 0;
    }
  }
  throw ConvergenceError("pFq: no convergence within 10000 terms");
}

}  // namespace detail

// Generalized hypergeometric series, Pochhammer term-ratio recurrence with
// a relative stop rule of 1e-16 held for three consecutive terms.
inline PfqResult pfq_full(const HypergeometricParams& p, const Complex& z) {
  return detail::pfq_series<Complex>(p, z, detail::kPfqRelTol);
}

inline Complex pfq(const HypergeometricParams& p, const Complex& z) {
  return pfq_full(p, z).value;
}

inline Complex pfq(std::vector<Complex> upper, std::vector<Complex> lower,
                   const Complex& z) {
  return pfq(HypergeometricParams(std::move(upper), std::move(lower)), z);
}

// Test oracle: the same series summed in double-double (~31 digits).
// `digits` is the requested precision; anything beyond double-double is
// rejected rather than silently degraded.
inline Complex oracle_pfq(const HypergeometricParams& p, const Complex& z,
                          int digits = 25) {
  if (digits > 30) {
    throw DomainError("oracle_pfq: more than 30 digits not supported");
  }
  const double tol = std::pow(10.0, -std::max(digits + 3, 20));
  return detail::pfq_series<dd::Cplx>(p, z, tol).value;
}

// d/dz pFq = (prod a / prod b) * pFq(a+1; b+1; z)
inline Complex pfq_derivative(const HypergeometricParams& p, const Complex& z) {
  Complex factor = 1.0;
  std::vector<Complex> up, lo;
  up.reserve(p.upper.size());
  lo.reserve(p.lower.size());
  for (const auto& a : p.upper) {
    factor *= a;
    up.push_back(a + 1.0);
  }
  for (const auto& b : p.lower) {
    factor /= b;
    lo.push_back(b + 1.0);
  }
  return factor * pfq(std::move(up), std::move(lo), z);
}

// Gauss 2F1 with the linear transformations z -> z/(z-1) (Pfaff) and
// z -> 1-z, applied so the series is summed at modulus <= ~0.6. Terminating
// cases bypass the transformations entirely (the series is a polynomial,
// valid for any z); that path is the one the wake solution exercises with
// sigma in (0, 2).
inline Complex hyp2f1(const Complex& a, const Complex& b, const Complex& c,
                      const Complex& z, int depth = 0) {
  std::optional<int> nt;
  for (const Complex& u : {a, b}) {
    if (is_nonpositive_integer(u)) {
      const int m = static_cast<int>(std::llround(-u.real()));
      nt = nt ? std::min(*nt, m) : m;
    }
  }
  if (is_nonpositive_integer(c)) {
    // Allowed only when an upper parameter terminates the series first.
    const int cpole = static_cast<int>(std::llround(-c.real()));
    if (!nt || *nt > cpole) {
      throw DomainError("2F1: lower parameter pole before termination");
    }
    // terminating polynomial; sum directly with the raw recurrence
    Complex term = 1.0, sum = 1.0;
    for (int n = 0; n < *nt; ++n) {
      term *= (a + static_cast<double>(n)) * (b + static_cast<double>(n)) /
              ((c + static_cast<double>(n)) * static_cast<double>(n + 1)) * z;
      sum += term;
    }
    return sum;
  }

  const HypergeometricParams params({a, b}, {c});
  if (nt || std::abs(z) <= 0.6) {
    return pfq(params, z);
  }

  // Transformation menu: z/(z-1) (Pfaff) and 1-z (connection). The
  // connection coefficients hit Gamma poles when c-a-b is an integer; in
  // that case fall through to the next usable path and only signal
  // DomainError when nothing converges.
  const double m_direct = std::abs(z);
  const double m_pfaff = std::abs(z / (z - 1.0));
  const double m_conn = std::abs(1.0 - z);
  const Complex cab = c - a - b;
  const bool conn_ok = depth < 3 && !is_nonpositive_integer(cab) &&
                       !is_nonpositive_integer(-cab);

  const auto by_pfaff = [&] {
    return std::pow(1.0 - z, -a) *
           hyp2f1(a, c - b, c, z / (z - 1.0), depth + 1);
  };
  const auto by_connection = [&] {
    const Complex w = 1.0 - z;
    const Complex t1 = gamma(c) * gamma(cab) / (gamma(c - a) * gamma(c - b)) *
                       hyp2f1(a, b, a + b - c + 1.0, w, depth + 1);
    const Complex t2 = std::pow(w, cab) * gamma(c) * gamma(-cab) /
                       (gamma(a) * gamma(b)) *
                       hyp2f1(c - a, c - b, cab + 1.0, w, depth + 1);
    return t1 + t2;
  };

  if (m_pfaff <= 0.6 && depth < 3) return by_pfaff();
  if (m_conn <= 0.6 && conn_ok) return by_connection();
  if (m_direct < 0.95) return pfq(params, z);  // convergent, possibly slowly
  if (m_pfaff < 0.95 && depth < 3) return by_pfaff();
  if (m_conn < 0.95 && conn_ok) return by_connection();
  if (m_direct < 1.0) return pfq(params, z);
  throw DomainError("2F1: argument outside all implemented paths "
                    "(integer c-a-b blocks the 1-z connection)");
}

}  // namespace ossolve::specfun
