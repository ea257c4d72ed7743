#pragma once

// Short-wave-limit machinery: the (P,Q) factorization data, the WKB
// quantization rule, dispersion relations for linear/quadratic profiles and
// the sech^2 wake, and complex Newton solvers for the steady eigenvalues.
//
// Branch policy: every fractional power below is the principal branch. The
// closed forms for the steady roots pin the quantization condition only up
// to a root of unity, so the Newton root is authoritative; candidates are
// screened with the branch-free quantization integral and the closed forms
// serve as seeds and diagnostics.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ossolve/airy.hpp"
#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"
#include "ossolve/meanflow.hpp"
#include "ossolve/quadrature.hpp"

namespace ossolve::shortwave {

using meanflow::FlowConfig;
using meanflow::Linear;
using meanflow::MeanProfile;
using meanflow::Quadratic;
using meanflow::Sech2;

// lambda(k, omega) = (i chi omega - k^2) / (i chi k)
inline Complex spectral_lambda(const Complex& k, const Complex& omega,
                               double chi) {
  if (k == Complex(0.0, 0.0)) {
    throw DomainError("spectral_lambda: k = 0");
  }
  return (kI * chi * omega - k * k) / (kI * chi * k);
}

struct Eigenpair {
  int n = 0;
  Complex k{0.0, 0.0};
  Complex omega{0.0, 0.0};
  Complex lambda{0.0, 0.0};
};

inline Eigenpair make_eigenpair(int n, const Complex& k, const Complex& omega,
                                double chi) {
  Eigenpair p;
  p.n = n;
  p.k = ensure_finite(k, "eigenpair k");
  p.omega = ensure_finite(omega, "eigenpair omega");
  p.lambda = ensure_finite(spectral_lambda(k, omega, chi), "eigenpair lambda");
  return p;
}

// The second-order factorization of the short-wave equation:
// P = -r^2 k^2 and Q(y) = i r^2 chi k [lambda - Ubar(y)].
struct FactorizedSystem {
  Complex P;
  std::function<Complex(double)> Q;
  FlowConfig cfg;
  MeanProfile profile;
  Complex k, omega, lambda;
};

inline FactorizedSystem make_factorized(const MeanProfile& profile,
                                        const FlowConfig& cfg,
                                        const Complex& k,
                                        const Complex& omega) {
  FactorizedSystem s;
  s.cfg = cfg;
  s.profile = profile;
  s.k = k;
  s.omega = omega;
  s.lambda = spectral_lambda(k, omega, cfg.chi);
  s.P = -cfg.r * cfg.r * k * k;
  const double r2chi = cfg.r * cfg.r * cfg.chi;
  s.Q = [profile, r2chi, k, lambda = s.lambda](double y) {
    return kI * r2chi * k * (lambda - meanflow::profile_eval(profile, y).U);
  };
  return s;
}

// integral of sqrt(E - V) between two real turning points; the endpoint
// square-root behavior is removed by substitution before the adaptive rule
// sees it.
template <typename V>
Complex wkb_action(const Complex& E, const V& potential, double y0, double y1) {
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-11;
  auto f = [&](double y) { return std::sqrt(E - potential(y)); };
  return quad::integrate_sqrt_endpoints(f, y0, y1, opt).value;
}

// Residual of the quantization rule for the nearest integer n:
// action - (n - 1/4) pi / r.
template <typename V>
Complex wkb_quantization(const Complex& E, const V& potential,
                         std::pair<double, double> turning_points, double r) {
  if (!(r >= 1.0)) {
    throw DomainError("wkb_quantization: short-wave rule needs r >= 1");
  }
  const Complex action =
      wkb_action(E, potential, turning_points.first, turning_points.second);
  const int n =
      std::max(0, static_cast<int>(std::lround(action.real() * r / kPi + 0.25)));
  return action - (n - 0.25) * kPi / r;
}

// --- dispersion relations -------------------------------------------------

// omega_n(k) for Ubar = b y + c. The quantization factor (n - 1/4)^{2/3}
// is a principal complex power so an n = 0 request still returns a value
// (the factor goes negative there; such modes sit outside the WKB counting
// and the caller is expected to treat them as diagnostic only).
inline Complex dispersion_linear(int n, const Complex& k, double b, double c,
                                 const FlowConfig& cfg) {
  if (k == Complex(0.0, 0.0)) throw DomainError("dispersion_linear: k = 0");
  if (b == 0.0) throw DomainError("dispersion_linear: b = 0 has no turning point");
  const Complex C = std::pow(Complex((n - 0.25) * kPi / cfg.r), 2.0 / 3.0);
  const Complex shoot =
      std::pow(3.0 * b * k / (2.0 * std::sqrt(kI * cfg.chi)), 2.0 / 3.0) * C;
  return -kI * k * k / cfg.chi + c * k + shoot;
}

// omega_n(k) for Ubar = a y^2 + b y + c, a > 0.
inline Complex dispersion_quadratic(int n, const Complex& k, double a,
                                    double b, double c,
                                    const FlowConfig& cfg) {
  if (!(a > 0.0)) throw DomainError("dispersion_quadratic: a must be positive");
  if (k == Complex(0.0, 0.0)) throw DomainError("dispersion_quadratic: k = 0");
  return -kI * k * k / cfg.chi - k * (b * b / (4.0 * a) - c) +
         (4.0 / cfg.r) * std::sqrt(a * k / (kI * cfg.chi)) * (n - 0.25);
}

struct WakeDispersion {
  Complex omega;
  Complex vartheta;
};

// Wake profile U0 sech^2(w y): omega_n(k) and the decay exponent
// vartheta_n = -(n + 1/2) + sqrt(-i r^2 k chi U0 / w^2 + 1/4).
inline WakeDispersion wake_dispersion(int n, const Complex& k, double U0,
                                      double w, const FlowConfig& cfg) {
  if (!(U0 > 0.0) || !(w > 0.0)) {
    throw DomainError("wake_dispersion: U0 and w must be positive");
  }
  if (k == Complex(0.0, 0.0)) throw DomainError("wake_dispersion: k = 0");
  const Complex s = std::sqrt(
      -kI * cfg.r * cfg.r * k * cfg.chi * U0 / (w * w) + 0.25);
  WakeDispersion out;
  out.vartheta = -(n + 0.5) + s;
  out.omega = -kI * k * k / cfg.chi - k * w * w * ((n + 0.5) - s);
  return out;
}

// --- closed forms (diagnostics and seeds) ----------------------------------

// |k_n| family for Ubar = y; the closed form carries an unresolved
// root-of-unity factor, so only the modulus is contractual.
inline Complex closed_form_k_linear(int n, const FlowConfig& cfg) {
  const double mag =
      std::sqrt(1.5 * cfg.chi * (n - 0.25) * kPi / cfg.r);
  return mag * std::polar(1.0, kPi / 4.0);  // the "+(1+i)" option
}

inline Complex closed_form_k_quadratic(int n, const FlowConfig& cfg) {
  const double mag = 2.0 * std::pow(2.0 * cfg.chi / (cfg.r * cfg.r), 1.0 / 3.0) *
                     std::pow(n - 0.25, 2.0 / 3.0);
  return mag * std::polar(1.0, kPi / 6.0);  // arg of sqrt(3) + i
}

// The same quadratic closed form re-indexed with n = 2m+1 as quoted for the
// outer solutions: alpha_m = (sqrt3+i)(2 R eps^4)^{1/3} (2m + 3/4)^{2/3}.
inline Complex closed_form_alpha_quadratic_outer(int m, double R, double eps) {
  return (Complex(std::sqrt(3.0), 1.0)) *
         std::pow(2.0 * R * eps * eps * eps * eps, 1.0 / 3.0) *
         std::pow(2.0 * m + 0.75, 2.0 / 3.0);
}

// --- steady-root machinery --------------------------------------------------

namespace detail {

struct NewtonFn {
  std::function<Complex(const Complex&)> f;
  std::function<Complex(const Complex&)> df;
};

// Damped Newton iteration; steps are halved (up to 20 times) until |f|
// decreases. Returns nullopt when 100 iterations do not converge.
inline std::optional<Complex> damped_newton(const NewtonFn& fn, Complex k,
                                            const std::function<double(const Complex&)>& tol) {
  double fk = std::abs(fn.f(k));
  for (int it = 0; it < 100; ++it) {
    if (fk <= tol(k)) return k;
    const Complex d = fn.df(k);
    if (d == Complex(0.0, 0.0) || !is_finite(d)) return std::nullopt;
    Complex step = fn.f(k) / d;
    bool accepted = false;
    for (int h = 0; h < 20; ++h) {
      const Complex trial = k - step;
      if (trial == Complex(0.0, 0.0)) {
        step *= 0.5;
        continue;
      }
      const double ft = std::abs(fn.f(trial));
      if (is_finite(Complex(ft, 0.0)) && ft < fk) {
        k = trial;
        fk = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

// Relative residual of the branch-free quantization check: the straight
// contour integral of sqrt(lambda - Ubar) from 0 to the turning point,
// with the pointwise principal root, against (n-1/4) pi / (r sqrt(i chi k)).
// Works for linear profiles; for quadratic profiles the quarter-circle
// evaluation (lower limit at the well center) is used.
inline double quantization_residual(const Eigenpair& pair,
                                    const MeanProfile& profile,
                                    const FlowConfig& cfg) {
  const Complex rhs =
      (pair.n - 0.25) * kPi / (cfg.r * std::sqrt(kI * cfg.chi * pair.k));
  Complex integral;
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-11;
  if (const auto* lin = std::get_if<Linear>(&profile)) {
    if (lin->b == 0.0) throw DomainError("quantization_residual: b = 0");
    const Complex yt = (pair.lambda - lin->c) / lin->b;  // complex turning point
    auto f = [&](double t) {
      // integrand along the straight contour y = t yt, dy = yt dt
      return std::sqrt((pair.lambda - lin->c) * (1.0 - t)) * yt;
    };
    integral = quad::integrate_sqrt_endpoints(f, 0.0, 1.0, opt).value;
  } else if (const auto* qd = std::get_if<Quadratic>(&profile)) {
    // mu = y + b/2a; integral from mu = 0 to sqrt(Lambda) of
    // sqrt(a) sqrt(Lambda - mu^2), contour mu = t sqrt(Lambda)
    const Complex Lambda =
        (pair.lambda + qd->b * qd->b / (4.0 * qd->a) - qd->c) / qd->a;
    auto f = [&](double t) {
      return std::sqrt(qd->a) * std::sqrt(Lambda * (1.0 - t * t)) *
             std::sqrt(Lambda);
    };
    integral = quad::integrate_sqrt_endpoints(f, 0.0, 1.0, opt).value;
  } else {
    throw DomainError("quantization_residual: wake has no steady quantization");
  }
  return std::abs(integral - rhs) / std::abs(rhs);
}

struct SteadyRootDiagnostics {
  double residual = 0.0;            // |F(k)| at the root, scaled
  double quantization_rel = 0.0;    // branch-free check
  Complex branch_factor{0.0, 0.0};  // k / closed form (unit modulus)
  bool closed_form_available = false;
};

namespace detail {

inline Eigenpair select_steady_root(
    int n, const MeanProfile& profile, const FlowConfig& cfg,
    const NewtonFn& fn, const std::function<double(const Complex&)>& tol,
    const std::vector<Complex>& seeds, const Complex& closed_form,
    bool closed_available, SteadyRootDiagnostics* diag) {
  struct Candidate {
    Complex k;
    double quant;
  };
  std::vector<Candidate> found;
  for (const Complex& seed : seeds) {
    auto root = damped_newton(fn, seed, tol);
    if (!root) continue;
    bool dup = false;
    for (const auto& c : found) {
      if (std::abs(c.k - *root) <= 1e-8 * std::max(std::abs(c.k), 1.0)) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    Eigenpair trial = make_eigenpair(n, *root, Complex(0.0, 0.0), cfg.chi);
    double q = std::numeric_limits<double>::infinity();
    try {
      q = quantization_residual(trial, profile, cfg);
    } catch (const Error&) {
    }
    found.push_back({*root, q});
  }
  if (found.empty()) {
    throw NoConvergenceError(
        "steady eigenvalue: Newton failed from every seed (n=" +
        std::to_string(n) + ")");
  }
  // Roots passing the branch-free quantization check first; ties broken
  // toward Re(k) > 0, Im(k) >= 0, then lexicographically. Deterministic.
  auto rank = [](const Candidate& c) {
    const bool quant_ok = c.quant <= 1e-6;
    const bool sign_ok = c.k.real() > 0.0 && c.k.imag() >= 0.0;
    return std::tuple(!quant_ok, !sign_ok, -c.k.real(), -c.k.imag());
  };
  std::sort(found.begin(), found.end(),
            [&](const Candidate& a, const Candidate& b) {
              return rank(a) < rank(b);
            });
  const Candidate best = found.front();
  Eigenpair pair = make_eigenpair(n, best.k, Complex(0.0, 0.0), cfg.chi);
  if (diag) {
    diag->residual = std::abs(fn.f(best.k));
    diag->quantization_rel = best.quant;
    diag->closed_form_available = closed_available;
    diag->branch_factor =
        closed_available ? best.k / closed_form : Complex(0.0, 0.0);
  }
  return pair;
}

}  // namespace detail

// Steady (omega = 0) eigenvalue for Ubar = b y + c: Newton on
// F(k) = i k^2/chi - c k - (3 b k / (2 sqrt(i chi)))^{2/3} ((n-1/4) pi/r)^{2/3}.
// The closed-form seed direction arg = pi/4 is the exact symmetry axis
// between the two principal-branch roots of F (F maps that ray into the
// negative reals), so rotated copies of the seed are tried as well and the
// root that passes the branch-free quantization check is returned.
inline Eigenpair steady_eigen_linear(int n, double b, double c,
                                     const FlowConfig& cfg,
                                     SteadyRootDiagnostics* diag = nullptr) {
  if (b == 0.0) throw DomainError("steady_eigen_linear: b = 0");
  if (n < 1) throw DomainError("steady_eigen_linear: n >= 1 required");
  const double chi = cfg.chi;
  const double C = std::pow((n - 0.25) * kPi / cfg.r, 2.0 / 3.0);
  const Complex half_sqrt = 2.0 * std::sqrt(kI * chi);

  detail::NewtonFn fn;
  fn.f = [=](const Complex& k) {
    return kI * k * k / chi - c * k -
           std::pow(3.0 * b * k / half_sqrt, 2.0 / 3.0) * C;
  };
  fn.df = [=](const Complex& k) {
    return 2.0 * kI * k / chi - c -
           (2.0 / 3.0) * std::pow(3.0 * b * k / half_sqrt, 2.0 / 3.0) * C / k;
  };
  auto tol = [chi](const Complex& k) {
    return 1e-12 * (1.0 + std::norm(k) / chi);
  };

  const double mag =
      std::sqrt(3.0 * std::abs(b) * chi * (n - 0.25) * kPi / (2.0 * cfg.r));
  std::vector<Complex> seeds;
  for (int j = 0; j < 8; ++j) {
    seeds.push_back(mag * std::polar(1.0, kPi / 4.0 + j * kPi / 4.0));
  }
  if (c != 0.0) {
    // c-dominated branch: k near -i c chi
    seeds.push_back(-kI * c * chi);
    seeds.push_back(-kI * c * chi * 1.3);
  }
  const bool have_closed = (b == 1.0 && c == 0.0);
  return detail::select_steady_root(n, Linear{b, c}, cfg, fn, tol, seeds,
                                    closed_form_k_linear(n, cfg), have_closed,
                                    diag);
}

// Steady eigenvalue for Ubar = a y^2 + b y + c, a > 0: Newton on the
// quadratic-profile dispersion with the same multi-seed branch screening.
inline Eigenpair steady_eigen_quadratic(int n, double a, double b, double c,
                                        const FlowConfig& cfg,
                                        SteadyRootDiagnostics* diag = nullptr) {
  if (!(a > 0.0)) throw DomainError("steady_eigen_quadratic: a must be positive");
  if (n < 1) throw DomainError("steady_eigen_quadratic: n >= 1 required");
  const double chi = cfg.chi;
  const double coef = b * b / (4.0 * a) - c;
  const double amp = 4.0 * (n - 0.25) / cfg.r;

  detail::NewtonFn fn;
  fn.f = [=](const Complex& k) {
    return kI * k * k / chi + coef * k - amp * std::sqrt(a * k / (kI * chi));
  };
  fn.df = [=](const Complex& k) {
    return 2.0 * kI * k / chi + coef -
           0.5 * amp * std::sqrt(a * k / (kI * chi)) / k;
  };
  auto tol = [chi](const Complex& k) {
    return 1e-12 * (1.0 + std::norm(k) / chi);
  };

  const double mag = std::abs(closed_form_k_quadratic(n, cfg));
  std::vector<Complex> seeds;
  for (int j = 0; j < 8; ++j) {
    seeds.push_back(mag * std::polar(1.0, kPi / 6.0 + j * kPi / 4.0));
  }
  if (coef != 0.0) {
    seeds.push_back(kI * coef * chi);
    seeds.push_back(-kI * coef * chi);
  }
  const bool have_closed = (a == 1.0 && b == 0.0 && c == 0.0);
  return detail::select_steady_root(n, Quadratic{a, b, c}, cfg, fn, tol, seeds,
                                    closed_form_k_quadratic(n, cfg), have_closed,
                                    diag);
}

// Sharpens a WKB steady root of the linear profile to the eigenvalue of the
// exact Airy condition Ai((i r^2 chi k b)^{1/3} (0 - (lambda-c)/b)) = 0.
// The WKB zero sits O((n-1/4)^{-2}) away from the true Airy zero, which is
// what limits how well the WKB mode satisfies the inner boundary condition.
inline Eigenpair airy_refined_eigen_linear(int n, double b, double c,
                                           const FlowConfig& cfg) {
  const Eigenpair seed = steady_eigen_linear(n, b, c, cfg);
  const double r2chi = cfg.r * cfg.r * cfg.chi;

  auto zeta0 = [&](const Complex& k) {
    const Complex lam = spectral_lambda(k, Complex(0.0, 0.0), cfg.chi);
    const Complex scale = std::pow(kI * r2chi * k * b, 1.0 / 3.0);
    return -scale * (lam - c) / b;
  };
  detail::NewtonFn fn;
  fn.f = [&](const Complex& k) { return specfun::airy_ai(zeta0(k)); };
  fn.df = [&](const Complex& k) {
    const Complex z0 = zeta0(k);
    const Complex scale = std::pow(kI * r2chi * k * b, 1.0 / 3.0);
    // d zeta0/dk = zeta0/(3k) - scale * (d lambda/dk)/b, lambda = i k/chi
    const Complex dz = z0 / (3.0 * k) - scale * (kI / cfg.chi) / b;
    return specfun::airy_ai_prime(z0) * dz;
  };
  auto tol = [](const Complex&) { return 1e-13; };
  auto root = detail::damped_newton(fn, seed.k, tol);
  if (!root) {
    throw NoConvergenceError("airy_refined_eigen_linear: Newton stalled");
  }
  return make_eigenpair(n, *root, Complex(0.0, 0.0), cfg.chi);
}

}  // namespace ossolve::shortwave
