#pragma once

// Long-wave limit (r -> 0+) on [0, inf): hypergeometric eigenfunctions of
// the reduced fourth-order equation, the 1F2 dispersion roots, the
// quadratic-profile Hermite modes, and the antiderivative identities that
// serve as this module's test corpus.

#include <cmath>
#include <vector>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"
#include "ossolve/hermite.hpp"
#include "ossolve/hypergeometric.hpp"
#include "ossolve/meanflow.hpp"
#include "ossolve/quadrature.hpp"
#include "ossolve/shortwave.hpp"

namespace ossolve::longwave {

using meanflow::FlowConfig;
using shortwave::Eigenpair;

enum class Case { LinearU, QuadraticSmallDelta };

struct LongWaveMode {
  Case flow_case = Case::LinearU;
  Eigenpair pair;
  double delta = 0.0;  // quadratic coefficient (small)
  double b = 1.0;
  double c = 0.0;
};

// Quadratic long-wave modes are admissible only while the dropped
// curvature term stays subdominant: |delta| <= delta_max, default a tenth
// of the r^2 chi |k| coefficient scale.
inline LongWaveMode make_quadratic_mode(const Eigenpair& pair, double delta,
                                        double b, double c,
                                        const FlowConfig& cfg,
                                        double delta_max = -1.0) {
  if (delta_max < 0.0) {
    delta_max = 0.1 * cfg.r * cfg.r * cfg.chi * std::abs(pair.k);
  }
  if (std::abs(delta) > delta_max) {
    throw DomainError("LongWaveMode: |delta| exceeds the admissibility "
                      "threshold for the small-curvature reduction");
  }
  return {Case::QuadraticSmallDelta, pair, delta, b, c};
}

// The long-wave spectral parameter, distinct from the short-wave Eq-(38)
// lambda stored on Eigenpair: lambda_lw = [omega/k - c - 2k/(i chi)] / b.
inline Complex longwave_lambda(const Eigenpair& pair, double b, double c,
                               double chi) {
  if (b == 0.0) throw DomainError("longwave_lambda: b = 0");
  return (pair.omega / pair.k - c - 2.0 * pair.k / (kI * chi)) / b;
}

// phi_n(y) = (y - lambda)^2 1F2(1/3; 4/3, 5/3; i r^2 chi k b (y-lambda)^3/9)
inline Complex longwave_linear_phi(const Eigenpair& pair, double b,
                                   const FlowConfig& cfg, double y,
                                   double c = 0.0) {
  if (y < 0.0) throw DomainError("longwave_linear_phi: y >= 0 required");
  if (!(cfg.r <= 1.0)) {
    throw DomainError("longwave_linear_phi: long-wave limit needs r <= 1");
  }
  const Complex lam = longwave_lambda(pair, b, c, cfg.chi);
  const Complex dy = y - lam;
  const Complex z =
      kI * cfg.r * cfg.r * cfg.chi * pair.k * b * dy * dy * dy / 9.0;
  return dy * dy *
         specfun::pfq({Complex(1.0 / 3.0)},
                      {Complex(4.0 / 3.0), Complex(5.0 / 3.0)}, z);
}

namespace detail {

inline const specfun::HypergeometricParams& dispersion_params() {
  static const specfun::HypergeometricParams p(
      {Complex(1.0 / 3.0)}, {Complex(2.0 / 3.0), Complex(4.0 / 3.0)});
  return p;
}

// Zeros of w -> 1F2(1/3; 2/3, 4/3; w). There are none on the negative real
// axis: y 1F2(1/3;2/3,4/3;-y^3/9) is the antiderivative of the Airy-type
// 0F1, which tends to the positive constant (2/3)/(2 Ai(0)) while its
// oscillation decays like y^{-3/4}. The zeros sit just off that axis in
// conjugate pairs; in zeta = 2 sqrt(-w) they obey
//   Re zeta_n ~ (2n - 0.435) pi,  Im zeta_n ~ -(log(Re zeta_n)/2 + 0.9).
// Newton refines the asymptotic seed in double precision and two extra
// steps with the double-double series push the residual to the 1e-12
// scale despite the e^{2 sqrt|w|} series cancellation.
inline Complex dispersion_zero(int n) {
  const auto& params = dispersion_params();
  const double re_zeta = (2.0 * n - 0.435) * kPi;
  const Complex zeta(re_zeta, -(0.5 * std::log(re_zeta) + 0.9));
  Complex w = -zeta * zeta / 4.0;

  auto f = [&](const Complex& x) { return specfun::pfq(params, x); };
  auto fd = [&](const Complex& x) {
    return specfun::pfq_derivative(params, x);
  };
  for (int it = 0; it < 60; ++it) {
    const Complex step = f(w) / fd(w);
    w -= step;
    if (std::abs(step) <= 1e-12 * std::abs(w)) break;
  }
  for (int it = 0; it < 3; ++it) {
    w -= specfun::oracle_pfq(params, w) / fd(w);
  }
  // return the Im > 0 member of the conjugate pair
  return (w.imag() >= 0.0) ? w : std::conj(w);
}

}  // namespace detail

// Zeros of the dispersion function with |w| <= W, ordered by modulus.
inline std::vector<Complex> longwave_zero_scan(double W) {
  std::vector<Complex> zeros;
  for (int n = 1;; ++n) {
    // |w_n| ~ ((2n - 0.435) pi)^2 / 4; stop once past W
    const double est = std::pow((2.0 * n - 0.435) * kPi, 2) / 4.0;
    if (est > 1.5 * W && !zeros.empty()) break;
    const Complex w = detail::dispersion_zero(n);
    if (std::abs(w) <= W) {
      zeros.push_back(w);
    } else {
      break;
    }
    if (n > 200) break;
  }
  return zeros;
}

struct LongWaveRoot {
  Eigenpair pair;     // steady (omega = 0); pair.lambda is the Eq-38 value
  Complex w;          // composite argument -i r^2 chi k b lambda_lw^3 / 9
  double f_residual;  // |1F2| at w
};

// Steady (omega = 0) root of the n-th zero condition
// 1F2(1/3; 2/3, 4/3; -i r^2 chi k b lambda^3/9) = 0, lambda the long-wave
// spectral parameter. One scalar condition does not pin (k, omega)
// separately; the steady branch is returned and the (k, lambda) relation
// is recoverable through longwave_lambda.
inline LongWaveRoot longwave_linear_dispersion(int n, double b,
                                               const FlowConfig& cfg,
                                               double c = 0.0) {
  if (b == 0.0) throw DomainError("longwave_linear_dispersion: b = 0");
  if (n < 1) throw DomainError("longwave_linear_dispersion: n >= 1");

  const Complex wn = detail::dispersion_zero(n);

  // steady k: -i r^2 chi k b lambda^3/9 = wn with lambda = (-c + 2ik/chi)/b
  const double r2chi = cfg.r * cfg.r * cfg.chi;
  auto lam_of = [&](const Complex& k) {
    return (-c + 2.0 * kI * k / cfg.chi) / b;
  };
  auto P = [&](const Complex& k) {
    const Complex lam = lam_of(k);
    return -kI * r2chi * k * b * lam * lam * lam / 9.0 - wn;
  };
  auto dP = [&](const Complex& k) {
    const Complex lam = lam_of(k);
    const Complex dlam = 2.0 * kI / (cfg.chi * b);
    return -kI * r2chi * b / 9.0 *
           (lam * lam * lam + k * 3.0 * lam * lam * dlam);
  };
  // c = 0 closed form seed: k^4 = 9 chi^2 b^2 (-wn) / (8 r^2); the
  // principal root has Re(k) > 0 (the tie-break convention)
  Complex k = std::pow(-9.0 * cfg.chi * cfg.chi * b * b * wn /
                           (8.0 * cfg.r * cfg.r),
                       0.25);
  for (int it = 0; it < 100; ++it) {
    const Complex f = P(k);
    if (std::abs(f) <= 1e-13 * (1.0 + std::abs(wn))) break;
    k -= f / dP(k);
  }
  if (!(std::abs(P(k)) <= 1e-10 * (1.0 + std::abs(wn)))) {
    throw NoConvergenceError("longwave_linear_dispersion: Newton stalled");
  }

  LongWaveRoot out;
  out.pair = shortwave::make_eigenpair(n, k, Complex(0.0, 0.0), cfg.chi);
  const Complex lam = lam_of(k);
  out.w = -kI * r2chi * k * b * lam * lam * lam / 9.0;
  out.f_residual =
      std::abs(specfun::oracle_pfq(detail::dispersion_params(), out.w));
  return out;
}

// Quadratic profile Ubar = delta y^2 + b y + c with small delta:
// Psi_m = exp(-sqrt(i R k) mu^2 / 2) H_{2m}((i R k)^{1/4} mu), mu = y + b/(2 delta).
// Even orders keep phi_y(0) = 0. The Gaussian exponent carries the 1/2 the
// change of variables produces.
inline Complex longwave_quadratic_psi(int m, const Eigenpair& pair,
                                      double delta, double b, double R,
                                      double y) {
  if (m < 0) throw DomainError("longwave_quadratic_psi: m >= 0");
  if (delta != 0.0 && std::abs(b / (2.0 * delta)) > 1e6) {
    throw DomainError(
        "longwave_quadratic_psi: |b/(2 delta)| > 1e6, offset meaningless");
  }
  const double mu = y + ((delta != 0.0) ? b / (2.0 * delta) : 0.0);
  const Complex eta = std::pow(kI * R * pair.k, 0.25) * mu;
  return specfun::hermite_weighted(2 * m, eta);
}

// Eigenvalue estimate for the quadratic long-wave branch.
inline Complex longwave_quadratic_k(int m, double R) {
  return 0.5 * Complex(std::sqrt(3.0), 1.0) * std::pow(R / 4.0, 1.0 / 3.0) *
         std::pow(2.0 * m + 0.25, 2.0 / 3.0);
}

// Antiderivative of the ground Hermite mode:
// int_0^mu e^{g t^2} dt = mu 1F1(1/2; 3/2; g mu^2), g = -sqrt(i R k)/2.
inline Complex longwave_quadratic_psi_antiderivative(const Eigenpair& pair,
                                                     double R, double mu) {
  const Complex g = -0.5 * std::sqrt(kI * R * pair.k);
  return mu * specfun::pfq({Complex(0.5)}, {Complex(1.5)}, g * mu * mu);
}

// Second antiderivative: (mu^2/2) 2F2(1/2, 1; 3/2, 2; g mu^2).
inline Complex longwave_quadratic_phi0(const Eigenpair& pair, double R,
                                       double mu) {
  const Complex g = -0.5 * std::sqrt(kI * R * pair.k);
  return 0.5 * mu * mu *
         specfun::pfq({Complex(0.5), Complex(1.0)},
                      {Complex(1.5), Complex(2.0)}, g * mu * mu);
}

// The three antiderivative identities of the hypergeometric toolkit,
// named by the closed form on their right sides:
//   To1F2: double integral of 0F1(;2/3;s y^3/9)     = (y^2/2) 1F2(1/3;4/3,5/3;.)
//   To2F3: double integral of y 0F1(;4/3;s y^3/9)   = (y^3/6) 2F3(2/3,1;4/3,5/3,2;.)
//   To2F2: single integral of y 1F1(1/2;3/2;s y^2)  = (y^2/2) 2F2(1/2,1;3/2,2;.)
enum class AntiderivativeIdentity { To1F2, To2F3, To2F2 };

// Relative residual between the nested-quadrature left side and the
// closed hypergeometric right side of one antiderivative identity, with
// integration constants zero. Term-by-term integration fixes every
// coefficient, including the leading 1/2 of the double-integral cases.
inline double verify_antiderivative(AntiderivativeIdentity id, double y,
                                    const Complex& scale) {
  quad::Options inner_opt;
  inner_opt.abs_tol = 1e-14;
  inner_opt.rel_tol = 1e-12;
  quad::Options outer_opt;
  outer_opt.abs_tol = 1e-13;
  outer_opt.rel_tol = 1e-11;

  Complex lhs, rhs;
  switch (id) {
    case AntiderivativeIdentity::To1F2: {
      auto f = [&](double t) {
        return specfun::pfq({}, {Complex(2.0 / 3.0)},
                            scale * t * t * t / 9.0);
      };
      auto inner = [&](double s) {
        return quad::integrate(f, 0.0, s, inner_opt).value;
      };
      lhs = quad::integrate(inner, 0.0, y, outer_opt).value;
      rhs = 0.5 * y * y *
            specfun::pfq({Complex(1.0 / 3.0)},
                         {Complex(4.0 / 3.0), Complex(5.0 / 3.0)},
                         scale * y * y * y / 9.0);
      break;
    }
    case AntiderivativeIdentity::To2F3: {
      auto f = [&](double t) {
        return t * specfun::pfq({}, {Complex(4.0 / 3.0)},
                                scale * t * t * t / 9.0);
      };
      auto inner = [&](double s) {
        return quad::integrate(f, 0.0, s, inner_opt).value;
      };
      lhs = quad::integrate(inner, 0.0, y, outer_opt).value;
      rhs = y * y * y / 6.0 *
            specfun::pfq({Complex(2.0 / 3.0), Complex(1.0)},
                         {Complex(4.0 / 3.0), Complex(5.0 / 3.0),
                          Complex(2.0)},
                         scale * y * y * y / 9.0);
      break;
    }
    case AntiderivativeIdentity::To2F2: {
      auto f = [&](double t) {
        return t * specfun::pfq({Complex(0.5)}, {Complex(1.5)},
                                scale * t * t);
      };
      lhs = quad::integrate(f, 0.0, y, outer_opt).value;
      rhs = 0.5 * y * y *
            specfun::pfq({Complex(0.5), Complex(1.0)},
                         {Complex(1.5), Complex(2.0)}, scale * y * y);
      break;
    }
  }
  const double denom = std::max(std::abs(rhs), std::abs(lhs));
  if (denom == 0.0) return 0.0;
  return std::abs(lhs - rhs) / denom;
}

struct DecayReport {
  double max_abs = 0.0;
  double end_abs = 0.0;
  double end_ratio = 0.0;
  bool decays = false;
};

// Whether a 1F2 eigenfunction decays along the real ray is not guaranteed;
// this reports the observed behavior per mode.
template <typename F>
DecayReport decay_report(const F& phi, double y_max, int samples = 200) {
  DecayReport rep;
  for (int i = 1; i <= samples; ++i) {
    const double y = y_max * i / samples;
    rep.max_abs = std::max(rep.max_abs, std::abs(phi(y)));
  }
  rep.end_abs = std::abs(phi(y_max));
  rep.end_ratio = (rep.max_abs > 0) ? rep.end_abs / rep.max_abs : 0.0;
  rep.decays = rep.end_ratio < 1e-2;
  return rep;
}

}  // namespace ossolve::longwave
