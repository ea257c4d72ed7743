#pragma once

// Closed-form Psi_n solutions of the factorized second-order equation
// Psi_yy + Q Psi = 0 for the three mean-flow profiles:
//   linear     -> Airy, Psi = Ai[(i r^2 chi k b)^{1/3} (y - (lambda-c)/b)]
//   quadratic  -> Gaussian-weighted odd Hermite in
//                 eta = (i r^2 chi k a)^{1/4} (y + b/(2a))
//   sech^2     -> cosh^{-vartheta}(w y) 2F1(..., sigma(y)), sigma = 1-tanh(w y)
//
// The Hermite weight is exp(-eta^2/2): that is what the change of variables
// produces and what the defining equation requires (a commonly dropped
// factor 1/2). Likewise the Airy shift is the turning point (lambda - c)/b.
// Modes are unnormalized; any normalization is the caller's choice.

#include <cmath>
#include <utility>
#include <variant>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"
#include "ossolve/shortwave.hpp"
#include "ossolve/specfun.hpp"

namespace ossolve::eigenfunctions {

using meanflow::FlowConfig;
using shortwave::Eigenpair;

enum class PsiKind { Airy, Hermite, Hypergeometric2F1 };

class PsiMode {
 public:
  PsiKind kind() const { return kind_; }
  const Eigenpair& pair() const { return pair_; }
  Complex scale() const { return scale_; }
  Complex shift() const { return shift_; }

  Complex operator()(double y) const {
    switch (kind_) {
      case PsiKind::Airy:
        return specfun::airy_ai(scale_ * (y - shift_));
      case PsiKind::Hermite:
        return specfun::hermite_weighted(order_, scale_ * (y + shift_));
      case PsiKind::Hypergeometric2F1: {
        // The classical Poschl-Teller argument (1 - tanh(w y))/2: the
        // defining equation is only satisfied with the half, verified
        // against direct integration.
        const Complex sigma = 0.5 * (1.0 - std::tanh(width_ * y));
        const Complex f = specfun::hyp2f1(0.5 + vartheta_ + s_,
                                          0.5 + vartheta_ - s_,
                                          1.0 + vartheta_, sigma);
        // cosh^{-vartheta} evaluated in log scale
        const Complex logc(log_cosh(width_ * y), 0.0);
        return f * std::exp(-vartheta_ * logc);
      }
    }
    throw Error("PsiMode: unreachable");
  }

  // Decay exponent of the wake mode (Re > 0 means the mode decays).
  Complex vartheta() const { return vartheta_; }

  friend PsiMode psi_linear(const Eigenpair&, double, double,
                            const FlowConfig&);
  friend PsiMode psi_quadratic(int, const Eigenpair&, double, double,
                               const FlowConfig&);
  friend PsiMode psi_wake(int, const Eigenpair&, double, double,
                          const FlowConfig&);

 private:
  PsiKind kind_ = PsiKind::Airy;
  Eigenpair pair_;
  Complex scale_{0.0, 0.0};
  Complex shift_{0.0, 0.0};
  int order_ = 0;        // Hermite order
  Complex s_{0.0, 0.0};  // wake: sqrt(-i r^2 k chi U0 / w^2 + 1/4)
  Complex vartheta_{0.0, 0.0};
  double width_ = 1.0;   // wake: w
};

inline PsiMode psi_linear(const Eigenpair& pair, double b, double c,
                          const FlowConfig& cfg) {
  if (b == 0.0) throw DomainError("psi_linear: b = 0");
  PsiMode m;
  m.kind_ = PsiKind::Airy;
  m.pair_ = pair;
  m.scale_ = std::pow(kI * cfg.r * cfg.r * cfg.chi * pair.k * b, 1.0 / 3.0);
  m.shift_ = (pair.lambda - c) / b;  // the turning point
  return m;
}

// Ubar = a y^2 + b y + c; only odd Hermite orders satisfy the inner
// boundary condition, so the mode index m maps to order 2m+1.
inline PsiMode psi_quadratic(int m, const Eigenpair& pair, double a, double b,
                             const FlowConfig& cfg) {
  if (!(a > 0.0)) throw DomainError("psi_quadratic: a must be positive");
  if (m < 0) throw DomainError("psi_quadratic: m must be non-negative");
  PsiMode mode;
  mode.kind_ = PsiKind::Hermite;
  mode.pair_ = pair;
  mode.order_ = 2 * m + 1;
  mode.scale_ = std::pow(kI * cfg.r * cfg.r * cfg.chi * pair.k * a, 0.25);
  mode.shift_ = b / (2.0 * a);
  return mode;
}

inline PsiMode psi_wake(int n, const Eigenpair& pair, double U0, double w,
                        const FlowConfig& cfg) {
  if (!(U0 > 0.0) || !(w > 0.0)) {
    throw DomainError("psi_wake: U0 and w must be positive");
  }
  const auto disp = shortwave::wake_dispersion(n, pair.k, U0, w, cfg);
  if (is_nonpositive_integer(1.0 + disp.vartheta, 1e-12)) {
    throw DomainError("psi_wake: 1 + vartheta_n is a non-positive integer "
                      "(Gamma pole in the hypergeometric series)");
  }
  PsiMode m;
  m.kind_ = PsiKind::Hypergeometric2F1;
  m.pair_ = pair;
  m.s_ = std::sqrt(-kI * cfg.r * cfg.r * pair.k * cfg.chi * U0 / (w * w) + 0.25);
  m.vartheta_ = disp.vartheta;
  m.width_ = w;
  return m;
}

// Eigenvalue of the wake Schrodinger equation that the hypergeometric mode
// actually satisfies: i r^2 chi k lambda = -w^2 vartheta_n^2, forced by the
// cosh^{-vartheta} tail. The dispersion relation assigns a different
// lambda; residual checks must use this one.
inline Complex wake_spectral_lambda(int n, const Complex& k, double U0,
                                    double w, const FlowConfig& cfg) {
  const auto disp = shortwave::wake_dispersion(n, k, U0, w, cfg);
  const Complex vt = disp.vartheta;
  return -w * w * vt * vt / (kI * cfg.r * cfg.r * cfg.chi * k);
}

struct BoundaryReport {
  double boundary_abs = 0.0;
  double max_abs = 0.0;
  double ratio = 0.0;
};

// |Psi| at the inner boundary relative to its maximum on the grid.
template <typename F>
BoundaryReport boundary_check(const F& psi, double boundary_y,
                              const std::vector<double>& grid) {
  BoundaryReport r;
  r.boundary_abs = std::abs(psi(boundary_y));
  for (double y : grid) r.max_abs = std::max(r.max_abs, std::abs(psi(y)));
  r.ratio = (r.max_abs > 0.0) ? r.boundary_abs / r.max_abs : 0.0;
  return r;
}

}  // namespace ossolve::eigenfunctions
