#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ossolve/eigenfunctions.hpp"
#include "ossolve/fdcheck.hpp"

using namespace ossolve;
using namespace ossolve::eigenfunctions;
using namespace ossolve::shortwave;
using meanflow::FlowConfig;

namespace {

FlowConfig cfg_default() { return FlowConfig::from_r_chi(10.0, 1000.0); }

// Relative residual of Psi'' + Q Psi = 0 with a 6th-order stencil.
// q_char is the characteristic size of Q over the well; it keeps the
// denominator meaningful at turning points, where both terms vanish.
// h_override replaces the default step where the evaluation noise of psi
// itself (not plain rounding) limits the difference quotient.
template <typename F, typename Q>
double ode_residual(const F& psi, const Q& q, double y, double q_char = 0.0,
                    double h_override = 0.0) {
  const double h = (h_override > 0.0) ? h_override : fdcheck::step_second(y);
  const Complex d2 = fdcheck::second_derivative(psi, y, h);
  const Complex qterm = q(y) * psi(y);
  const double scale =
      std::max({std::abs(d2), std::abs(qterm), q_char * std::abs(psi(y))});
  if (scale == 0.0) return 0.0;
  return std::abs(d2 + qterm) / scale;
}

}  // namespace

TEST(PsiLinear, DecaysBeyondTurningPoint) {
  const auto cfg = cfg_default();
  const auto pair = steady_eigen_linear(5, 1.0, 0.0, cfg);
  const auto mode = psi_linear(pair, 1.0, 0.0, cfg);
  const double yt = pair.lambda.real();
  double prev = std::abs(mode(yt * 1.05));
  for (double y = yt * 1.15; y < yt * 3.0; y += yt * 0.1) {
    const double cur = std::abs(mode(y));
    EXPECT_LT(cur, prev) << "y=" << y;
    prev = cur;
  }
}

TEST(PsiLinear, BoundaryValueAtWkbAndRefinedEigenvalues) {
  // The WKB eigenvalue places an Airy zero at the boundary only to the
  // accuracy of the quantization rule, O((n-1/4)^{-2}); ~1e-3 of the peak
  // at n = 5. The Airy-refined eigenvalue drives it below 1e-6 of the peak.
  const auto cfg = cfg_default();
  std::vector<double> grid;
  for (double y = 0.0; y <= 0.2; y += 0.002) grid.push_back(y);

  const auto wkb = steady_eigen_linear(5, 1.0, 0.0, cfg);
  const auto mode_wkb = psi_linear(wkb, 1.0, 0.0, cfg);
  const auto rep_wkb = boundary_check(mode_wkb, 0.0, grid);
  EXPECT_LE(rep_wkb.ratio, 5e-3);

  const auto refined = airy_refined_eigen_linear(5, 1.0, 0.0, cfg);
  const auto mode_ref = psi_linear(refined, 1.0, 0.0, cfg);
  const auto rep_ref = boundary_check(mode_ref, 0.0, grid);
  EXPECT_LE(rep_ref.ratio, 1e-6);
}

TEST(PsiLinear, OdeResidualInterior) {
  // Psi'' - i r^2 chi k (b y + c - lambda) Psi = 0 at 50 interior points,
  // also with a complex wavenumber from the unsteady dispersion branch.
  const auto cfg = cfg_default();

  const auto steady = steady_eigen_linear(4, 1.0, 0.0, cfg);
  const auto complex_pair = make_eigenpair(
      4, Complex(1.0, 0.0), dispersion_linear(4, Complex(1.0, 0.0), 1.0, 0.2, cfg),
      cfg.chi);

  struct Case {
    Eigenpair pair;
    double b, c;
  };
  for (const auto& tc : {Case{steady, 1.0, 0.0}, Case{complex_pair, 1.0, 0.2}}) {
    const auto mode = psi_linear(tc.pair, tc.b, tc.c, cfg);
    const double r2chi = cfg.r * cfg.r * cfg.chi;
    auto q = [&](double y) {
      return -kI * r2chi * tc.pair.k * (tc.b * y + tc.c - tc.pair.lambda);
    };
    const double yt = std::abs(mode.shift());
    const double q_char = r2chi * std::abs(tc.pair.k) *
                          std::abs(tc.pair.lambda - tc.c);
    for (int i = 1; i <= 50; ++i) {
      const double y = 2.5 * yt * i / 50.0;
      EXPECT_LE(ode_residual(mode, q, y, q_char), 1e-6) << "y=" << y;
    }
  }
}

TEST(PsiQuadratic, VanishesExactlyAtOriginWhenCentered) {
  const auto cfg = cfg_default();
  const auto pair = steady_eigen_quadratic(2, 1.0, 0.0, 0.0, cfg);
  for (int m : {0, 1, 3}) {
    const auto mode = psi_quadratic(m, pair, 1.0, 0.0, cfg);
    EXPECT_EQ(mode(0.0), Complex(0.0, 0.0)) << "m=" << m;
  }
}

TEST(PsiQuadratic, OdeResidualInterior) {
  // Psi'' - i r^2 chi k (a y^2 + b y + c - lambda) Psi = 0 with the
  // Hermite eigenvalue relation folded into lambda: the Weber equation
  // eta^2 - (2l+1) fixes i r^2 chi k lambda = scale^2 (2l+1) - offset terms.
  const auto cfg = cfg_default();
  const int m = 1;  // order 3
  const double a = 1.0, b = 0.0, c = 0.0;
  // Build the pair whose lambda satisfies the exact Hermite condition:
  // r sqrt(i chi k a) * (lambda + b^2/4a - c) / a = 2(2m+1)+1... the mode
  // evaluator only uses k through the scale, so pick k from the steady
  // solver and recompute the consistent lambda for the residual check.
  const auto seed = steady_eigen_quadratic(m + 1, a, b, c, cfg);
  const Complex k = seed.k;
  const Complex scale2 =
      std::sqrt(kI * cfg.r * cfg.r * cfg.chi * k * a);  // eta-scale squared
  const int order = 2 * m + 1;
  const Complex lambda_exact =
      scale2 * static_cast<double>(2 * order + 1) /
          (kI * cfg.r * cfg.r * cfg.chi * k) -
      b * b / (4.0 * a) + c;
  Eigenpair pair;
  pair.n = m;
  pair.k = k;
  pair.lambda = lambda_exact;
  const auto mode = psi_quadratic(m, pair, a, b, cfg);
  const double r2chi = cfg.r * cfg.r * cfg.chi;
  auto q = [&](double y) {
    return -kI * r2chi * k * (a * y * y + b * y + c - lambda_exact);
  };
  // interior points across the oscillatory well
  const double span = 3.0 / std::sqrt(std::abs(scale2));
  for (int i = 1; i <= 50; ++i) {
    const double y = span * i / 50.0;
    EXPECT_LE(ode_residual(mode, q, y), 1e-6) << "y=" << y;
  }
}

TEST(PsiQuadratic, SingleSignStructureForGroundMode) {
  // m = 0, b = 0: Psi ~ eta exp(-eta^2/2); no zero crossing on (0, inf).
  const auto cfg = cfg_default();
  const auto pair = steady_eigen_quadratic(1, 1.0, 0.0, 0.0, cfg);
  const auto mode = psi_quadratic(0, pair, 1.0, 0.0, cfg);
  const double s = std::abs(mode.scale());
  int crossings = 0;
  Complex prev = mode(0.05 / s);
  for (double y = 0.1 / s; y < 6.0 / s; y += 0.05 / s) {
    const Complex cur = mode(y);
    // count sign changes of the dominant (real-after-rotation) part
    if ((cur / prev).real() < 0.0) ++crossings;
    prev = cur;
  }
  EXPECT_EQ(crossings, 0);
}

TEST(PsiWake, DecayAndSeriesEndpoint) {
  const auto cfg = FlowConfig::from_r_chi(10.0, 10.0);
  const Complex k(1.0, 0.0);
  const double U0 = 1.0, w = 1.0;
  const auto disp = wake_dispersion(0, k, U0, w, cfg);
  const auto pair = make_eigenpair(0, k, disp.omega, cfg.chi);
  const auto mode = psi_wake(0, pair, U0, w, cfg);
  EXPECT_GT(mode.vartheta().real(), 0.0);  // decaying mode
  // sigma -> 0 as y -> +inf: 2F1 -> 1, Psi ~ cosh^{-vartheta}
  double prev = std::abs(mode(2.0));
  for (double y = 3.0; y <= 8.0; y += 1.0) {
    const double cur = std::abs(mode(y));
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(PsiWake, OdeResidualUsesTailConsistentLambda) {
  // Psi'' - i r^2 chi k [U0 sech^2(w y) - lambda] Psi = 0 on [-5, 5] with
  // the eigenvalue the cosh tail forces: i r^2 chi k lambda = -w^2 vt^2.
  const auto cfg = FlowConfig::from_r_chi(10.0, 10.0);
  const Complex k(1.0, 0.0);
  const double U0 = 1.0, w = 1.0;
  for (int n : {0, 1, 2}) {
    const auto disp = wake_dispersion(n, k, U0, w, cfg);
    const auto pair = make_eigenpair(n, k, disp.omega, cfg.chi);
    const auto mode = psi_wake(n, pair, U0, w, cfg);
    const Complex lam = wake_spectral_lambda(n, k, U0, w, cfg);
    const double r2chi = cfg.r * cfg.r * cfg.chi;
    auto q = [&](double y) {
      const double sech = 1.0 / std::cosh(w * y);
      return -kI * r2chi * k * (U0 * sech * sech - lam);
    };
    const double q_char = r2chi * std::abs(k) * U0;
    const double h = 0.016 / std::sqrt(q_char);
    for (double y = -5.0; y <= 5.0; y += 0.5) {
      if (std::abs(mode(y)) < 1e-12) continue;  // relative check needs signal
      EXPECT_LE(ode_residual(mode, q, y, q_char, h), 1e-6)
          << "n=" << n << " y=" << y;
    }
  }
}

TEST(PsiWake, MatchesDirectIntegrationOracle) {
  // RK4-integrate the wake equation from the asymptotic tail inward and
  // compare shapes after normalizing at y = 0; an implementation-free check
  // that Eq-level algebra (vartheta, sigma, the 2F1 polynomial) is right.
  const auto cfg = FlowConfig::from_r_chi(5.0, 4.0);
  const Complex k(0.8, 0.0);
  const double U0 = 1.2, w = 1.1;
  const int n = 1;
  const auto disp = wake_dispersion(n, k, U0, w, cfg);
  const auto pair = make_eigenpair(n, k, disp.omega, cfg.chi);
  const auto mode = psi_wake(n, pair, U0, w, cfg);
  const Complex lam = wake_spectral_lambda(n, k, U0, w, cfg);
  const double r2chi = cfg.r * cfg.r * cfg.chi;
  auto rhs = [&](double y, const Complex& psi) {
    const double sech = 1.0 / std::cosh(w * y);
    return kI * r2chi * k * (U0 * sech * sech - lam) * psi;  // psi''
  };

  const double y0 = 7.0;
  const double h = -1e-3;
  // start on the decaying tail: psi ~ e^{-vt w y}, psi' = -vt w psi
  const Complex vt = mode.vartheta();
  Complex psi = mode(y0);
  Complex dpsi = -vt * w * psi;
  double y = y0;
  // y = 0 is excluded: the n = 1 mode crosses zero at the well center and
  // a relative comparison is meaningless there.
  std::vector<double> samples{5.0, 3.0, 1.5, 0.5, -0.5, -1.5};
  std::size_t si = 0;
  double worst = 0.0;
  while (y > -2.0 && si < samples.size()) {
    // RK4 step for the first-order system (psi, dpsi)
    auto f = [&](double t, const Complex& p, const Complex& dp) {
      return std::pair<Complex, Complex>(dp, rhs(t, p));
    };
    const auto [k1p, k1d] = f(y, psi, dpsi);
    const auto [k2p, k2d] = f(y + h / 2, psi + h / 2 * k1p, dpsi + h / 2 * k1d);
    const auto [k3p, k3d] = f(y + h / 2, psi + h / 2 * k2p, dpsi + h / 2 * k2d);
    const auto [k4p, k4d] = f(y + h, psi + h * k3p, dpsi + h * k3d);
    psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    y += h;
    if (si < samples.size() && y <= samples[si] + 1e-9) {
      const Complex closed = mode(y);  // compare at the actual grid point
      const double err = std::abs(psi - closed) /
                         std::max(std::abs(closed), std::abs(psi));
      worst = std::max(worst, err);
      ++si;
    }
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(PsiWake, DegenerateDepthReducesToPurePower) {
  // U0 -> 0, n = 0: the 2F1 degenerates to 1 and Psi -> cosh^{-vartheta}.
  const auto cfg = FlowConfig::from_r_chi(10.0, 10.0);
  const Complex k(1.0, 0.0);
  const double U0 = 1e-12, w = 1.0;
  const auto disp = wake_dispersion(0, k, U0, w, cfg);
  const auto pair = make_eigenpair(0, k, disp.omega, cfg.chi);
  const auto mode = psi_wake(0, pair, U0, w, cfg);
  for (double y : {-2.0, 0.0, 1.0, 3.0}) {
    const Complex power =
        std::exp(-mode.vartheta() * Complex(ossolve::log_cosh(w * y), 0.0));
    EXPECT_LE(std::abs(mode(y) - power), 1e-6 * std::abs(power)) << "y=" << y;
  }
}

TEST(PsiWake, GammaPoleRejected) {
  // U0 -> 0 with n >= 1 drives 1 + vartheta to the non-positive integers.
  const auto cfg = FlowConfig::from_r_chi(10.0, 10.0);
  const Complex k(1.0, 0.0);
  const auto disp = wake_dispersion(1, k, 1e-18, 1.0, cfg);
  const auto pair = make_eigenpair(1, k, disp.omega, cfg.chi);
  EXPECT_THROW(psi_wake(1, pair, 1e-18, 1.0, cfg), DomainError);
}

TEST(PsiModes, ScalingCovarianceOfResidual) {
  // The ODE is linear: rescaling Psi leaves the relative residual alone.
  const auto cfg = cfg_default();
  const auto pair = steady_eigen_linear(3, 1.0, 0.0, cfg);
  const auto mode = psi_linear(pair, 1.0, 0.0, cfg);
  const double r2chi = cfg.r * cfg.r * cfg.chi;
  auto q = [&](double y) {
    return -kI * r2chi * pair.k * (y - pair.lambda);
  };
  const Complex scale(3.7, -1.2);
  auto scaled = [&](double y) { return scale * mode(y); };
  for (double y : {0.02, 0.05, 0.08}) {
    // both residuals sit at the rounding floor; scaling must not lift them
    EXPECT_LE(ode_residual(mode, q, y), 1e-8);
    EXPECT_LE(ode_residual(scaled, q, y), 1e-8);
  }
}
