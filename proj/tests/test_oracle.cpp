#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ossolve/oracle.hpp"

using namespace ossolve;
using namespace ossolve::oracle;
using namespace ossolve::shortwave;
using meanflow::FlowConfig;
using meanflow::Linear;

namespace {

// Matched-omega validation setup: omega* is the WKB dispersion value at
// k* = 1, so k* is the WKB wavenumber to validate. At this omega both
// homogeneous solutions decay and the collocation mode is a genuinely
// discrete, truncation-stable eigenvalue. (The omega = 0 steady roots are
// purely imaginary k: marginal modes whose truncated eigenvalues wobble
// with Ymax.)
struct MatchedSetup {
  FlowConfig cfg;
  Eigenpair seed;
  CollocationProblem problem;
};

MatchedSetup matched_setup(double r, int N = 160) {
  const double chi = 4.0, b = 1.0, c = 0.0;
  const int n = 5;
  const Complex kstar(1.0, 0.0);
  MatchedSetup s{FlowConfig::from_r_chi(r, chi), {}, {}};
  const Complex omega = dispersion_linear(n, kstar, b, c, s.cfg);
  s.seed = make_eigenpair(n, kstar, omega, s.cfg.chi);
  const double yt = std::abs(s.seed.lambda - c);
  s.problem.profile = Linear{b, c};
  s.problem.cfg = s.cfg;
  s.problem.Ymax = std::max(3.3 * yt, 3.3);
  s.problem.stretch = auto_stretch(s.problem.Ymax, yt);
  s.problem.N = N;
  return s;
}

}  // namespace

TEST(Assemble, MatrixShapesAndFiniteness) {
  auto s = matched_setup(10.0, 64);
  const auto pen = assemble(s.problem, s.seed.k);
  EXPECT_EQ(pen.A.rows(), 64);
  EXPECT_EQ(pen.A.cols(), 64);
  EXPECT_EQ(pen.B.rows(), 64);
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      EXPECT_TRUE(ossolve::is_finite(pen.A(i, j)));
      EXPECT_TRUE(ossolve::is_finite(pen.B(i, j)));
    }
  }
  // boundary rows: B zero, A's value rows are unit vectors
  EXPECT_EQ(pen.B.row(0).cwiseAbs().sum(), 0.0);
  EXPECT_EQ(pen.B.row(63).cwiseAbs().sum(), 0.0);
}

TEST(Assemble, SpectralSecondDerivativeAccuracy) {
  // D2 applied to cos(y) matches -cos(y) to 1e-8 on [0, 10], N = 96.
  CollocationProblem p;
  p.profile = Linear{1.0, 0.0};
  p.cfg = FlowConfig::from_r_chi(10.0, 10.0);
  p.N = 96;
  p.Ymax = 10.0;
  for (double s : {0.0, 1.0}) {
    p.stretch = s;
    const auto y = oracle::detail::nodes(p);
    const auto D = oracle::detail::diff_matrices(p, 2);
    Eigen::VectorXd f(p.N);
    for (int i = 0; i < p.N; ++i) f(i) = std::cos(y[i]);
    const Eigen::VectorXd d2 = D[1] * f;
    for (int i = 2; i < p.N - 2; ++i) {
      EXPECT_NEAR(d2(i), -std::cos(y[i]), 1e-8) << "s=" << s << " i=" << i;
    }
  }
}

TEST(Assemble, FiniteEntriesForRandomAdmissibleInputs) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 8; ++trial) {
    CollocationProblem p;
    p.cfg = FlowConfig::from_r_chi(5.0 + 10.0 * std::abs(u(rng)), 4.0);
    p.profile = (trial % 2)
                    ? meanflow::MeanProfile(Linear{1.0 + 0.2 * u(rng), u(rng)})
                    : meanflow::MeanProfile(
                          meanflow::Quadratic{1.0, u(rng), u(rng)});
    p.N = 48;
    p.Ymax = 4.0;
    p.stretch = std::abs(u(rng));
    const Complex k(1.0 + std::abs(u(rng)), u(rng));
    EXPECT_NO_THROW(assemble(p, k)) << "trial " << trial;
  }
}

TEST(Assemble, ProblemValidation) {
  auto s = matched_setup(10.0);
  s.problem.N = 16;
  EXPECT_THROW(assemble(s.problem, s.seed.k), DomainError);
  s.problem.N = 64;
  s.problem.stretch = -0.2;
  EXPECT_THROW(assemble(s.problem, s.seed.k), DomainError);
}

TEST(RefineEigen, TurningPointPlacementGuard) {
  auto s = matched_setup(10.0);
  s.problem.Ymax = 1.0;  // below 3x the seed turning point (~1.08)
  EXPECT_THROW(refine_eigen(s.problem, s.seed, RefineMode::SolveKGivenOmega),
               DomainError);
}

TEST(RefineEigen, MatchedOmegaGapShrinksWithAspectRatio) {
  double prev = 1e300;
  for (double r : {10.0, 20.0, 40.0}) {
    auto s = matched_setup(r);
    const auto res =
        refine_eigen(s.problem, s.seed, RefineMode::SolveKGivenOmega);
    const double gap = std::abs(res.pair.k - s.seed.k) / std::abs(res.pair.k);
    EXPECT_LT(gap, 0.2) << "r=" << r;
    EXPECT_LT(gap, prev) << "r=" << r;
    EXPECT_LE(res.residual, 1e-6);
    EXPECT_LE(res.bc_violation, 1e-10);
    prev = gap;
  }
}

TEST(RefineEigen, SelfConvergenceUnderRefinement) {
  auto s = matched_setup(20.0);
  const auto base =
      refine_eigen(s.problem, s.seed, RefineMode::SolveKGivenOmega);

  // N-doubling, seeded by continuation from the base solution
  auto dbl = s.problem;
  dbl.N = 2 * s.problem.N - 1;
  const auto res2 = refine_eigen(dbl, base.pair, RefineMode::SolveKGivenOmega);
  EXPECT_LE(std::abs(res2.pair.k - base.pair.k) / std::abs(base.pair.k), 1e-6);

  // Ymax + 50%
  auto wide = s.problem;
  wide.Ymax *= 1.5;
  wide.N = static_cast<int>(1.25 * s.problem.N);
  const auto res3 =
      refine_eigen(wide, base.pair, RefineMode::SolveKGivenOmega);
  EXPECT_LE(std::abs(res3.pair.k - base.pair.k) / std::abs(base.pair.k), 1e-6);
}

TEST(RefineEigen, OmegaModeMatchesDispersionIncreasinglyWell) {
  // At fixed real k the temporal eigenvalue approaches the WKB dispersion
  // value as r grows.
  double prev = 1e300;
  for (double r : {10.0, 40.0}) {
    auto s = matched_setup(r);
    const auto res =
        refine_eigen(s.problem, s.seed, RefineMode::SolveOmegaGivenK);
    const double gap = std::abs(res.pair.omega - s.seed.omega) /
                       std::abs(res.pair.omega);
    EXPECT_LT(gap, 0.1) << "r=" << r;
    EXPECT_LT(gap, prev);
    EXPECT_LE(res.bc_violation, 1e-10);
    prev = gap;
  }
}

TEST(RefineEigen, OmegaAndKModesAgree) {
  // Solving for omega at the k the k-mode returned must come back to the
  // omega the k-mode was run at.
  auto s = matched_setup(20.0);
  const auto kres =
      refine_eigen(s.problem, s.seed, RefineMode::SolveKGivenOmega);
  const auto ores =
      refine_eigen(s.problem, kres.pair, RefineMode::SolveOmegaGivenK);
  EXPECT_LE(std::abs(ores.pair.omega - s.seed.omega) / std::abs(s.seed.omega),
            1e-7);
}

TEST(RefineEigen, SteadyMarginalExample) {
  // The omega = 0 steady root: converged k within 20% of the WKB seed and
  // the gap shrinks when r doubles. (These marginal modes are validated
  // at fixed Ymax; they are not truncation-stable to 1e-6 like the
  // matched-omega ones.)
  const double chi = 4.0, b = 1.0, c = 1.0;
  const int n = 5;
  double prev = 1e300;
  for (double r : {20.0, 40.0}) {
    const auto cfg = FlowConfig::from_r_chi(r, chi);
    const auto seed = steady_eigen_linear(n, b, c, cfg);
    const double yt = std::abs((seed.lambda - c) / b);
    CollocationProblem p;
    p.profile = Linear{b, c};
    p.cfg = cfg;
    p.Ymax = 2.4;
    p.stretch = auto_stretch(p.Ymax, yt);
    p.N = (r < 25) ? 256 : 320;
    const auto res = refine_eigen(p, seed, RefineMode::SolveKGivenOmega);
    const double gap = std::abs(res.pair.k - seed.k) / std::abs(res.pair.k);
    EXPECT_LT(gap, 0.2) << "r=" << r;
    EXPECT_LT(gap, prev) << "r=" << r;
    prev = gap;
  }
}

TEST(RefineEigen, SpuriousModeDetection) {
  // A vector whose Chebyshev tail carries most of the energy must trip
  // the resolution check.
  Eigen::VectorXcd ragged(64);
  for (int i = 0; i < 64; ++i) {
    ragged(i) = Complex((i % 2) ? 1.0 : -1.0, 0.0);  // highest mode
  }
  EXPECT_GT(oracle::detail::tail_energy(ragged), 0.1);

  Eigen::VectorXcd smooth(64);
  for (int i = 0; i < 64; ++i) {
    const double x = std::cos(kPi * i / 63.0);
    smooth(i) = Complex(std::exp(-x * x), 0.1 * x);
  }
  EXPECT_LT(oracle::detail::tail_energy(smooth), 1e-6);
}
