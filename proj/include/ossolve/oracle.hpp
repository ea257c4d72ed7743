#pragma once

// Desk-scale independent validation of the short-wave asymptotics: a
// Chebyshev collocation discretization of the reduced fourth-order equation
// on [0, Ymax] with clamped ends, refined near a WKB seed either by
// Rayleigh-quotient inverse iteration (omega given k) or by Newton on a
// resolvent surrogate of det(A(k) - omega B(k)) (k given omega).
//
// Eigen supplies the dense LU factorizations; everything else is built
// here so the oracle shares no numerical path with the asymptotic modules
// it validates.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"
#include "ossolve/meanflow.hpp"
#include "ossolve/shortwave.hpp"

namespace ossolve::oracle {

using meanflow::FlowConfig;
using meanflow::MeanProfile;
using shortwave::Eigenpair;

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct CollocationProblem {
  MeanProfile profile;
  FlowConfig cfg;
  int N = 96;          // collocation points
  double Ymax = 10.0;  // domain truncation
  double stretch = 0.0;  // algebraic map parameter, >= 0; 0 is linear
};

namespace detail {

// Mapped Chebyshev-Gauss-Lobatto nodes, descending from Ymax to 0.
inline std::vector<double> nodes(const CollocationProblem& p) {
  std::vector<double> y(p.N);
  for (int j = 0; j < p.N; ++j) {
    const double x = std::cos(kPi * j / (p.N - 1));
    const double denom = 1.0 + p.stretch * (1.0 - x);
    if (!(denom > 0.0)) {
      throw SingularMapError("collocation map: degenerate stretch parameter");
    }
    y[j] = p.Ymax * (1.0 + x) / (2.0 * denom);
  }
  return y;
}

// Welfert recursion for polynomial differentiation matrices of orders
// 1..max_order on Chebyshev-Gauss-Lobatto nodes (barycentric weights
// (-1)^j with halved endpoints; well scaled at any N).
inline std::vector<Eigen::MatrixXd> cheb_diff_matrices(int n, int max_order) {
  std::vector<double> x(n), w(n);
  for (int j = 0; j < n; ++j) {
    x[j] = std::cos(kPi * j / (n - 1));
    w[j] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  w[0] *= 0.5;
  w[n - 1] *= 0.5;

  std::vector<Eigen::MatrixXd> D(max_order, Eigen::MatrixXd::Zero(n, n));
  Eigen::MatrixXd prev = Eigen::MatrixXd::Identity(n, n);
  for (int m = 1; m <= max_order; ++m) {
    Eigen::MatrixXd cur = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      double diag = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double entry =
            m / (x[i] - x[j]) * ((w[j] / w[i]) * prev(i, i) - prev(i, j));
        cur(i, j) = entry;
        diag -= entry;
      }
      cur(i, i) = diag;
    }
    D[m - 1] = cur;
    prev = cur;
  }
  return D;
}

// Differentiation matrices in the mapped variable via the chain rule.
// For the algebraic map y = Ymax (1+x) / (2 (1 + s(1-x))) the inverse
// derivative a(x) = dx/dy = u^2/A with u = 1 + s(1-x), A = Ymax(1+2s)/2,
// so a' = -2su/A, a'' = 2s^2/A, a''' = 0 in closed form.
inline std::vector<Eigen::MatrixXd> diff_matrices(const CollocationProblem& p,
                                                  int max_order) {
  const int n = p.N;
  const auto Dx = cheb_diff_matrices(n, max_order);
  const double s = p.stretch;
  const double A = p.Ymax * (1.0 + 2.0 * s) / 2.0;
  if (!(A > 0.0)) {
    throw SingularMapError("collocation map: degenerate stretch parameter");
  }

  Eigen::VectorXd a(n), a1(n), a2(n);
  for (int j = 0; j < n; ++j) {
    const double x = std::cos(kPi * j / (n - 1));
    const double u = 1.0 + s * (1.0 - x);
    a(j) = u * u / A;
    a1(j) = -2.0 * s * u / A;
    a2(j) = 2.0 * s * s / A;
  }

  std::vector<Eigen::MatrixXd> Dy(max_order);
  Dy[0] = a.asDiagonal() * Dx[0];
  if (max_order >= 2) {
    Dy[1] = (a.cwiseProduct(a1)).asDiagonal() * Dx[0] +
            (a.cwiseProduct(a)).asDiagonal() * Dx[1];
  }
  if (max_order >= 3) {
    // L3 = a(a a'' + a'^2) D + 3 a^2 a' D^2 + a^3 D^3
    Eigen::VectorXd c1 = a.cwiseProduct(a.cwiseProduct(a2) + a1.cwiseProduct(a1));
    Eigen::VectorXd c2 = 3.0 * a.cwiseProduct(a).cwiseProduct(a1);
    Eigen::VectorXd c3 = a.cwiseProduct(a).cwiseProduct(a);
    Dy[2] = c1.asDiagonal() * Dx[0] + c2.asDiagonal() * Dx[1] +
            c3.asDiagonal() * Dx[2];
  }
  if (max_order >= 4) {
    // L4 = a c1' D + a(c1 + c2') D^2 + a(c2 + c3') D^3 + a^4 D^4, with
    // a''' = 0:
    //   c1' = a^2 a''' + 4 a a' a'' + a'^3 = 4 a a' a'' + a'^3
    //   c2' = 6 a a'^2 + 3 a^2 a''
    //   c3' = 3 a^2 a'
    Eigen::VectorXd q1 =
        a.cwiseProduct(4.0 * a.cwiseProduct(a1).cwiseProduct(a2) +
                       a1.cwiseProduct(a1).cwiseProduct(a1));
    Eigen::VectorXd c1 = a.cwiseProduct(a.cwiseProduct(a2) + a1.cwiseProduct(a1));
    Eigen::VectorXd c2p = 6.0 * a.cwiseProduct(a1).cwiseProduct(a1) +
                          3.0 * a.cwiseProduct(a).cwiseProduct(a2);
    Eigen::VectorXd q2 = a.cwiseProduct(c1 + c2p);
    Eigen::VectorXd c2 = 3.0 * a.cwiseProduct(a).cwiseProduct(a1);
    Eigen::VectorXd c3p = 3.0 * a.cwiseProduct(a).cwiseProduct(a1);
    Eigen::VectorXd q3 = a.cwiseProduct(c2 + c3p);
    Eigen::VectorXd q4 =
        a.cwiseProduct(a).cwiseProduct(a.cwiseProduct(a));
    Dy[3] = q1.asDiagonal() * Dx[0] + q2.asDiagonal() * Dx[1] +
            q3.asDiagonal() * Dx[2] + q4.asDiagonal() * Dx[3];
  }
  return Dy;
}

inline void check_problem(const CollocationProblem& p) {
  if (p.N < 32) throw DomainError("collocation: N >= 32 required");
  if (!(p.Ymax > 0.0)) throw DomainError("collocation: Ymax must be positive");
  if (p.stretch < 0.0) throw DomainError("collocation: stretch must be >= 0");
}

}  // namespace detail

struct Pencil {
  Matrix A;  // omega-independent part, boundary rows inserted
  Matrix B;  // omega multiplier, zero boundary rows
  std::vector<double> y;
  Eigen::MatrixXd D1;       // kept for boundary checks
  Eigen::VectorXd row_scale;  // equilibration applied to A and B rows
};

// Dense matrices of A(k) phi = omega B(k) phi from the short-wave equation,
// clamped conditions at y = 0 and y = Ymax replacing the first/last two rows.
inline Pencil assemble(const CollocationProblem& p, const Complex& k) {
  detail::check_problem(p);
  const auto y = detail::nodes(p);
  const auto D = detail::diff_matrices(p, 4);
  const int n = p.N;
  const double r = p.cfg.r, R = p.cfg.R;
  const Complex k2 = k * k;

  Pencil out;
  out.y = y;
  out.D1 = D[0];
  out.A = D[3].cast<Complex>();
  out.B = Matrix::Zero(n, n);

  for (int i = 0; i < n; ++i) {
    const double U = meanflow::profile_eval(p.profile, y[i]).U;
    const Complex c2 = -(2.0 * r * r * k2 + kI * R * k * U);
    const Complex c0 =
        r * r * r * r * k2 * k2 + kI * r * r * R * k2 * k * U;
    for (int j = 0; j < n; ++j) {
      out.A(i, j) += c2 * D[1](i, j);
      out.B(i, j) = -kI * R * D[1](i, j);
    }
    out.A(i, i) += c0;
    out.B(i, i) += kI * r * r * R * k2;
  }

  // clamped rows: phi = phi' = 0 at both ends (row 0 is y = Ymax)
  for (int bc : {0, 1, n - 2, n - 1}) {
    out.A.row(bc).setZero();
    out.B.row(bc).setZero();
  }
  out.A(0, 0) = 1.0;
  out.A.row(1) = D[0].row(0).cast<Complex>();
  out.A.row(n - 2) = D[0].row(n - 1).cast<Complex>();
  out.A(n - 1, n - 1) = 1.0;

  // Row equilibration: the D4 rows outweigh the boundary rows by many
  // orders; scaling each row to unit max keeps the LU honest. The pencil
  // eigenpairs are unchanged.
  out.row_scale.resize(n);
  for (int i = 0; i < n; ++i) {
    const double m = std::max(out.A.row(i).cwiseAbs().maxCoeff(),
                              out.B.row(i).cwiseAbs().maxCoeff());
    out.row_scale(i) = (m > 0.0) ? 1.0 / m : 1.0;
    out.A.row(i) *= out.row_scale(i);
    out.B.row(i) *= out.row_scale(i);
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!is_finite(out.A(i, j)) || !is_finite(out.B(i, j))) {
        throw OverflowError("collocation assemble: non-finite entry");
      }
    }
  }
  return out;
}

// d/dk of the interior rows of A - omega B.
inline Matrix assemble_dk(const CollocationProblem& p, const Complex& k,
                          const Complex& omega) {
  const auto y = detail::nodes(p);
  const auto D = detail::diff_matrices(p, 2);
  const int n = p.N;
  const double r = p.cfg.r, R = p.cfg.R;

  Matrix dM = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double U = meanflow::profile_eval(p.profile, y[i]).U;
    const Complex dc2 = -(4.0 * r * r * k + kI * R * U);
    const Complex dc0 = 4.0 * r * r * r * r * k * k * k +
                        3.0 * kI * r * r * R * k * k * U;
    for (int j = 0; j < n; ++j) {
      dM(i, j) = dc2 * D[1](i, j);
    }
    dM(i, i) += dc0 - omega * (2.0 * kI * r * r * R * k);
  }
  for (int bc : {0, 1, n - 2, n - 1}) dM.row(bc).setZero();
  return dM;
}

enum class RefineMode { SolveOmegaGivenK, SolveKGivenOmega };

struct RefineResult {
  Eigenpair pair;
  Vector eigenvector;       // max-norm normalized, on the pencil's nodes
  std::vector<double> y;    // collocation nodes (descending)
  double residual = 0.0;    // scaled eigen-residual at interior rows
  double bc_violation = 0.0;
  double tail_energy = 0.0; // Chebyshev-coefficient resolution metric
  int iterations = 0;
};

namespace detail {

// Chebyshev coefficients of values sampled at Gauss-Lobatto points.
inline std::vector<double> cheb_coeff_mags(const Vector& v) {
  const int n = static_cast<int>(v.size());
  const int M = n - 1;
  std::vector<double> mags(n);
  for (int m = 0; m <= M; ++m) {
    Complex c = 0.5 * (v(0) + ((m % 2) ? -1.0 : 1.0) * v(M));
    for (int j = 1; j < M; ++j) {
      c += v(j) * std::cos(kPi * j * m / M);
    }
    mags[m] = std::abs(c * (2.0 / M));
  }
  return mags;
}

inline double tail_energy(const Vector& v) {
  const auto mags = cheb_coeff_mags(v);
  const int n = static_cast<int>(mags.size());
  double total = 0.0, tail = 0.0;
  for (int m = 0; m < n; ++m) {
    const double e = mags[m] * mags[m];
    total += e;
    if (m >= (3 * n) / 4) tail += e;
  }
  return (total > 0.0) ? tail / total : 1.0;
}

inline Vector seed_rhs(int n) {
  Vector b(n);
  for (int i = 0; i < n; ++i) {
    b(i) = Complex(std::sin(0.7 * i + 0.3), 0.2 * std::cos(1.3 * i + 1.1));
  }
  for (int bc : {0, 1, n - 2, n - 1}) b(bc) = 0.0;
  return b;
}

struct Checked {
  double residual;
  double bc_violation;
  double tail;
};

inline Checked check_vector(const Pencil& pen, const Matrix& M,
                            const Vector& x) {
  const int n = static_cast<int>(x.size());
  const double xinf = x.cwiseAbs().maxCoeff();
  const Vector res = M * x;
  double scale = 0.0;
  for (int i = 2; i < n - 2; ++i) {
    scale = std::max(scale, M.row(i).cwiseAbs().sum());
  }
  double rmax = 0.0;
  for (int i = 2; i < n - 2; ++i) rmax = std::max(rmax, std::abs(res(i)));
  Checked c;
  c.residual = rmax / (scale * xinf);
  const double bval = std::max(std::abs(x(0)), std::abs(x(n - 1)));
  const double bder = std::max(
      std::abs(pen.D1.row(0).cast<Complex>().dot(x.transpose())),
      std::abs(pen.D1.row(n - 1).cast<Complex>().dot(x.transpose())));
  const double dscale = pen.D1.row(0).cwiseAbs().sum() * xinf;
  c.bc_violation = std::max(bval / xinf, bder / dscale);
  c.tail = tail_energy(x);
  return c;
}

}  // namespace detail

// Refines a WKB seed on the collocation pencil. The seed's turning point
// must sit well inside the domain: Ymax >= 3 |y_t|.
inline RefineResult refine_eigen(const CollocationProblem& p,
                                 const Eigenpair& seed, RefineMode mode) {
  detail::check_problem(p);

  // turning-point placement guard
  double yt = 0.0;
  if (const auto* lin = std::get_if<meanflow::Linear>(&p.profile)) {
    if (lin->b != 0.0) yt = std::abs((seed.lambda - lin->c) / lin->b);
  } else if (const auto* qd = std::get_if<meanflow::Quadratic>(&p.profile)) {
    const Complex Lam =
        (seed.lambda + qd->b * qd->b / (4.0 * qd->a) - qd->c) / qd->a;
    yt = std::abs(std::sqrt(Lam)) + std::abs(qd->b / (2.0 * qd->a));
  }
  if (p.Ymax < 3.0 * yt) {
    throw DomainError("refine_eigen: Ymax below 3x the seed turning point");
  }

  const int n = p.N;
  RefineResult out;
  out.pair = seed;

  if (mode == RefineMode::SolveOmegaGivenK) {
    const Pencil pen = assemble(p, seed.k);
    Complex omega = seed.omega;
    Vector x = detail::seed_rhs(n);
    x /= x.cwiseAbs().maxCoeff();
    Complex prev = omega + 1.0;
    int it = 0;
    for (; it < 100; ++it) {
      const Matrix M = pen.A - omega * pen.B;
      Eigen::PartialPivLU<Matrix> lu(M);
      Vector rhs = pen.B * x;
      for (int bc : {0, 1, n - 2, n - 1}) rhs(bc) = 0.0;
      x = lu.solve(rhs);
      const double nrm = x.cwiseAbs().maxCoeff();
      if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        throw NoConvergenceError("refine_eigen: inverse iteration collapsed");
      }
      x /= nrm;
      // Rayleigh quotient restricted to interior rows
      Complex num = 0.0, den = 0.0;
      const Vector Ax = pen.A * x, Bx = pen.B * x;
      for (int i = 2; i < n - 2; ++i) {
        num += std::conj(x(i)) * Ax(i);
        den += std::conj(x(i)) * Bx(i);
      }
      prev = omega;
      omega = num / den;
      if (std::abs(omega - prev) <= 1e-10 * (1.0 + std::abs(omega))) break;
    }
    if (std::abs(omega - prev) > 1e-10 * (1.0 + std::abs(omega))) {
      throw NoConvergenceError(
          "refine_eigen: Rayleigh iteration did not settle; closest omega " +
          std::to_string(omega.real()) + (omega.imag() < 0 ? "-" : "+") +
          std::to_string(std::abs(omega.imag())) + "i");
    }
    out.pair = shortwave::make_eigenpair(seed.n, seed.k, omega, p.cfg.chi);
    out.iterations = it + 1;
    const Matrix M = pen.A - omega * pen.B;
    const auto chk = detail::check_vector(pen, M, x);
    out.eigenvector = x;
    out.y = pen.y;
    out.residual = chk.residual;
    out.bc_violation = chk.bc_violation;
    out.tail_energy = chk.tail;
  } else {
    Complex k = seed.k;
    const Complex omega = seed.omega;
    const Vector b = detail::seed_rhs(n);
    Vector w(n);
    for (int i = 0; i < n; ++i) {
      w(i) = Complex(std::cos(0.9 * i + 0.7), 0.3 * std::sin(0.4 * i));
    }
    for (int bc : {0, 1, n - 2, n - 1}) w(bc) = 0.0;

    Vector x(n);
    int it = 0;
    double best_step = std::numeric_limits<double>::infinity();
    Complex best_k = k;
    for (; it < 60; ++it) {
      const Pencil pen = assemble(p, k);
      const Matrix M = pen.A - omega * pen.B;
      Eigen::PartialPivLU<Matrix> lu(M);
      x = lu.solve(b);
      const Complex mu = w.dot(x);  // w^H x
      Matrix dM = assemble_dk(p, k, omega);
      for (int i = 0; i < n; ++i) dM.row(i) *= pen.row_scale(i);
      const Vector z = lu.solve(dM * x);
      const Complex dmu = -w.dot(z);
      Complex step = mu / dmu;  // Newton on 1/mu
      // trust region: near the noise floor the resolvent derivative gets
      // erratic; never move more than 10% of |k| at once
      const double cap = 0.1 * (1.0 + std::abs(k));
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      k += step;
      if (std::abs(step) < best_step) {
        best_step = std::abs(step);
        best_k = k;
      }
      if (std::abs(step) <= 1e-10 * (1.0 + std::abs(k))) break;
    }
    if (best_step > 1e-8 * (1.0 + std::abs(best_k))) {
      throw NoConvergenceError("refine_eigen: k-Newton did not settle near " +
                               std::to_string(best_k.real()) + "," +
                               std::to_string(best_k.imag()));
    }
    k = best_k;
    out.pair = shortwave::make_eigenpair(seed.n, k, omega, p.cfg.chi);
    out.iterations = it + 1;
    const Pencil pen = assemble(p, k);
    const Matrix M = pen.A - omega * pen.B;
    Eigen::PartialPivLU<Matrix> lu(M);
    x = lu.solve(b);
    x /= x.cwiseAbs().maxCoeff();
    const auto chk = detail::check_vector(pen, M, x);
    out.eigenvector = x;
    out.y = pen.y;
    out.residual = chk.residual;
    out.bc_violation = chk.bc_violation;
    out.tail_energy = chk.tail;
  }

  if (out.tail_energy > 0.1) {
    throw SpuriousModeError(
        "refine_eigen: eigenvector underresolved (tail energy " +
        std::to_string(out.tail_energy) + ")");
  }
  return out;
}

// Stretch so that half the nodes land below the expected turning point.
inline double auto_stretch(double Ymax, double turning_point) {
  if (!(turning_point > 0.0) || turning_point >= 0.5 * Ymax) return 0.0;
  return Ymax / (2.0 * turning_point) - 1.0;
}

}  // namespace ossolve::oracle
