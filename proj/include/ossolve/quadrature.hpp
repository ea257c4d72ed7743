#pragma once

// Adaptive Gauss-Kronrod 15(7) quadrature for complex-valued integrands on
// real intervals. Panels are bisected worst-first; an optional cap on the
// panel width keeps oscillatory integrands from being aliased before the
// error estimator can see them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"

namespace ossolve::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_panels = 4000;
  double max_panel_width = 0.0;  // 0: no cap
};

struct Result {
  Complex value{0.0, 0.0};
  double error = 0.0;
  int panels = 0;
};

namespace detail {

// QUADPACK dqk15 abscissae and weights.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Complex value;
  double error;

  bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel eval_panel(const F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);

  const Complex fc = f(mid);
  Complex kronrod = kWgk[7] * fc;
  Complex gauss = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex fsum = f(mid - dx) + f(mid + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;

  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod;
  p.error = std::abs(kronrod - gauss);
  return p;
}

}  // namespace detail

template <typename F>
Result integrate(const F& f, double a, double b, const Options& opt = {}) {
  Result out;
  if (a == b) return out;

  std::priority_queue<detail::Panel> queue;
  int n0 = 1;
  if (opt.max_panel_width > 0.0) {
    n0 = std::max<int>(1, static_cast<int>(
                              std::ceil(std::abs(b - a) / opt.max_panel_width)));
    n0 = std::min(n0, opt.max_panels / 2);
  }
  Complex total{0.0, 0.0};
  double err = 0.0;
  for (int j = 0; j < n0; ++j) {
    const double pa = a + (b - a) * j / n0;
    const double pb = a + (b - a) * (j + 1) / n0;
    auto p = detail::eval_panel(f, pa, pb);
    total += p.value;
    err += p.error;
    queue.push(p);
  }
  out.panels = n0;

  while (err > opt.abs_tol && err > opt.rel_tol * std::abs(total)) {
    if (out.panels >= opt.max_panels || queue.empty()) {
      throw QuadratureError("adaptive quadrature: panel budget exhausted");
    }
    const auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      throw QuadratureError("adaptive quadrature: panel underflow");
    }
    const auto left = detail::eval_panel(f, worst.a, mid);
    const auto right = detail::eval_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++out.panels;
  }
  out.value = total;
  out.error = err;
  return out;
}

// Integral with inverse-square-root endpoint behavior removed by the
// substitutions y = a + t^2 and y = b - t^2 on the two halves. Intended
// for WKB actions, where the integrand vanishes like sqrt at the turning
// points.
template <typename F>
Result integrate_sqrt_endpoints(const F& f, double a, double b,
                                const Options& opt = {}) {
  const double mid = 0.5 * (a + b);
  const double ta = std::sqrt(mid - a);
  const double tb = std::sqrt(b - mid);
  auto left = integrate(
      [&](double t) { return 2.0 * t * f(a + t * t); }, 0.0, ta, opt);
  auto right = integrate(
      [&](double t) { return 2.0 * t * f(b - t * t); }, 0.0, tb, opt);
  return {left.value + right.value, left.error + right.error,
          left.panels + right.panels};
}

}  // namespace ossolve::quad
