#pragma once

// Green's functions of d^2/dy^2 - r^2 k^2 under Neumann-type conditions on
// [0, inf) and (-inf, inf), and the quadrature phi(y) = int G(y,xi) Psi(xi) dxi.
//
// The kernels below carry derivative jump -1, i.e. the convention
// G_yy - r^2 k^2 G = -delta(y - xi). synthesize_phi therefore applies a
// compensating minus sign so its output satisfies phi_yy - r^2k^2 phi = Psi.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ossolve/complex_utils.hpp"
#include "ossolve/errors.hpp"
#include "ossolve/quadrature.hpp"

namespace ossolve::greens {

enum class Domain { SemiInfinite, Infinite };

class GreensKernel {
 public:
  GreensKernel(Domain dom, double r, const Complex& k)
      : dom_(dom), r_(r), k_(k) {
    if (!(r > 0.0)) throw DomainError("GreensKernel: r must be positive");
    // The kernels presuppose the decaying branch.
    if (!(k.real() > 0.0)) {
      throw DomainError("GreensKernel: Re(k) must be positive");
    }
  }

  Domain domain() const { return dom_; }
  double r() const { return r_; }
  Complex k() const { return k_; }
  Complex rk() const { return r_ * k_; }

 private:
  Domain dom_;
  double r_;
  Complex k_;
};

namespace detail {

inline void check_point(const GreensKernel& kern, double y, double xi) {
  if (kern.domain() == Domain::SemiInfinite && (y < 0.0 || xi < 0.0)) {
    throw DomainError("greens_eval: point outside [0, inf)");
  }
}

}  // namespace detail

// Kernel value; all exponentials have non-positive real part in the
// decaying branch, so no overflow-prone cosh is ever formed.
inline Complex greens_eval(const GreensKernel& kern, double y, double xi) {
  detail::check_point(kern, y, xi);
  const Complex rk = kern.rk();
  if (kern.domain() == Domain::Infinite) {
    return std::exp(-rk * std::abs(y - xi)) / (2.0 * rk);
  }
  const double lo = std::min(y, xi), hi = std::max(y, xi);
  // cosh(rk lo) e^{-rk hi} / (rk), expanded into decaying exponentials
  return (std::exp(-rk * (hi - lo)) + std::exp(-rk * (hi + lo))) /
         (2.0 * rk);
}

// dG/dy on the branch containing y (upper branch exactly at y = xi).
inline Complex greens_eval_dy(const GreensKernel& kern, double y, double xi) {
  detail::check_point(kern, y, xi);
  const Complex rk = kern.rk();
  if (kern.domain() == Domain::Infinite) {
    const double sign = (y < xi) ? 1.0 : -1.0;
    return sign * 0.5 * std::exp(-rk * std::abs(y - xi));
  }
  if (y < xi) {
    // sinh(rk y) e^{-rk xi}
    return (std::exp(-rk * (xi - y)) - std::exp(-rk * (xi + y))) * 0.5;
  }
  // -cosh(rk xi) e^{-rk y}
  return -(std::exp(-rk * (y - xi)) + std::exp(-rk * (y + xi))) * 0.5;
}

// Sampled complex-valued function on an ascending real grid.
struct GridFunction {
  std::vector<double> grid;
  std::vector<Complex> values;
  std::vector<double> errors;  // per-point estimates when produced by quadrature
  struct Meta {
    int mode_index = -1;
    std::string provenance;
  } meta;

  void validate() const {
    if (grid.size() != values.size()) {
      throw DomainError("GridFunction: grid/value size mismatch");
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (!(grid[i] < grid[i + 1])) {
        throw DomainError("GridFunction: grid must be strictly increasing");
      }
    }
    for (const auto& v : values) {
      if (!is_finite(v)) throw OverflowError("GridFunction: non-finite value");
    }
  }
};

struct SynthesisOptions {
  double tail_rel = 1e-12;    // tail truncation threshold
  double osc_wavenumber = 0;  // cap panels at 1/4 of this local wavelength
  quad::Options quad{};       // per-segment quadrature control
};

namespace detail {

// Smallest xi_max >= start such that the integrand bound
// |Psi(xi)| e^{-Re(rk)(xi - y)} drops below `floor`. Doubles the probe
// distance; TailError if Psi outgrows the kernel.
template <typename Psi>
double find_tail_cut(const Psi& psi, const Complex& rk, double y, double start,
                     double floor_abs, bool leftward) {
  const double decay = rk.real();
  double span = std::max(1.0, 4.0 / decay);
  for (int it = 0; it < 60; ++it) {
    const double xi = leftward ? y - start - span : y + start + span;
    // three samples so a single oscillation zero cannot fake decay
    double amp = 0.0;
    for (double frac : {1.0, 0.93, 0.81}) {
      const double p = leftward ? y - start - span * frac : y + start + span * frac;
      const double sample = std::abs(psi(p)) * std::exp(-decay * std::abs(p - y));
      if (!std::isfinite(sample)) {
        amp = std::numeric_limits<double>::infinity();
        break;
      }
      amp = std::max(amp, sample);
    }
    if (amp < floor_abs) return xi;
    span *= 2.0;
  }
  throw TailError("synthesize_phi: integrand does not decay "
                  "(no admissible truncation point)");
}

}  // namespace detail

// phi(y) = - int G(y,xi) Psi(xi) dxi on the kernel's domain, adaptive
// Gauss-Kronrod split at xi = y (the kernel kink), infinite tails truncated
// where the kernel-decay bound falls below tail_rel of the running value.
// The leading minus makes the output satisfy phi_yy - r^2k^2 phi = Psi.
template <typename Psi>
GridFunction synthesize_phi(const GreensKernel& kern, const Psi& psi,
                            const std::vector<double>& ygrid,
                            const SynthesisOptions& opts = {}) {
  GridFunction out;
  out.grid = ygrid;
  out.values.resize(ygrid.size());
  out.errors.resize(ygrid.size());
  out.meta.provenance = "greens quadrature";

  quad::Options qopt = opts.quad;
  if (opts.osc_wavenumber > 0.0) {
    qopt.max_panel_width = 0.25 * (2.0 * kPi / opts.osc_wavenumber);
  }

  const Complex rk = kern.rk();

  for (std::size_t i = 0; i < ygrid.size(); ++i) {
    const double y = ygrid[i];
    auto integrand = [&](double xi) { return greens_eval(kern, y, xi) * psi(xi); };

    // A coarse magnitude estimate near y sets the absolute tail floor.
    const double local = std::abs(psi(y)) / std::abs(2.0 * rk);
    const double floor_abs =
        std::max(local, 1e-30) * opts.tail_rel * std::abs(2.0 * rk);

    Complex total{0.0, 0.0};
    double err = 0.0;
    try {
      const double right =
          detail::find_tail_cut(psi, rk, y, 0.0, floor_abs, false);
      if (kern.domain() == Domain::SemiInfinite) {
        if (y > 0.0) {
          auto seg = quad::integrate(integrand, 0.0, y, qopt);
          total += seg.value;
          err += seg.error;
        }
      } else {
        const double left =
            detail::find_tail_cut(psi, rk, y, 0.0, floor_abs, true);
        auto seg = quad::integrate(integrand, left, y, qopt);
        total += seg.value;
        err += seg.error;
      }
      auto seg = quad::integrate(integrand, y, right, qopt);
      total += seg.value;
      err += seg.error;
    } catch (const QuadratureError& e) {
      throw QuadratureError(std::string(e.what()) + " at y = " +
                            std::to_string(y));
    }
    out.values[i] = ensure_finite(-total, "synthesize_phi");
    out.errors[i] = err;
  }
  out.validate();
  return out;
}

}  // namespace ossolve::greens
