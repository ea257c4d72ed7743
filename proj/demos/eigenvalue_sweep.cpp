// Minimal library usage: steady short-wave eigenvalues of a linear shear
// profile, the matching Airy eigenfunction, and one Green's-function
// synthesis, printed as a small table.

#include <cstdio>

#include "ossolve/eigenfunctions.hpp"
#include "ossolve/greens.hpp"
#include "ossolve/outer.hpp"
#include "ossolve/shortwave.hpp"

int main() {
  using namespace ossolve;

  const auto cfg = meanflow::FlowConfig::from_r_chi(10.0, 1000.0);
  std::printf("steady eigenvalues, Ubar = y, r = %.0f, chi = %.0f\n", cfg.r,
              cfg.chi);
  std::printf("%3s %22s %22s %12s\n", "n", "Re(k)", "Im(k)", "|residual|");
  for (int n = 1; n <= 6; ++n) {
    shortwave::SteadyRootDiagnostics diag;
    const auto pair = shortwave::steady_eigen_linear(n, 1.0, 0.0, cfg, &diag);
    std::printf("%3d %22.15g %22.15g %12.3e\n", n, pair.k.real(),
                pair.k.imag(), diag.residual);
  }

  // outer-solution profile of phi_5 at figure parameters
  const double R = 2000.0, eps = 0.2;
  double peak = 0.0, ypeak = 0.0;
  for (double y = 0.0; y <= 10.0; y += 0.01) {
    const double v = std::abs(outer::outer_linear(5, R, eps, y));
    if (v > peak) {
      peak = v;
      ypeak = y;
    }
  }
  std::printf("\nouter |phi_5| peaks at y = %.3f with %.6g (R = %.0f)\n",
              ypeak, peak, R);

  // Green's-function synthesis of the same mode near the boundary layer
  const Complex alpha = outer::outer_alpha_linear(5, R, eps);
  const auto omega = shortwave::dispersion_linear(5, alpha, 1.0, 0.0,
                                                  meanflow::FlowConfig::from_r_chi(
                                                      1.0 / eps, R * eps * eps));
  const auto flow = meanflow::FlowConfig::from_r_chi(1.0 / eps, R * eps * eps);
  const auto pair = shortwave::make_eigenpair(5, alpha, omega, flow.chi);
  const auto mode = eigenfunctions::psi_linear(pair, 1.0, 0.0, flow);
  const greens::GreensKernel kern(greens::Domain::SemiInfinite, flow.r, alpha);
  const auto phi = greens::synthesize_phi(kern, mode, {0.1, 0.2, 0.4});
  for (std::size_t i = 0; i < phi.grid.size(); ++i) {
    std::printf("greens phi_5(%.1f) = (%.6g, %.6g)  est err %.1e\n",
                phi.grid[i], phi.values[i].real(), phi.values[i].imag(),
                phi.errors[i]);
  }
  return 0;
}
