// Harmonic solvers: the grid Dirichlet problem on lattice domains, the
// continuum disk Dirichlet problem by Fourier series, Poisson kernel
// evaluation, and weighted integrals over flow domains.
#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "latgrow/grid2d.hpp"
#include "latgrow/lattice.hpp"

namespace latgrow {

// A real function on a lattice domain, split into interior nodes (where the
// solver enforces discrete harmonicity) and designated boundary nodes (whose
// values are data). The discrete Laplacian is the 4-neighbor mean minus the
// center, scaled by m^2; `residual_sup` reports its largest interior value.
struct GridFunction {
  int m = 1;
  Grid2D<double> values;
  Grid2D<std::uint8_t> mask;  // 0 outside, 1 interior, 2 boundary
  double solve_tolerance = 0.0;

  bool in_domain(LatticePoint z) const { return mask.get_or(z, 0) != 0; }
  bool is_boundary(LatticePoint z) const { return mask.get_or(z, 0) == 2; }
  double value(LatticePoint z) const { return values.get_or(z, 0.0); }

  std::vector<LatticePoint> domain() const;    // sorted
  std::vector<LatticePoint> boundary() const;  // sorted
  double residual_sup() const;                 // max scaled residual over interior nodes
  std::pair<double, double> boundary_range() const;
  // Maximum-principle slack: how far interior values escape the boundary range
  // (0 when the principle holds exactly).
  double maximum_principle_slack() const;
};

// Solves the grid Dirichlet problem on a finite lattice point set. Boundary
// nodes are the set members with a 4-neighbor outside the set; their values
// are fixed to `boundary_values`, and interior nodes are relaxed until the
// scaled residual falls below `tol` (default: 1e-10 times the boundary value
// range). Interior components always reach the boundary on a finite domain;
// an interior node that cannot be reached from any boundary node is rejected.
GridFunction solve_grid_dirichlet(const std::vector<LatticePoint>& domain, int m,
                                  const std::function<double(LatticePoint)>& boundary_values,
                                  double tol = 0.0);

// Same problem with the boundary data on the continuum curve instead of at
// lattice nodes: the domain is the lattice restriction of `region`, and each
// grid edge leaving the domain is closed by linear interpolation through the
// boundary crossing xi at distance rho/m from the cut node P toward the
// outside: value(P) = (rho * value(Q) + u(xi)) / (1 + rho) with Q the interior
// neighbor opposite the cut. Convex weights preserve the maximum principle,
// and the closure is second-order accurate, so sup error against the continuum
// solution decays like 1/m^2 for smooth data. The cut ring is reported as the
// boundary of the result; u(xi) values enter the equations as data.
GridFunction solve_grid_dirichlet_cut(const Region& region, int m,
                                      const std::function<double(Vec2)>& u, double tol = 0.0);

namespace detail {
// Direct sparse solve of the same node-mode system; cross-check for the
// iterative path on small domains.
GridFunction solve_grid_dirichlet_direct(const std::vector<LatticePoint>& domain, int m,
                                         const std::function<double(LatticePoint)>& boundary_values);
}  // namespace detail

// Harmonic extension into the disk of radius R of boundary data given by
// Fourier coefficients: psi(r, theta) = sum a_n (r/R)^|n| e^{i n theta} with
// a_{-n} = conj(a_n), stored for n = 0..N_modes.
struct FourierHarmonic {
  double radius = 1.0;
  std::vector<std::complex<double>> coeff;  // index n = 0..N_modes

  int n_modes() const { return int(coeff.size()) - 1; }
  double eval(double r, double theta) const;
  double eval(Vec2 z) const;
  // Largest |psi(R, theta_k) - samples[k]| over equispaced sample angles.
  double boundary_mismatch(std::span<const double> samples) const;
};

// Coefficients from the discrete Fourier transform of equispaced boundary
// samples u(R cos(2 pi k / K), R sin(2 pi k / K)), k = 0..K-1. Requires
// K >= 4 * n_modes to keep aliasing below the kept band.
FourierHarmonic solve_disk_dirichlet(std::span<const double> samples, double radius,
                                     int n_modes);

// Poisson kernel of the disk of radius r_p with pole at angle theta_p on the
// boundary circle, normalized to circle average 1:
// F_p(r e^{i theta}) = sum_n (r/r_p)^|n| e^{i n (theta - theta_p)}.
struct PoissonKernelDisk {
  double r_p = 1.0;
  double theta_p = 0.0;

  // Truncated series with |n| <= n_trunc; truncation error is at most
  // 2 rho^{n_trunc+1} / (1 - rho) with rho = |z| / r_p.
  double eval(Vec2 z, int n_trunc) const;
  // Truncation order chosen from that bound for the given target.
  double eval(Vec2 z, double target = 1e-10) const;
  static int truncation_order(double rho, double target);
};

// Free-function form: pole p on its own circle |p|, evaluated at z, |z| < |p|.
double poisson_kernel_disk(Vec2 p, Vec2 z, int n_trunc);

struct QuadratureSpec {
  int radial_nodes = 32;    // Gauss-Legendre nodes per radial panel
  int angular_nodes = 256;  // equispaced angular samples (periodic trapezoid)
  double target = 1e-8;     // requested absolute error
  std::vector<double> extra_breaks;  // additional radii where the integrand is non-smooth
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // Richardson: |refined - coarse|
  bool converged = false;       // error_estimate <= target
};

// Computes the weighted integral over the flow domain D_s of f * (1 - sigma_s)
// for the disk preset: polar tensor-product quadrature whose radial panels are
// split at the sigma discontinuity radii sqrt(s/pi) and 1 (plus any
// `extra_breaks`), evaluated at the spec'd node counts and once refined for
// the error estimate.
QuadratureResult integrate_weighted(const std::function<double(Vec2)>& f,
                                    const MassDistribution& md, double s,
                                    const QuadratureSpec& spec = {});

}  // namespace latgrow
