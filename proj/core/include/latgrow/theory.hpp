// Closed-form and quadrature evaluations of the limiting Gaussian laws: the
// fixed-time variance/covariance, the lateness variance/covariance (with the
// general three-term form), and the disk point-correlation function g(p, q)
// through both the principal-logarithm closed form and independent quadrature.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "latgrow/harmonic.hpp"
#include "latgrow/lattice.hpp"

namespace latgrow {

// Tight ball around the support of a compactly supported test function; lets
// the oracles restrict time integrals to the activation band of the flow and
// compute boundary coefficients on the support arc only.
struct DiskSupport {
  Vec2 center{0.0, 0.0};
  double radius = 0.0;
};

// Radially symmetric C4 bump supported on B_eps(center) with unit integral:
// (6 / (pi eps^2)) (1 - |x-c|^2/eps^2)^5.
double bump_ball(Vec2 x, Vec2 center, double eps);
// C4 annular ridge of unit height at radius r0: (1 - ((|x|-r0)/eps)^2)^5.
double bump_radial(Vec2 x, double r0, double eps);

struct FixedTimeSpec {
  int n_modes = 64;
  int boundary_samples = 512;
  QuadratureSpec space;
};

// Limit variance of the fixed-time fluctuation pairing (E^s, u): the integral
// over D_s of |psi|^2 (1 - sigma_s), psi the harmonic extension of u from the
// flow boundary. The result carries the spatial quadrature error estimate.
QuadratureResult variance_fixed_time(const std::function<double(Vec2)>& u, double s,
                                     const MassDistribution& md, const FixedTimeSpec& spec = {});
QuadratureResult covariance_fixed_time(const std::function<double(Vec2)>& u,
                                       const std::function<double(Vec2)>& v, double s,
                                       const MassDistribution& md, const FixedTimeSpec& spec = {});

struct LatenessSpec {
  int time_nodes = 32;        // Gauss-Legendre nodes per time panel and axis
  int arc_nodes = 64;         // nodes for boundary-coefficient integrals on support arcs
  int n_modes = 0;            // 0 = choose from the support geometry (min 64)
  int boundary_samples = 512; // equispaced boundary sampling when no support is given
  bool general = false;       // keep the psi_s terms when supp u reaches the final boundary
  double target = 1e-6;       // absolute tolerance for the time-refinement estimate
};

// Limit variance of the lateness pairing (L^s, u):
//   2 int_0^s ds' int_0^{s'} ds'' int_{D_{s''}} psi_{s'} psi_{s''} (1 - sigma_{s''}),
// psi_t the harmonic extension of u from the boundary of D_t. With `general`
// set the two extra terms for test functions meeting the final boundary are
// included: s^2 int |psi_s|^2 (1-sigma_s) - 2s int_0^s ds' int psi_s psi_{s'}
// (1-sigma_{s'}). The spatial integral is evaluated per Fourier mode in closed
// form; the error estimate comes from doubling the time nodes.
QuadratureResult variance_lateness(const std::function<double(Vec2)>& u,
                                   const std::optional<DiskSupport>& support, double s,
                                   const MassDistribution& md, const LatenessSpec& spec = {});
// Symmetrized lateness covariance: the same double time integral with the
// integrand psi_{s'} phi_{s''} + psi_{s''} phi_{s'}.
QuadratureResult covariance_lateness(const std::function<double(Vec2)>& u,
                                     const std::optional<DiskSupport>& support_u,
                                     const std::function<double(Vec2)>& v,
                                     const std::optional<DiskSupport>& support_v, double s,
                                     const MassDistribution& md, const LatenessSpec& spec = {});

struct McEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
};

// Independent Monte Carlo re-quadrature of the lateness variance: (s', s'')
// sampled uniformly in the activation triangle and x in D_{s''} from an
// importance mixture concentrated near the support, with psi_t evaluated
// pointwise. Bypasses the nested time quadrature and the per-mode radial
// closed forms of variance_lateness; used as its oracle.
McEstimate mc_requadrature_lateness(const std::function<double(Vec2)>& u,
                                    const DiskSupport& support, double s,
                                    const MassDistribution& md, std::int64_t samples,
                                    std::uint64_t seed, const LatenessSpec& spec = {});

// Disk point-correlation function between lateness fluctuations at p and q,
// 1 < |q| <= |p| < sqrt(2) (inputs are swapped if given in the other order;
// `swapped` reports that). Closed form with principal logarithms:
//   -(2 pi)^3 |pq| Re[ conj(p) q ( Log(1 - conj(q)/conj(p))
//                                 - Log(1 - 1/(conj(p) q))
//                                 - Log(1 - (|q|^2 - 1)/(conj(p) q)) ) ].
// Queries within 1e-6 of the logarithmic singularity at p = q are rejected.
double g_disk_closed(Vec2 p, Vec2 q, bool* swapped = nullptr);

// The same correlation through the covariance integral: (1/(v_p v_q)) times
// the integral over D_{s_*} of F_p F_q (1 - sigma_{s_*}) with s_* = min of the
// arrival times, evaluated by radial panel quadrature of the angularly
// integrated kernel product. Near-singular queries report non-convergence
// through the result rather than a value of false precision.
QuadratureResult g_general(Vec2 p, Vec2 q, const MassDistribution& md,
                           const QuadratureSpec& spec = {});

}  // namespace latgrow
