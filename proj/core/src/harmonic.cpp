// Grid and continuum Dirichlet solvers, Poisson kernel, weighted quadrature.
#include "latgrow/harmonic.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "latgrow/gauss.hpp"

namespace latgrow {

namespace {

constexpr std::uint8_t kOutside = 0;
constexpr std::uint8_t kInterior = 1;
constexpr std::uint8_t kBoundary = 2;

// Scaled residual at an interior node: (4-neighbor mean minus center) * m^2.
// The sum is grouped in opposite pairs so a constant field has residual
// exactly zero in floating point.
inline double scaled_residual(const Grid2D<double>& v, LatticePoint z, double m2) {
  const double* c = &v.at(z);
  const std::ptrdiff_t stride = v.nx();
  const double sum = (c[1] + c[-1]) + (c[stride] + c[-stride]);
  return (0.25 * sum - *c) * m2;
}

Grid2D<std::uint8_t> classify_domain(const std::vector<LatticePoint>& domain) {
  std::int32_t ilo = 0, ihi = -1, jlo = 0, jhi = -1;
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const LatticePoint z = domain[k];
    if (k == 0) {
      ilo = ihi = z.i;
      jlo = jhi = z.j;
    } else {
      ilo = std::min(ilo, z.i);
      ihi = std::max(ihi, z.i);
      jlo = std::min(jlo, z.j);
      jhi = std::max(jhi, z.j);
    }
  }
  // Pad one cell so neighbor queries of domain members stay in the window.
  Grid2D<std::uint8_t> mask(ilo - 1, jlo - 1, (ihi - ilo) + 3, (jhi - jlo) + 3, kOutside);
  if (domain.empty()) return mask;
  for (LatticePoint z : domain) mask.at(z) = kInterior;
  for (LatticePoint z : domain) {
    for (unsigned d = 0; d < 4; ++d) {
      if (mask.at(neighbor(z, d)) == kOutside) {
        mask.at(z) = kBoundary;
        break;
      }
    }
  }
  return mask;
}

// Every interior node must be reachable from some boundary node through the
// domain; a component without boundary data has no determined solution.
void check_interior_reachable(const Grid2D<std::uint8_t>& mask) {
  Grid2D<std::uint8_t> seen(mask.i0(), mask.j0(), mask.nx(), mask.ny(), 0);
  std::vector<LatticePoint> stack;
  std::size_t interior = 0;
  for (std::size_t idx = 0; idx < mask.size(); ++idx) {
    if (mask.data()[idx] == kInterior) ++interior;
    if (mask.data()[idx] == kBoundary) {
      seen.data()[idx] = 1;
      stack.push_back(mask.point_at(idx));
    }
  }
  std::size_t reached = 0;
  while (!stack.empty()) {
    const LatticePoint z = stack.back();
    stack.pop_back();
    for (unsigned d = 0; d < 4; ++d) {
      const LatticePoint q = neighbor(z, d);
      if (mask.at(q) == kInterior && !seen.at(q)) {
        seen.at(q) = 1;
        ++reached;
        stack.push_back(q);
      }
    }
  }
  if (reached != interior)
    throw std::invalid_argument("grid Dirichlet domain has an interior component with no boundary");
}

double relaxation_omega(const Grid2D<std::uint8_t>& mask) {
  const int nmax = std::max(mask.nx(), mask.ny());
  const double mu = std::cos(std::numbers::pi / (nmax + 1));
  return 2.0 / (1.0 + std::sqrt(1.0 - mu * mu));
}

// One irregular node of the cut scheme: value(node) is tied to the interior
// neighbor opposite the shortest cut by value = (rho * value(q) + data) / (1 + rho);
// q_index < 0 pins the node to its boundary data directly.
struct CutNode {
  std::size_t index = 0;    // flat index of the node in the value grid
  std::ptrdiff_t q_off = 0; // flat offset to the opposite interior neighbor
  bool pinned = true;
  double rho = 0.0;
  double data = 0.0;        // u at the boundary crossing
};

struct RelaxProblem {
  Grid2D<double> values;
  Grid2D<std::uint8_t> mask;
  std::vector<CutNode> cuts;  // empty in node mode
  double m2 = 1.0;
};

// SOR sweeps over interior nodes (cut nodes updated by their own closure) until
// the scaled residual falls below tol. Throws if the sweep budget runs out.
void relax(RelaxProblem& p, double tol) {
  const double omega = relaxation_omega(p.mask);
  const std::ptrdiff_t stride = p.mask.nx();
  std::vector<std::size_t> interior;
  for (std::size_t idx = 0; idx < p.mask.size(); ++idx)
    if (p.mask.data()[idx] == kInterior) interior.push_back(idx);
  if (interior.empty() && p.cuts.empty()) return;

  const long max_sweeps = 400L * std::max(p.mask.nx(), p.mask.ny()) + 20000L;
  double* v = p.values.data();
  for (long sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t idx : interior) {
      const double sum = (v[idx + 1] + v[idx - 1]) + (v[idx + stride] + v[idx - stride]);
      v[idx] += omega * (0.25 * sum - v[idx]);
    }
    for (const CutNode& c : p.cuts) {
      const double q = c.pinned ? 0.0 : v[std::size_t(std::ptrdiff_t(c.index) + c.q_off)];
      v[c.index] = c.pinned ? c.data : (c.rho * q + c.data) / (1.0 + c.rho);
    }
    if (sweep % 8 != 7 && sweep + 1 != max_sweeps) continue;
    double res = 0.0;
    for (std::size_t idx : interior) {
      const double sum = (v[idx + 1] + v[idx - 1]) + (v[idx + stride] + v[idx - stride]);
      res = std::max(res, std::abs(0.25 * sum - v[idx]) * p.m2);
    }
    for (const CutNode& c : p.cuts) {
      const double q = c.pinned ? 0.0 : v[std::size_t(std::ptrdiff_t(c.index) + c.q_off)];
      const double target = c.pinned ? c.data : (c.rho * q + c.data) / (1.0 + c.rho);
      res = std::max(res, std::abs(target - v[c.index]) * p.m2);
    }
    if (res <= tol) return;
  }
  throw std::runtime_error("grid Dirichlet relaxation did not converge");
}

RelaxProblem node_problem(const std::vector<LatticePoint>& domain, int m,
                          const std::function<double(LatticePoint)>& boundary_values) {
  if (m < 1) throw std::invalid_argument("grid Dirichlet requires m >= 1");
  RelaxProblem p;
  p.mask = classify_domain(domain);
  p.m2 = double(m) * double(m);
  check_interior_reachable(p.mask);
  p.values = Grid2D<double>(p.mask.i0(), p.mask.j0(), p.mask.nx(), p.mask.ny(), 0.0);
  double sum = 0.0;
  std::size_t nb = 0;
  for (std::size_t idx = 0; idx < p.mask.size(); ++idx) {
    if (p.mask.data()[idx] != kBoundary) continue;
    const double b = boundary_values(p.mask.point_at(idx));
    p.values.data()[idx] = b;
    sum += b;
    ++nb;
  }
  const double guess = nb ? sum / double(nb) : 0.0;
  for (std::size_t idx = 0; idx < p.mask.size(); ++idx)
    if (p.mask.data()[idx] == kInterior) p.values.data()[idx] = guess;
  return p;
}

double default_tolerance(const RelaxProblem& p) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t idx = 0; idx < p.mask.size(); ++idx) {
    if (p.mask.data()[idx] != kBoundary) continue;
    lo = std::min(lo, p.values.data()[idx]);
    hi = std::max(hi, p.values.data()[idx]);
  }
  if (!(lo <= hi)) return 1e-30;
  return std::max(1e-10 * (hi - lo), 1e-30);
}

GridFunction finish(RelaxProblem&& p, int m, double tol) {
  GridFunction g;
  g.m = m;
  g.values = std::move(p.values);
  g.mask = std::move(p.mask);
  g.solve_tolerance = tol;
  return g;
}

}  // namespace

std::vector<LatticePoint> GridFunction::domain() const {
  std::vector<LatticePoint> out;
  for (std::size_t idx = 0; idx < mask.size(); ++idx)
    if (mask.data()[idx] != kOutside) out.push_back(mask.point_at(idx));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> GridFunction::boundary() const {
  std::vector<LatticePoint> out;
  for (std::size_t idx = 0; idx < mask.size(); ++idx)
    if (mask.data()[idx] == kBoundary) out.push_back(mask.point_at(idx));
  std::sort(out.begin(), out.end());
  return out;
}

double GridFunction::residual_sup() const {
  const double m2 = double(m) * double(m);
  double res = 0.0;
  for (std::size_t idx = 0; idx < mask.size(); ++idx)
    if (mask.data()[idx] == kInterior)
      res = std::max(res, std::abs(scaled_residual(values, mask.point_at(idx), m2)));
  return res;
}

std::pair<double, double> GridFunction::boundary_range() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t idx = 0; idx < mask.size(); ++idx) {
    if (mask.data()[idx] != kBoundary) continue;
    lo = std::min(lo, values.data()[idx]);
    hi = std::max(hi, values.data()[idx]);
  }
  if (!(lo <= hi)) return {0.0, 0.0};
  return {lo, hi};
}

double GridFunction::maximum_principle_slack() const {
  const auto [lo, hi] = boundary_range();
  double slack = 0.0;
  for (std::size_t idx = 0; idx < mask.size(); ++idx) {
    if (mask.data()[idx] != kInterior) continue;
    const double v = values.data()[idx];
    slack = std::max({slack, v - hi, lo - v});
  }
  return slack;
}

GridFunction solve_grid_dirichlet(const std::vector<LatticePoint>& domain, int m,
                                  const std::function<double(LatticePoint)>& boundary_values,
                                  double tol) {
  RelaxProblem p = node_problem(domain, m, boundary_values);
  const double tol_eff = tol > 0 ? tol : default_tolerance(p);
  relax(p, tol_eff);
  return finish(std::move(p), m, tol_eff);
}

GridFunction solve_grid_dirichlet_cut(const Region& region, int m,
                                      const std::function<double(Vec2)>& u, double tol) {
  if (m < 1) throw std::invalid_argument("grid Dirichlet requires m >= 1");
  const std::vector<LatticePoint> domain = lattice_points(region, m);
  RelaxProblem p;
  p.mask = classify_domain(domain);
  p.m2 = double(m) * double(m);
  p.values = Grid2D<double>(p.mask.i0(), p.mask.j0(), p.mask.nx(), p.mask.ny(), 0.0);

  // Locate the boundary crossing on a cut edge by bisection on membership; the
  // node end is inside the region and the neighbor end is outside.
  const auto crossing = [&](Vec2 from, Vec2 to) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (region.contains(from + mid * (to - from)) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  const std::ptrdiff_t stride = p.mask.nx();
  const std::ptrdiff_t offs[4] = {+1, -1, +stride, -stride};
  double data_sum = 0.0;
  for (std::size_t idx = 0; idx < p.mask.size(); ++idx) {
    if (p.mask.data()[idx] != kBoundary) continue;
    const LatticePoint z = p.mask.point_at(idx);
    const Vec2 zp = to_plane(z, m);
    CutNode c;
    c.index = idx;
    double best = std::numeric_limits<double>::infinity();
    unsigned best_dir = 0;
    for (unsigned d = 0; d < 4; ++d) {
      if (p.mask.at(neighbor(z, d)) != kOutside) continue;
      const double t = crossing(zp, to_plane(neighbor(z, d), m));
      if (t < best) {
        best = t;
        best_dir = d;
      }
    }
    c.rho = best;
    c.data = u(zp + best * (to_plane(neighbor(z, best_dir), m) - zp));
    // The interior neighbor opposite the cut; a node with region on neither
    // side of that axis is pinned straight to its crossing value.
    const unsigned opp = best_dir ^ 1u;
    if (p.mask.at(neighbor(z, opp)) != kOutside) {
      c.pinned = false;
      c.q_off = offs[opp];
    }
    p.values.data()[idx] = c.data;
    data_sum += c.data;
    p.cuts.push_back(c);
  }
  if (!domain.empty() && p.cuts.empty())
    throw std::invalid_argument("region restriction has no boundary nodes");
  const double guess = p.cuts.empty() ? 0.0 : data_sum / double(p.cuts.size());
  for (std::size_t idx = 0; idx < p.mask.size(); ++idx)
    if (p.mask.data()[idx] == kInterior) p.values.data()[idx] = guess;

  // Cut-node crossing values are already stored on the boundary ring, so the
  // default tolerance scales with the range of the continuum data.
  const double tol_eff = tol > 0 ? tol : default_tolerance(p);
  relax(p, tol_eff);
  return finish(std::move(p), m, tol_eff);
}

namespace detail {

GridFunction solve_grid_dirichlet_direct(const std::vector<LatticePoint>& domain, int m,
                                         const std::function<double(LatticePoint)>& boundary_values) {
  RelaxProblem p = node_problem(domain, m, boundary_values);
  std::vector<std::size_t> interior;
  Grid2D<std::int32_t> pos(p.mask.i0(), p.mask.j0(), p.mask.nx(), p.mask.ny(), -1);
  for (std::size_t idx = 0; idx < p.mask.size(); ++idx) {
    if (p.mask.data()[idx] != kInterior) continue;
    pos.data()[idx] = std::int32_t(interior.size());
    interior.push_back(idx);
  }
  const auto n = Eigen::Index(interior.size());
  if (n > 0) {
    const std::ptrdiff_t stride = p.mask.nx();
    const std::ptrdiff_t offs[4] = {+1, -1, +stride, -stride};
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      trips.emplace_back(k, k, 1.0);
      for (std::ptrdiff_t off : offs) {
        const std::size_t q = interior[std::size_t(k)] + std::size_t(off);
        if (p.mask.data()[q] == kInterior)
          trips.emplace_back(k, pos.data()[q], -0.25);
        else
          rhs[k] += 0.25 * p.values.data()[q];
      }
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trips.begin(), trips.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("grid Dirichlet direct factorization failed");
    Eigen::VectorXd x = solver.solve(rhs);
    // One refinement pass pushes the residual to the rounding floor.
    x += solver.solve(rhs - a * x);
    for (Eigen::Index k = 0; k < n; ++k) p.values.data()[interior[std::size_t(k)]] = x[k];
  }
  return finish(std::move(p), m, 0.0);
}

}  // namespace detail

double FourierHarmonic::eval(double r, double theta) const {
  if (coeff.empty()) return 0.0;
  const double rho = r / radius;
  const std::complex<double> rot = std::polar(1.0, theta);
  std::complex<double> phase = rot;
  double val = coeff[0].real();
  double radial = 1.0;
  for (std::size_t nn = 1; nn < coeff.size(); ++nn) {
    radial *= rho;
    val += 2.0 * radial * (coeff[nn].real() * phase.real() - coeff[nn].imag() * phase.imag());
    phase *= rot;
  }
  return val;
}

double FourierHarmonic::eval(Vec2 z) const { return eval(norm(z), std::atan2(z.y, z.x)); }

double FourierHarmonic::boundary_mismatch(std::span<const double> samples) const {
  const std::size_t count = samples.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double theta = 2.0 * std::numbers::pi * double(k) / double(count);
    worst = std::max(worst, std::abs(eval(radius, theta) - samples[k]));
  }
  return worst;
}

FourierHarmonic solve_disk_dirichlet(std::span<const double> samples, double radius,
                                     int n_modes) {
  if (n_modes < 0) throw std::invalid_argument("n_modes must be nonnegative");
  if (radius <= 0) throw std::invalid_argument("disk radius must be positive");
  const auto count = std::int64_t(samples.size());
  if (count < std::max<std::int64_t>(1, 4 * std::int64_t(n_modes)))
    throw std::invalid_argument("disk Dirichlet needs at least 4 * n_modes boundary samples");
  FourierHarmonic h;
  h.radius = radius;
  h.coeff.resize(std::size_t(n_modes) + 1);
  for (std::int64_t nn = 0; nn <= n_modes; ++nn) {
    std::complex<double> acc{0.0, 0.0};
    for (std::int64_t k = 0; k < count; ++k) {
      // Exact-angle phase: reduce n*k modulo the sample count first.
      const double ang = -2.0 * std::numbers::pi * double((nn * k) % count) / double(count);
      acc += samples[std::size_t(k)] * std::polar(1.0, ang);
    }
    h.coeff[std::size_t(nn)] = acc / double(count);
  }
  return h;
}

double PoissonKernelDisk::eval(Vec2 z, int n_trunc) const {
  if (n_trunc < 1) throw std::invalid_argument("poisson kernel needs n_trunc >= 1");
  const double r = norm(z);
  if (!(r < r_p)) throw std::invalid_argument("poisson kernel requires |z| < r_p");
  const double rho = r / r_p;
  const double dtheta = std::atan2(z.y, z.x) - theta_p;
  const std::complex<double> rot = std::polar(rho, dtheta);
  std::complex<double> cur = rot;
  double val = 1.0;
  for (int nn = 1; nn <= n_trunc; ++nn) {
    val += 2.0 * cur.real();
    cur *= rot;
  }
  return val;
}

int PoissonKernelDisk::truncation_order(double rho, double target) {
  if (!(rho < 1.0)) throw std::invalid_argument("truncation bound needs rho < 1");
  if (target <= 0) throw std::invalid_argument("truncation target must be positive");
  if (rho <= 0) return 1;
  int n = 1;
  double bound = 2.0 * rho * rho / (1.0 - rho);  // order n=1 keeps terms up to rho^1
  while (bound > target && n < 1000000) {
    bound *= rho;
    ++n;
  }
  return n;
}

double PoissonKernelDisk::eval(Vec2 z, double target) const {
  return eval(z, truncation_order(norm(z) / r_p, target));
}

double poisson_kernel_disk(Vec2 p, Vec2 z, int n_trunc) {
  const PoissonKernelDisk kernel{norm(p), std::atan2(p.y, p.x)};
  return kernel.eval(z, n_trunc);
}

namespace {

double polar_weighted_sum(const std::function<double(Vec2)>& f, const MassDistribution& md,
                          double s, const std::vector<double>& breaks, int nr, int na) {
  const PanelRule rule = panel_rule(breaks, nr);
  double total = 0.0;
  for (std::size_t k = 0; k < rule.x.size(); ++k) {
    const double r = rule.x[k];
    double ring = 0.0;
    for (int a = 0; a < na; ++a) {
      const double theta = 2.0 * std::numbers::pi * (a + 0.5) / na;
      const Vec2 z{r * std::cos(theta), r * std::sin(theta)};
      ring += f(z) * (1.0 - md.sigma(s, z));
    }
    total += rule.w[k] * r * ring * (2.0 * std::numbers::pi / na);
  }
  return total;
}

}  // namespace

QuadratureResult integrate_weighted(const std::function<double(Vec2)>& f,
                                    const MassDistribution& md, double s,
                                    const QuadratureSpec& spec) {
  if (!md.is_disk_preset())
    throw std::invalid_argument("integrate_weighted covers the disk preset flow");
  if (s < 0) throw std::invalid_argument("flow time must be nonnegative");
  if (spec.radial_nodes < 2 || spec.angular_nodes < 4)
    throw std::invalid_argument("quadrature spec is too coarse");
  const double r_out = disk_flow_radius(s);
  std::vector<double> breaks{0.0, std::sqrt(s / std::numbers::pi), 1.0};
  breaks.insert(breaks.end(), spec.extra_breaks.begin(), spec.extra_breaks.end());
  std::erase_if(breaks, [&](double r) { return r < 0.0 || r >= r_out - 1e-14; });
  breaks.push_back(r_out);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return b - a < 1e-14; }),
               breaks.end());
  if (breaks.front() > 1e-14) breaks.insert(breaks.begin(), 0.0);

  const double coarse = polar_weighted_sum(f, md, s, breaks, spec.radial_nodes,
                                           spec.angular_nodes);
  const double fine = polar_weighted_sum(f, md, s, breaks, 2 * spec.radial_nodes,
                                         2 * spec.angular_nodes);
  QuadratureResult out;
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse);
  out.converged = out.error_estimate <= spec.target;
  return out;
}

}  // namespace latgrow
