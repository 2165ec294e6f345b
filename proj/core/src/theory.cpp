// Implements the limit-law oracles: fixed-time variance through the harmonic
// extension, the lateness double time integral with per-mode closed-form
// spatial integration, a Monte Carlo re-quadrature of the same quantity, and
// the disk point-correlation function in closed and quadrature form.
#include "latgrow/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "latgrow/gauss.hpp"
#include "latgrow/rng.hpp"

namespace latgrow {

namespace {

constexpr double kPi = std::numbers::pi;

// Intersection arc of the circle of radius R about the origin with the ball
// B_eps(c): the angular window [theta_c - w, theta_c + w]. No intersection is
// reported as w = 0, full coverage as w = pi.
struct Arc {
  double theta_c = 0.0;
  double half_width = 0.0;
  bool covered() const { return half_width > 0.0; }
};

Arc support_arc(double radius, const DiskSupport& support) {
  const double d = norm(support.center);
  const double eps = support.radius;
  if (radius <= eps - d) return {0.0, kPi};
  if (radius >= d + eps || radius <= d - eps) return {0.0, 0.0};
  const double cw = std::clamp(
      (radius * radius + d * d - eps * eps) / (2.0 * radius * d), -1.0, 1.0);
  return {std::atan2(support.center.y, support.center.x), std::acos(cw)};
}

// Harmonic extension of u from the circle of the given radius as Fourier
// coefficients (modes 0..n_modes). With a support hint the coefficient
// integrals run over the support arc with Gauss-Legendre nodes; otherwise
// equispaced sampling feeds the exact-angle transform. An empty coefficient
// vector encodes the zero extension.
FourierHarmonic boundary_harmonic(const std::function<double(Vec2)>& u,
                                  const std::optional<DiskSupport>& support, double radius,
                                  int n_modes, int arc_nodes, int boundary_samples) {
  if (support) {
    const Arc arc = support_arc(radius, *support);
    if (!arc.covered()) return {radius, {}};
    if (arc.half_width < kPi) {
      const GaussRule& rule = gauss_legendre(arc_nodes);
      std::vector<std::complex<double>> coeff(std::size_t(n_modes) + 1, 0.0);
      for (int k = 0; k < arc_nodes; ++k) {
        const double theta = arc.theta_c + arc.half_width * rule.x[std::size_t(k)];
        const double value = u({radius * std::cos(theta), radius * std::sin(theta)});
        if (value == 0.0) continue;
        const double scale = value * arc.half_width * rule.w[std::size_t(k)] / (2.0 * kPi);
        const std::complex<double> step = std::polar(1.0, -theta);
        std::complex<double> phase = 1.0;
        for (int n = 0; n <= n_modes; ++n) {
          coeff[std::size_t(n)] += scale * phase;
          phase *= step;
        }
      }
      return {radius, std::move(coeff)};
    }
  }
  const int count = std::max(boundary_samples, 4 * n_modes);
  std::vector<double> samples(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double theta = 2.0 * kPi * k / count;
    samples[std::size_t(k)] = u({radius * std::cos(theta), radius * std::sin(theta)});
  }
  return solve_disk_dirichlet(samples, radius, n_modes);
}

// Integral over D_t of A B (1 - sigma_t) for two harmonic extensions given by
// Fourier coefficients on circles of radii A.radius, B.radius >= R_t. Modes
// are orthogonal in the angle, and each radial moment over the three nested
// disks has the closed form below; the ratios keep every power bounded by 1.
double weighted_product_integral(const FourierHarmonic& a, const FourierHarmonic& b, double t) {
  if (a.coeff.empty() || b.coeff.empty()) return 0.0;
  const double d = a.radius * b.radius;
  const double tau = t / kPi;
  const double x1 = (1.0 + tau) / d;
  const double x2 = 1.0 / d;
  const double x3 = tau / d;
  const std::size_t n_min = std::min(a.coeff.size(), b.coeff.size());
  double p1 = x1;
  double p2 = x2;
  double p3 = x3;
  double sum = 0.0;
  for (std::size_t n = 0; n < n_min; ++n) {
    const double radial = d * (p1 - p2 - p3) / double(2 * n + 2);
    const double pair = a.coeff[n].real() * b.coeff[n].real() +
                        a.coeff[n].imag() * b.coeff[n].imag();
    sum += (n == 0 ? 1.0 : 2.0) * pair * radial;
    p1 *= x1;
    p2 *= x2;
    p3 *= x3;
  }
  return 2.0 * kPi * sum;
}

struct Band {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return hi - lo <= 0.0; }
  bool contains(double a, double b) const {
    const double mid = 0.5 * (a + b);
    return mid >= lo && mid <= hi;
  }
};

// Activation band of a test function: the times at which the flow boundary
// meets its support, clamped to [0, s]. `uncapped_hi` keeps the unclamped
// upper end for the final-boundary check.
struct BandInfo {
  Band band;
  double uncapped_lo = 0.0;
  double uncapped_hi = 0.0;
};

BandInfo activation_band(const std::optional<DiskSupport>& support, double s) {
  if (!support) return {{0.0, s}, -kPi, std::numeric_limits<double>::infinity()};
  const double d = norm(support->center);
  const double r_lo = std::max(d - support->radius, 0.0);
  const double r_hi = d + support->radius;
  const double lo = kPi * (r_lo * r_lo - 1.0);
  const double hi = kPi * (r_hi * r_hi - 1.0);
  return {{std::clamp(lo, 0.0, s), std::clamp(hi, 0.0, s)}, lo, hi};
}

bool reaches_final_boundary(const std::function<double(Vec2)>& u,
                            const std::optional<DiskSupport>& support, double s,
                            const BandInfo& info) {
  // A support hint whose activation interval avoids s settles the question;
  // otherwise (hints are allowed to be loose hulls) probe u on the final
  // circle, restricted to the hint arc when one is given.
  if (support && !(info.uncapped_lo < s && s < info.uncapped_hi)) return false;
  const double radius = disk_flow_radius(s);
  double theta_c = 0.0;
  double half_width = kPi;
  if (support) {
    const Arc arc = support_arc(radius, *support);
    if (!arc.covered()) return false;
    theta_c = arc.theta_c;
    half_width = arc.half_width;
  }
  constexpr int kProbe = 256;
  for (int k = 0; k <= kProbe; ++k) {
    const double theta = theta_c + half_width * (2.0 * k - kProbe) / kProbe;
    if (std::abs(u({radius * std::cos(theta), radius * std::sin(theta)})) > 1e-12) return true;
  }
  return false;
}

// One side of the lateness bilinear form: the test function, its activation
// band, the mode/sampling parameters, and a cache of boundary solves keyed by
// the exact time value.
struct LatenessSide {
  const std::function<double(Vec2)>* u = nullptr;
  const std::optional<DiskSupport>* support = nullptr;
  Band band;
  int n_modes = 64;
  int arc_nodes = 64;
  int boundary_samples = 512;
  std::unordered_map<std::uint64_t, FourierHarmonic>* cache = nullptr;

  const FourierHarmonic& extension(double t) const {
    const std::uint64_t key = std::bit_cast<std::uint64_t>(t);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    FourierHarmonic h = boundary_harmonic(*u, *support, disk_flow_radius(t), n_modes,
                                          arc_nodes, boundary_samples);
    return cache->emplace(key, std::move(h)).first->second;
  }
};

int auto_mode_count(const std::optional<DiskSupport>& support, int requested) {
  if (requested > 0) return requested;
  if (!support) return 64;
  const double d = norm(support->center);
  const double w =
      d > support->radius ? std::asin(std::min(1.0, support->radius / d)) : 0.5 * kPi;
  return std::clamp(int(std::ceil(30.0 / std::max(w, 1e-3))), 64, 4096);
}

std::vector<double> time_breaks(double s, const Band& a, const Band& b) {
  std::vector<double> breaks = {0.0, s, a.lo, a.hi, b.lo, b.hi};
  std::erase_if(breaks, [s](double t) { return t < 0.0 || t > s; });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return y - x <= 1e-14; }),
               breaks.end());
  return breaks;
}

// Rectangle block of the double time integral: the late axis strictly above
// the early axis, with the spatial integral taken at the early time.
double rect_block(const LatenessSide& late, double llo, double lhi, const LatenessSide& early,
                  double elo, double ehi, const GaussRule& rule) {
  const double lmid = 0.5 * (llo + lhi), lhl = 0.5 * (lhi - llo);
  const double emid = 0.5 * (elo + ehi), ehl = 0.5 * (ehi - elo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const FourierHarmonic& hl = late.extension(lmid + lhl * rule.x[i]);
    if (hl.coeff.empty()) continue;
    double inner = 0.0;
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double te = emid + ehl * rule.x[j];
      inner += ehl * rule.w[j] * weighted_product_integral(hl, early.extension(te), te);
    }
    sum += lhl * rule.w[i] * inner;
  }
  return sum;
}

// Lower triangle of a shared diagonal panel: outer time on `out`, inner time
// running from the panel base to the outer node, spatial integral at the
// inner time.
double triangle_block(const LatenessSide& out, const LatenessSide& in, double lo, double hi,
                      const GaussRule& rule) {
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double to = mid + half * rule.x[i];
    const FourierHarmonic& ho = out.extension(to);
    if (ho.coeff.empty()) continue;
    const double imid = 0.5 * (lo + to), ihl = 0.5 * (to - lo);
    double inner = 0.0;
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double ti = imid + ihl * rule.x[j];
      inner += ihl * rule.w[j] * weighted_product_integral(ho, in.extension(ti), ti);
    }
    sum += half * rule.w[i] * inner;
  }
  return sum;
}

// Full bilinear form int_0^s int_0^s I(psi^U_{s'}, psi^V_{s''}, min) ds' ds'';
// equals the symmetrized covariance integrand summed over both orderings and
// reduces to twice the ordered integral when U = V.
double lateness_bilinear(const LatenessSide& fu, const LatenessSide& fv, double s,
                         int n_nodes) {
  const std::vector<double> breaks = time_breaks(s, fu.band, fv.band);
  const GaussRule& rule = gauss_legendre(n_nodes);
  double total = 0.0;
  for (std::size_t a = 0; a + 1 < breaks.size(); ++a) {
    const double alo = breaks[a], ahi = breaks[a + 1];
    const bool u_in = fu.band.contains(alo, ahi);
    const bool v_in = fv.band.contains(alo, ahi);
    if (u_in && v_in) {
      total += triangle_block(fu, fv, alo, ahi, rule);
      total += triangle_block(fv, fu, alo, ahi, rule);
    }
    for (std::size_t b = 0; b < a; ++b) {
      const double blo = breaks[b], bhi = breaks[b + 1];
      if (u_in && fv.band.contains(blo, bhi)) total += rect_block(fu, alo, ahi, fv, blo, bhi, rule);
      if (v_in && fu.band.contains(blo, bhi)) total += rect_block(fv, alo, ahi, fu, blo, bhi, rule);
    }
  }
  return total;
}

// The two extra terms of the general form, present when u does not vanish on
// the final boundary: s^2 int |psi_s|^2 (1 - sigma_s) and the cross term
// -2s int_0^s I(psi_s, psi_{s'}, s') ds'.
double general_terms(const LatenessSide& f, double s, int n_nodes) {
  const FourierHarmonic& final_ext = f.extension(s);
  if (final_ext.coeff.empty()) return 0.0;
  double value = s * s * weighted_product_integral(final_ext, final_ext, s);
  const std::vector<double> breaks = time_breaks(s, f.band, f.band);
  const GaussRule& rule = gauss_legendre(n_nodes);
  double cross = 0.0;
  for (std::size_t a = 0; a + 1 < breaks.size(); ++a) {
    const double lo = breaks[a], hi = breaks[a + 1];
    if (!f.band.contains(lo, hi)) continue;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double t = mid + half * rule.x[i];
      cross += half * rule.w[i] * weighted_product_integral(final_ext, f.extension(t), t);
    }
  }
  return value - 2.0 * s * cross;
}

void require_disk_preset(const MassDistribution& md, const char* what) {
  if (!md.is_disk_preset()) {
    throw std::invalid_argument(std::string(what) +
                                " is implemented for the disk preset flow only");
  }
}

DiskSupport enclosing_ball(const DiskSupport& a, const DiskSupport& b) {
  const Vec2 delta = b.center - a.center;
  const double d = norm(delta);
  if (d + b.radius <= a.radius) return a;
  if (d + a.radius <= b.radius) return b;
  const double radius = 0.5 * (d + a.radius + b.radius);
  const double shift = 0.5 * (d + b.radius - a.radius) / d;
  return {{a.center.x + shift * delta.x, a.center.y + shift * delta.y}, radius};
}

// Area of the intersection of the ball B_r1(c), |c| = d, with the ball of
// radius r2 about the origin.
double lens_area(double d, double r1, double r2) {
  if (d >= r1 + r2) return 0.0;
  if (d + r1 <= r2) return kPi * r1 * r1;
  if (d + r2 <= r1) return kPi * r2 * r2;
  const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
  const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
  const double tri = 0.5 * std::sqrt(std::max(
      0.0, (r1 + r2 - d) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)));
  return r1 * r1 * a1 + r2 * r2 * a2 - tri;
}

}  // namespace

double bump_ball(Vec2 x, Vec2 center, double eps) {
  const double t2 = norm2(x - center) / (eps * eps);
  if (t2 >= 1.0) return 0.0;
  const double base = 1.0 - t2;
  const double b2 = base * base;
  return 6.0 / (kPi * eps * eps) * b2 * b2 * base;
}

double bump_radial(Vec2 x, double r0, double eps) {
  const double t = (norm(x) - r0) / eps;
  const double t2 = t * t;
  if (t2 >= 1.0) return 0.0;
  const double base = 1.0 - t2;
  const double b2 = base * base;
  return b2 * b2 * base;
}

QuadratureResult variance_fixed_time(const std::function<double(Vec2)>& u, double s,
                                     const MassDistribution& md, const FixedTimeSpec& spec) {
  return covariance_fixed_time(u, u, s, md, spec);
}

QuadratureResult covariance_fixed_time(const std::function<double(Vec2)>& u,
                                       const std::function<double(Vec2)>& v, double s,
                                       const MassDistribution& md, const FixedTimeSpec& spec) {
  require_disk_preset(md, "covariance_fixed_time");
  if (!(s > 0.0) || s > md.total_horizon()) {
    throw std::invalid_argument("covariance_fixed_time needs s in (0, T]");
  }
  const double radius = disk_flow_radius(s);
  const FourierHarmonic pu =
      boundary_harmonic(u, std::nullopt, radius, spec.n_modes, 0, spec.boundary_samples);
  const FourierHarmonic pv =
      boundary_harmonic(v, std::nullopt, radius, spec.n_modes, 0, spec.boundary_samples);
  return integrate_weighted([&](Vec2 z) { return pu.eval(z) * pv.eval(z); }, md, s, spec.space);
}

QuadratureResult variance_lateness(const std::function<double(Vec2)>& u,
                                   const std::optional<DiskSupport>& support, double s,
                                   const MassDistribution& md, const LatenessSpec& spec) {
  require_disk_preset(md, "variance_lateness");
  if (!(s > 0.0) || s > md.total_horizon()) {
    throw std::invalid_argument("variance_lateness needs s in (0, T]");
  }
  const BandInfo info = activation_band(support, s);
  if (!spec.general && reaches_final_boundary(u, support, s, info)) {
    throw std::invalid_argument(
        "variance_lateness: test function does not vanish on the final flow boundary; "
        "set LatenessSpec.general");
  }
  std::unordered_map<std::uint64_t, FourierHarmonic> cache;
  LatenessSide side{&u,
                    &support,
                    info.band,
                    auto_mode_count(support, spec.n_modes),
                    spec.arc_nodes,
                    spec.boundary_samples,
                    &cache};
  if (side.band.empty() && !spec.general) return {0.0, 0.0, true};
  const auto assemble = [&](int nodes) {
    double value = side.band.empty() ? 0.0 : lateness_bilinear(side, side, s, nodes);
    if (spec.general) value += general_terms(side, s, nodes);
    return value;
  };
  const double coarse = assemble(spec.time_nodes);
  const double fine = assemble(2 * spec.time_nodes);
  const double err = std::abs(fine - coarse);
  return {fine, err, err <= spec.target};
}

QuadratureResult covariance_lateness(const std::function<double(Vec2)>& u,
                                     const std::optional<DiskSupport>& support_u,
                                     const std::function<double(Vec2)>& v,
                                     const std::optional<DiskSupport>& support_v, double s,
                                     const MassDistribution& md, const LatenessSpec& spec) {
  require_disk_preset(md, "covariance_lateness");
  if (!(s > 0.0) || s > md.total_horizon()) {
    throw std::invalid_argument("covariance_lateness needs s in (0, T]");
  }
  if (spec.general) {
    // Polarize through the general variance form, merging the support hints.
    // The merged hull is coarser than either support, so the mode count must
    // come from the finer of the two original hints, not from the hull.
    std::optional<DiskSupport> merged;
    if (support_u && support_v) merged = enclosing_ball(*support_u, *support_v);
    LatenessSpec inner = spec;
    if (inner.n_modes == 0) {
      inner.n_modes =
          std::max(auto_mode_count(support_u, 0), auto_mode_count(support_v, 0));
    }
    const auto plus = [&](Vec2 x) { return u(x) + v(x); };
    const auto minus = [&](Vec2 x) { return u(x) - v(x); };
    const QuadratureResult vp = variance_lateness(plus, merged, s, md, inner);
    const QuadratureResult vm = variance_lateness(minus, merged, s, md, inner);
    return {0.25 * (vp.value - vm.value), 0.25 * (vp.error_estimate + vm.error_estimate),
            vp.converged && vm.converged};
  }
  const BandInfo info_u = activation_band(support_u, s);
  const BandInfo info_v = activation_band(support_v, s);
  if (reaches_final_boundary(u, support_u, s, info_u) ||
      reaches_final_boundary(v, support_v, s, info_v)) {
    throw std::invalid_argument(
        "covariance_lateness: a test function does not vanish on the final flow boundary; "
        "set LatenessSpec.general");
  }
  if (info_u.band.empty() || info_v.band.empty()) return {0.0, 0.0, true};
  std::unordered_map<std::uint64_t, FourierHarmonic> cache_u, cache_v;
  LatenessSide side_u{&u,
                      &support_u,
                      info_u.band,
                      auto_mode_count(support_u, spec.n_modes),
                      spec.arc_nodes,
                      spec.boundary_samples,
                      &cache_u};
  LatenessSide side_v{&v,
                      &support_v,
                      info_v.band,
                      auto_mode_count(support_v, spec.n_modes),
                      spec.arc_nodes,
                      spec.boundary_samples,
                      &cache_v};
  const double coarse = lateness_bilinear(side_u, side_v, s, spec.time_nodes);
  const double fine = lateness_bilinear(side_u, side_v, s, 2 * spec.time_nodes);
  const double err = std::abs(fine - coarse);
  return {fine, err, err <= spec.target};
}

McEstimate mc_requadrature_lateness(const std::function<double(Vec2)>& u,
                                    const DiskSupport& support, double s,
                                    const MassDistribution& md, std::int64_t samples,
                                    std::uint64_t seed, const LatenessSpec& spec) {
  require_disk_preset(md, "mc_requadrature_lateness");
  if (spec.general) {
    throw std::invalid_argument("mc_requadrature_lateness covers the interior-support form only");
  }
  if (samples < 2) throw std::invalid_argument("mc_requadrature_lateness needs >= 2 samples");
  const BandInfo info = activation_band(support, s);
  if (reaches_final_boundary(u, support, s, info)) {
    throw std::invalid_argument(
        "mc_requadrature_lateness: test function does not vanish on the final flow boundary");
  }
  if (info.band.empty()) return {0.0, 0.0, samples};
  const double lo = info.band.lo;
  const double len = info.band.hi - info.band.lo;
  const int n_modes = auto_mode_count(support, spec.n_modes);
  const std::optional<DiskSupport> hint = support;
  // Importance mixture for the spatial variable: mostly a ball around the
  // support (where the harmonic extensions concentrate), with a defensive
  // uniform component over the full domain to keep the estimator unbiased.
  const double beta = 0.85;
  const double near_radius = 4.0 * support.radius;
  const double d_center = norm(support.center);
  CounterStream rng(seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t k = 0; k < samples; ++k) {
    const double a = lo + len * rng.next_unit();
    const double b = lo + len * rng.next_unit();
    const double t_late = std::max(a, b);
    const double t_early = std::min(a, b);
    const double radius = disk_flow_radius(t_early);
    const double area_disk = kPi * radius * radius;
    const double area_near = lens_area(d_center, near_radius, radius);
    Vec2 x{0.0, 0.0};
    if (area_near > 1e-12 && rng.next_unit() < beta) {
      for (int tries = 0; tries < 256; ++tries) {
        const double rho = near_radius * std::sqrt(rng.next_unit());
        const double phi = 2.0 * kPi * rng.next_unit();
        x = {support.center.x + rho * std::cos(phi), support.center.y + rho * std::sin(phi)};
        if (norm2(x) <= radius * radius) break;
      }
    } else {
      const double r = radius * std::sqrt(rng.next_unit());
      const double theta = 2.0 * kPi * rng.next_unit();
      x = {r * std::cos(theta), r * std::sin(theta)};
    }
    double density = (1.0 - beta) / area_disk;
    if (area_near > 1e-12 && norm2(x - support.center) <= near_radius * near_radius) {
      density += beta / area_near;
    }
    double h = 0.0;
    if (norm2(x) <= radius * radius) {
      const FourierHarmonic late = boundary_harmonic(u, hint, disk_flow_radius(t_late), n_modes,
                                                     spec.arc_nodes, spec.boundary_samples);
      const FourierHarmonic early =
          boundary_harmonic(u, hint, radius, n_modes, spec.arc_nodes, spec.boundary_samples);
      h = (late.coeff.empty() ? 0.0 : late.eval(x)) *
          (early.coeff.empty() ? 0.0 : early.eval(x)) * (1.0 - md.sigma(t_early, x));
    }
    const double value = len * len * h / density;
    const double delta = value - mean;
    mean += delta / double(k + 1);
    m2 += delta * (value - mean);
  }
  const double se = std::sqrt(m2 / double(samples - 1) / double(samples));
  return {mean, se, samples};
}

double g_disk_closed(Vec2 p, Vec2 q, bool* swapped) {
  bool did_swap = false;
  if (norm2(q) > norm2(p)) {
    std::swap(p, q);
    did_swap = true;
  }
  if (swapped != nullptr) *swapped = did_swap;
  const double rp = norm(p);
  const double rq = norm(q);
  if (!(rq > 1.0) || !(rp < std::numbers::sqrt2)) {
    throw std::invalid_argument("g_disk_closed needs 1 < |q| <= |p| < sqrt(2)");
  }
  if (norm(p - q) < 1e-6) {
    throw std::invalid_argument("g_disk_closed: query within 1e-6 of the singularity at p = q");
  }
  const std::complex<double> cp{p.x, p.y};
  const std::complex<double> cq{q.x, q.y};
  const std::complex<double> pbq = std::conj(cp) * cq;
  const std::complex<double> logs = std::log(1.0 - std::conj(cq) / std::conj(cp)) -
                                    std::log(1.0 - 1.0 / pbq) -
                                    std::log(1.0 - (rq * rq - 1.0) / pbq);
  const double two_pi_cubed = 8.0 * kPi * kPi * kPi;
  return -two_pi_cubed * rp * rq * (pbq * logs).real();
}

QuadratureResult g_general(Vec2 p, Vec2 q, const MassDistribution& md,
                           const QuadratureSpec& spec) {
  require_disk_preset(md, "g_general");
  if (norm2(q) > norm2(p)) std::swap(p, q);
  const double rp = norm(p);
  const double rq = norm(q);
  if (!(rq > 1.0) || !(rp < std::numbers::sqrt2)) {
    throw std::invalid_argument("g_general needs 1 < |q| <= |p| < sqrt(2)");
  }
  if (norm(p - q) < 1e-6) {
    throw std::invalid_argument("g_general: query within 1e-6 of the singularity at p = q");
  }
  const double delta = std::atan2(p.y, p.x) - std::atan2(q.y, q.x);
  const double cos_delta = std::cos(delta);
  const double s_star = kPi * (rq * rq - 1.0);
  // The angular integral of the kernel product is a geometric sum with the
  // closed form (1 - x^2) / (1 - 2 x cos(delta) + x^2), x = r^2 / (r_p r_q).
  const auto kernel = [&](Vec2 z) {
    const double x = norm2(z) / (rp * rq);
    return (1.0 - x * x) / ((1.0 - 2.0 * x * cos_delta + x * x)) / (2.0 * kPi);
  };
  const QuadratureResult inner = integrate_weighted(kernel, md, s_star, spec);
  const double scale = 8.0 * kPi * kPi * kPi * rp * rq;
  return {scale * inner.value, scale * inner.error_estimate, inner.converged};
}

}  // namespace latgrow
