// Tests for the limit-law oracles: fixed-time and lateness variances against
// analytic disk values, Monte Carlo re-quadrature agreement, and the disk
// correlation function through its closed form, series, and quadrature routes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include "latgrow/gauss.hpp"
#include "latgrow/lattice.hpp"
#include "latgrow/theory.hpp"

using namespace latgrow;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Partial sums of the positive-frequency mode expansion of the correlation
// function; every power ratio is below 1 on the valid parameter range.
double g_series_partial(Vec2 p, Vec2 q, int jmax) {
  double rp = norm(p), rq = norm(q);
  const double delta = std::atan2(p.y, p.x) - std::atan2(q.y, q.x);
  if (rq > rp) std::swap(rp, rq);
  const double a = rq / rp;
  const double b = 1.0 / (rp * rq);
  const double c = (rq * rq - 1.0) / (rp * rq);
  double pa = a, pb = b, pc = c, sum = 0.0;
  for (int j = 0; j <= jmax; ++j) {
    sum += std::cos(j * delta) / (j + 1) * (pa - pb - pc);
    pa *= a;
    pb *= b;
    pc *= c;
  }
  return 8.0 * kPi * kPi * kPi * (rp * rq) * (rp * rq) * sum;
}

// Polar quadrature of f over the ball B_eps(c): Gauss-Legendre radially,
// midpoint in the angle.
double ball_quadrature(const std::function<double(Vec2)>& f, Vec2 c, double eps, int nr = 12,
                       int na = 24) {
  const GaussRule& rad = gauss_legendre(nr);
  double sum = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double rho = 0.5 * eps * (1.0 + rad.x[std::size_t(i)]);
    const double wr = 0.5 * eps * rad.w[std::size_t(i)] * rho * (2.0 * kPi / na);
    for (int ai = 0; ai < na; ++ai) {
      const double phi = 2.0 * kPi * ai / na;
      sum += wr * f({c.x + rho * std::cos(phi), c.y + rho * std::sin(phi)});
    }
  }
  return sum;
}

// Mollified kernel average int int eta_p g eta_q over two disjoint bumps.
double eta_g_eta(Vec2 p, Vec2 q, double eps) {
  return ball_quadrature(
      [&](Vec2 x) {
        return bump_ball(x, p, eps) *
               ball_quadrature([&](Vec2 y) { return bump_ball(y, q, eps) * g_disk_closed(x, y); },
                               q, eps);
      },
      p, eps);
}

LatenessSpec cheap_spec() {
  LatenessSpec spec;
  spec.time_nodes = 12;
  spec.arc_nodes = 48;
  spec.n_modes = 256;
  return spec;
}

}  // namespace

TEST_CASE("bump test functions have unit mass and exact support") {
  const Vec2 c{1.2, 0.0};
  const double eps = 0.1;
  const double mass = ball_quadrature([&](Vec2 x) { return bump_ball(x, c, eps); }, c, eps, 24, 48);
  CHECK(std::abs(mass - 1.0) <= 1e-10);
  CHECK(bump_ball({1.2 + eps, 0.0}, c, eps) == 0.0);
  CHECK(bump_ball({1.2, eps * 1.0001}, c, eps) == 0.0);
  CHECK(bump_ball(c, c, eps) == doctest::Approx(6.0 / (kPi * eps * eps)).epsilon(1e-12));
  CHECK(bump_ball({1.25, 0.03}, c, eps) > 0.0);

  CHECK(bump_radial({1.2, 0.0}, 1.2, 0.05) == 1.0);
  CHECK(bump_radial({0.0, 1.2}, 1.2, 0.05) == 1.0);
  CHECK(bump_radial({1.25, 0.0}, 1.2, 0.05) == 0.0);
  CHECK(bump_radial({1.149, 0.0}, 1.2, 0.05) == 0.0);
  CHECK(bump_radial({0.0, 1.21}, 1.2, 0.05) > 0.0);
}

TEST_CASE("fixed-time variance matches analytic disk values") {
  MassDistribution md = MassDistribution::disk_preset();

  const auto constant = variance_fixed_time([](Vec2) { return 3.2; }, kPi, md);
  CHECK(std::abs(constant.value) <= 1e-10);
  CHECK(constant.converged);

  const auto linear = variance_fixed_time([](Vec2 z) { return z.x; }, kPi, md);
  CHECK(std::abs(linear.value - kPi / 2.0) <= 1e-6);
  CHECK(linear.converged);
  CHECK(linear.error_estimate >= 0.0);

  const auto saddle = variance_fixed_time([](Vec2 z) { return z.x * z.x - z.y * z.y; }, kPi, md);
  CHECK(std::abs(saddle.value - kPi) <= 1e-8);

  // Data vanishing on the final circle extends to zero.
  const auto silent =
      variance_fixed_time([](Vec2 z) { return bump_ball(z, {1.2, 0.0}, 0.05); }, kPi, md);
  CHECK(std::abs(silent.value) <= 1e-12);

  CHECK_THROWS_AS(variance_fixed_time([](Vec2 z) { return z.x; }, 0.0, md), std::invalid_argument);
  CHECK_THROWS_AS(variance_fixed_time([](Vec2 z) { return z.x; }, 4.0, md), std::invalid_argument);
}

TEST_CASE("fixed-time covariance is bilinear with orthogonal modes") {
  MassDistribution md = MassDistribution::disk_preset();
  const auto ux = [](Vec2 z) { return z.x; };
  const auto uy = [](Vec2 z) { return z.y; };
  const auto mix = [](Vec2 z) { return z.x + 0.5 * (z.x * z.x - z.y * z.y); };

  CHECK(covariance_fixed_time(ux, ux, kPi, md).value ==
        doctest::Approx(variance_fixed_time(ux, kPi, md).value).epsilon(1e-14));
  CHECK(std::abs(covariance_fixed_time(ux, uy, kPi, md).value) <= 1e-12);

  const double cov = covariance_fixed_time(ux, mix, kPi, md).value;
  const auto plus = [&](Vec2 z) { return ux(z) + mix(z); };
  const auto minus = [&](Vec2 z) { return ux(z) - mix(z); };
  const double pol = 0.25 * (variance_fixed_time(plus, kPi, md).value -
                             variance_fixed_time(minus, kPi, md).value);
  CHECK(std::abs(cov - pol) <= 1e-8 * std::max(1.0, std::abs(cov)));
  // Distinct modes are orthogonal, so the covariance is the shared x part.
  CHECK(std::abs(cov - kPi / 2.0) <= 1e-6);
}

TEST_CASE("lateness variance vanishes when the flow never meets the data") {
  MassDistribution md = MassDistribution::disk_preset();

  const auto zero = variance_lateness([](Vec2) { return 0.0; }, std::nullopt, kPi, md);
  CHECK(zero.value == 0.0);
  CHECK(zero.converged);

  // Support inside the initial domain: every boundary circle misses it.
  DiskSupport inner{{0.3, 0.0}, 0.1};
  const auto buried = variance_lateness(
      [](Vec2 z) { return bump_ball(z, {0.3, 0.0}, 0.1); }, inner, kPi, md);
  CHECK(buried.value == 0.0);

  // Radially symmetric data carries only the angular zero mode, whose
  // weighted radial moment cancels exactly by mass balance.
  const auto annular = [](Vec2 z) { return bump_radial(z, 1.2, 0.05); };
  const auto no_hint = variance_lateness(annular, std::nullopt, kPi, md);
  CHECK(std::abs(no_hint.value) <= 1e-9);
  DiskSupport hull{{0.0, 0.0}, 1.25};
  const auto hinted = variance_lateness(annular, hull, kPi, md);
  CHECK(std::abs(hinted.value) <= 1e-9);

  // The Monte Carlo route sees the same cancellation only in expectation.
  LatenessSpec spec;
  spec.boundary_samples = 256;
  const auto mc = mc_requadrature_lateness(annular, hull, kPi, md, 2000, 11u, spec);
  CHECK(std::abs(mc.value) <= 3.0 * mc.standard_error + 1e-9);
  CHECK(mc.standard_error > 0.0);
}

TEST_CASE("lateness variance of a ball bump agrees with Monte Carlo re-quadrature") {
  MassDistribution md = MassDistribution::disk_preset();
  const Vec2 c{1.2, 0.0};
  const double eps = 0.1;
  const auto u = [&](Vec2 z) { return bump_ball(z, c, eps); };
  DiskSupport sup{c, eps};

  const auto var = variance_lateness(u, sup, kPi, md, cheap_spec());
  CHECK(var.converged);
  CHECK(var.value == doctest::Approx(17.2364694024543).epsilon(1e-5));
  CHECK(var.value >= -1e-10);

  const auto mc = mc_requadrature_lateness(u, sup, kPi, md, 4000, 20260819u, cheap_spec());
  CHECK(std::abs(var.value - mc.value) <= 3.0 * mc.standard_error);
  CHECK(mc.standard_error < 5.0);
  CHECK(mc.samples == 4000);

  const auto replay = mc_requadrature_lateness(u, sup, kPi, md, 4000, 20260819u, cheap_spec());
  CHECK(replay.value == mc.value);
  CHECK(replay.standard_error == mc.standard_error);
}

TEST_CASE("general three-term lateness variance matches the analytic cubic law") {
  MassDistribution md = MassDistribution::disk_preset();
  const auto ux = [](Vec2 z) { return z.x; };

  CHECK_THROWS_AS(variance_lateness(ux, std::nullopt, kPi, md), std::invalid_argument);

  LatenessSpec spec;
  spec.time_nodes = 12;
  spec.n_modes = 32;
  spec.boundary_samples = 256;
  spec.general = true;
  for (double s : {kPi, kPi / 2.0}) {
    const auto var = variance_lateness(ux, std::nullopt, s, md, spec);
    CHECK(std::abs(var.value - s * s * s / 6.0) <= 1e-9);
    CHECK(var.converged);
  }

  // For compactly supported data the two extra terms vanish identically.
  const Vec2 c{1.2, 0.0};
  const auto bump = [&](Vec2 z) { return bump_ball(z, c, 0.1); };
  DiskSupport sup{c, 0.1};
  LatenessSpec general = cheap_spec();
  general.general = true;
  const auto with_flag = variance_lateness(bump, sup, kPi, md, general);
  const auto without = variance_lateness(bump, sup, kPi, md, cheap_spec());
  CHECK(with_flag.value == doctest::Approx(without.value).epsilon(1e-13));
}

TEST_CASE("lateness covariance is symmetric and polarization-consistent") {
  MassDistribution md = MassDistribution::disk_preset();
  const Vec2 pc{1.3 * std::cos(kPi / 4.0), 1.3 * std::sin(kPi / 4.0)};
  const Vec2 qc{1.2, 0.0};
  const double eps = 0.1;
  const auto up = [&](Vec2 z) { return bump_ball(z, pc, eps); };
  const auto uq = [&](Vec2 z) { return bump_ball(z, qc, eps); };
  DiskSupport sp{pc, eps}, sq{qc, eps};

  const auto cov = covariance_lateness(up, sp, uq, sq, kPi, md, cheap_spec());
  CHECK(cov.value == doctest::Approx(-0.610891809995016).epsilon(1e-6));

  const auto mirrored = covariance_lateness(uq, sq, up, sp, kPi, md, cheap_spec());
  CHECK(std::abs(cov.value - mirrored.value) <= 1e-12);

  const auto self = covariance_lateness(uq, sq, uq, sq, kPi, md, cheap_spec());
  const auto var = variance_lateness(uq, sq, kPi, md, cheap_spec());
  CHECK(self.value == doctest::Approx(var.value).epsilon(1e-13));

  // Polarization identity. With both functions carried on one shared support
  // hull every route uses the same bands, panels, and arcs, so the identity
  // holds to rounding precision.
  DiskSupport shared{qc, eps};
  const auto vq = [&](Vec2 z) { return bump_ball(z, {1.23, 0.01}, 0.06); };
  const auto cov_shared = covariance_lateness(uq, shared, vq, shared, kPi, md, cheap_spec());
  const auto plus = [&](Vec2 z) { return uq(z) + vq(z); };
  const auto minus = [&](Vec2 z) { return uq(z) - vq(z); };
  const double pol_shared =
      0.25 * (variance_lateness(plus, shared, kPi, md, cheap_spec()).value -
              variance_lateness(minus, shared, kPi, md, cheap_spec()).value);
  CHECK(std::abs(cov_shared.value - pol_shared) <= 1e-8 * std::abs(cov_shared.value));

  // Disjoint narrow supports force a merged hull with coarser arcs, so
  // explicit polarization becomes a convergence check rather than algebra.
  DiskSupport merged{{0.5 * (pc.x + qc.x), 0.5 * (pc.y + qc.y)},
                     0.5 * norm(pc - qc) + eps};
  LatenessSpec fine = cheap_spec();
  fine.n_modes = 384;
  const auto wide_plus = [&](Vec2 z) { return up(z) + uq(z); };
  const auto wide_minus = [&](Vec2 z) { return up(z) - uq(z); };
  const double pol = 0.25 * (variance_lateness(wide_plus, merged, kPi, md, fine).value -
                             variance_lateness(wide_minus, merged, kPi, md, fine).value);
  const auto cov_fine = covariance_lateness(up, sp, uq, sq, kPi, md, fine);
  CHECK(std::abs(cov_fine.value - pol) <= 1e-4 * std::abs(cov_fine.value));

  // The general-flag route polarizes internally over the merged hull and
  // must land on the same value at the same convergence level.
  LatenessSpec general = cheap_spec();
  general.n_modes = 384;
  general.general = true;
  const auto cov_general = covariance_lateness(up, sp, uq, sq, kPi, md, general);
  CHECK(std::abs(cov_general.value - cov_fine.value) <= 1e-4 * std::abs(cov_fine.value));
}

TEST_CASE("lateness covariance reduces to one ordering for separated bands") {
  MassDistribution md = MassDistribution::disk_preset();
  const Vec2 outer_c{1.32, 0.0};
  const Vec2 inner_c{1.1, 0.0};
  const double eps = 0.05;
  const auto outer_u = [&](Vec2 z) { return bump_ball(z, outer_c, eps); };
  const auto inner_u = [&](Vec2 z) { return bump_ball(z, inner_c, eps); };
  DiskSupport so{outer_c, eps}, si{inner_c, eps};

  LatenessSpec spec = cheap_spec();
  spec.n_modes = 512;
  const auto cov = covariance_lateness(outer_u, so, inner_u, si, kPi, md, spec);
  const auto mirrored = covariance_lateness(inner_u, si, outer_u, so, kPi, md, spec);
  CHECK(std::abs(cov.value - mirrored.value) <= 1e-12);

  // The activation bands never overlap, so the covariance carries a single
  // time ordering and approximates the velocity-normalized correlation.
  const double g = g_disk_closed(outer_c, inner_c);
  const double vv = 1.0 / (4.0 * kPi * kPi * norm(outer_c) * norm(inner_c));
  CHECK(g > 0.0);
  CHECK(cov.value > 0.0);
  CHECK(std::abs(cov.value - vv * g) <= 0.05 * std::abs(vv * g));

  // Radial annuli at separated radii carry only the cancelling zero mode.
  const auto ring_hi = [](Vec2 z) { return bump_radial(z, 1.3, 0.04); };
  const auto ring_lo = [](Vec2 z) { return bump_radial(z, 1.1, 0.04); };
  const auto ring_cov = covariance_lateness(ring_hi, DiskSupport{{0.0, 0.0}, 1.34}, ring_lo,
                                            DiskSupport{{0.0, 0.0}, 1.14}, kPi, md);
  CHECK(std::abs(ring_cov.value) <= 1e-10);
}

TEST_CASE("lateness covariance matches the velocity-normalized kernel average") {
  MassDistribution md = MassDistribution::disk_preset();
  const Vec2 pc{1.3 * std::cos(kPi / 4.0), 1.3 * std::sin(kPi / 4.0)};
  const Vec2 qc{1.2, 0.0};
  const double eps = 0.1;
  const auto up = [&](Vec2 z) { return bump_ball(z, pc, eps); };
  const auto uq = [&](Vec2 z) { return bump_ball(z, qc, eps); };

  const auto cov =
      covariance_lateness(up, DiskSupport{pc, eps}, uq, DiskSupport{qc, eps}, kPi, md,
                          cheap_spec());
  const double smoothed = eta_g_eta(pc, qc, eps);
  const double vv = 1.0 / (4.0 * kPi * kPi * norm(pc) * norm(qc));
  CHECK(std::abs(cov.value - vv * smoothed) <= 0.01 * std::abs(cov.value));
}

TEST_CASE("support violations without the general flag are rejected") {
  MassDistribution md = MassDistribution::disk_preset();

  // A bump straddling the final boundary circle.
  const Vec2 c{1.38, 0.0};
  const auto edge = [&](Vec2 z) { return bump_ball(z, c, 0.1); };
  DiskSupport sup{c, 0.1};
  CHECK_THROWS_AS(variance_lateness(edge, sup, kPi, md), std::invalid_argument);
  CHECK_THROWS_AS(covariance_lateness(edge, sup, edge, sup, kPi, md), std::invalid_argument);
  CHECK_THROWS_AS(mc_requadrature_lateness(edge, sup, kPi, md, 100, 1u), std::invalid_argument);

  LatenessSpec spec = cheap_spec();
  spec.general = true;
  const auto var = variance_lateness(edge, sup, kPi, md, spec);
  CHECK(var.value >= -1e-10);
  CHECK(std::isfinite(var.value));

  LatenessSpec bad = cheap_spec();
  bad.general = true;
  CHECK_THROWS_AS(mc_requadrature_lateness(edge, sup, kPi, md, 100, 1u, bad),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      mc_requadrature_lateness(edge, sup, kPi, md, 1, 1u, cheap_spec()), std::invalid_argument);
}

TEST_CASE("closed-form correlation matches its series and quadrature routes") {
  MassDistribution md = MassDistribution::disk_preset();
  const Vec2 q{1.2, 0.0};
  const double anchors[3] = {729.871958603328, -37.1905969545463, -54.2422223051463};
  const double angles[3] = {0.0, kPi / 4.0, kPi};
  for (int k = 0; k < 3; ++k) {
    const Vec2 p{1.3 * std::cos(angles[k]), 1.3 * std::sin(angles[k])};
    const double closed = g_disk_closed(p, q);
    CHECK(std::abs(closed - g_series_partial(p, q, 4000)) <= 1e-8);
    CHECK(closed == doctest::Approx(anchors[k]).epsilon(1e-6));
    const auto general = g_general(p, q, md);
    CHECK(general.converged);
    CHECK(std::abs(general.value - closed) <= 1e-4);
  }

  // Sign structure: positive for aligned angles, negative for opposite.
  CHECK(g_disk_closed({1.3, 0.0}, q) > 0.0);
  CHECK(g_disk_closed({-1.3, 0.0}, q) < 0.0);

  // Rotation invariance: only the angle difference enters.
  const double alpha = 0.7;
  const Vec2 pr{1.3 * std::cos(kPi / 4.0 + alpha), 1.3 * std::sin(kPi / 4.0 + alpha)};
  const Vec2 qr{1.2 * std::cos(alpha), 1.2 * std::sin(alpha)};
  CHECK(std::abs(g_disk_closed(pr, qr) - g_disk_closed({1.3 * std::cos(kPi / 4.0),
                                                        1.3 * std::sin(kPi / 4.0)},
                                                       q)) <= 1e-10);

  // Swapped arguments give the same value and report the swap.
  bool swapped = false;
  const double forward = g_disk_closed({1.3, 0.0}, q, &swapped);
  CHECK(!swapped);
  const double backward = g_disk_closed(q, {1.3, 0.0}, &swapped);
  CHECK(swapped);
  CHECK(forward == backward);
  CHECK(std::abs(g_general({1.3, 0.0}, q, md).value - g_general(q, {1.3, 0.0}, md).value) <=
        1e-12);

  // Values fade as the inner point approaches the initial domain.
  double previous = std::abs(g_disk_closed({1.3, 0.0}, {1.05 * std::cos(0.3), 1.05 * std::sin(0.3)}));
  for (double rq : {1.01, 1.001}) {
    const Vec2 near_edge{rq * std::cos(0.3), rq * std::sin(0.3)};
    const double value = g_disk_closed({1.3, 0.0}, near_edge);
    CHECK(std::abs(value) < previous);
    CHECK(std::abs(g_general({1.3, 0.0}, near_edge, md).value - value) <= 1e-6);
    previous = std::abs(value);
  }
  CHECK(previous <= 1.0);

  // Domain and singularity rejection.
  CHECK_THROWS_AS(g_disk_closed({1.3, 0.0}, {1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(g_disk_closed({1.5, 0.0}, q), std::invalid_argument);
  CHECK_THROWS_AS(g_disk_closed({1.2, 0.0}, {1.2, 1e-7}), std::invalid_argument);
  CHECK_THROWS_AS(g_general({1.2, 0.0}, {1.2, 1e-7}, md), std::invalid_argument);
}

TEST_CASE("mollified kernel averages tighten toward the correlation value") {
  const Vec2 p{1.3 * std::cos(kPi / 4.0), 1.3 * std::sin(kPi / 4.0)};
  const Vec2 q{1.2, 0.0};
  const double g = g_disk_closed(p, q);
  const double coarse = eta_g_eta(p, q, 0.1);
  const double fine = eta_g_eta(p, q, 0.05);
  CHECK(std::abs(fine - g) <= std::abs(coarse - g));
  CHECK(std::abs(fine - g) <= 0.2);
}
