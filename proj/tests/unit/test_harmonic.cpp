// Harmonic solver tests. Expected values are independent analytic solutions:
// linear and saddle data are discrete harmonic and must be reproduced exactly,
// the disk extension of x^2 is R^2/2 + (x^2 - y^2)/2, the Poisson kernel has a
// rational closed form, and the weighted disk integrals reduce to ball moments.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "latgrow/harmonic.hpp"
#include "latgrow/lattice.hpp"

using namespace latgrow;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<LatticePoint> disk_domain(int m, double radius = 1.0) {
  return lattice_points(DiskRegion({0.0, 0.0}, radius), m);
}

double sup_error(const GridFunction& g, const std::function<double(Vec2)>& exact,
                 bool interior_only) {
  double worst = 0.0;
  for (LatticePoint z : g.domain()) {
    if (interior_only && g.is_boundary(z)) continue;
    worst = std::max(worst, std::abs(g.value(z) - exact(to_plane(z, g.m))));
  }
  return worst;
}

}  // namespace

TEST_CASE("grid Dirichlet reproduces discrete harmonic data exactly") {
  const int m = 16;
  const auto domain = disk_domain(m);

  SUBCASE("constant boundary stays constant") {
    const GridFunction g = solve_grid_dirichlet(domain, m, [](LatticePoint) { return 3.75; });
    CHECK(sup_error(g, [](Vec2) { return 3.75; }, false) <= 1e-12);
    CHECK(g.residual_sup() <= g.solve_tolerance);
  }
  SUBCASE("linear data is its own extension") {
    const GridFunction g = solve_grid_dirichlet(
        domain, m, [m](LatticePoint z) { return to_plane(z, m).x; });
    CHECK(sup_error(g, [](Vec2 p) { return p.x; }, false) <= 1e-9);
  }
  SUBCASE("the saddle x^2 - y^2 is lattice harmonic") {
    const GridFunction g = solve_grid_dirichlet(domain, m, [m](LatticePoint z) {
      const Vec2 p = to_plane(z, m);
      return p.x * p.x - p.y * p.y;
    });
    CHECK(sup_error(g, [](Vec2 p) { return p.x * p.x - p.y * p.y; }, false) <= 1e-9);
    CHECK(g.residual_sup() <= g.solve_tolerance);
  }
}

TEST_CASE("grid Dirichlet obeys the maximum principle and its residual contract") {
  const int m = 12;
  const auto domain = disk_domain(m);
  // Wiggly but deterministic boundary data.
  const auto data = [m](LatticePoint z) {
    const Vec2 p = to_plane(z, m);
    return std::cos(5.0 * p.x) * std::exp(p.y) + 0.3 * std::sin(7.0 * p.y);
  };
  const GridFunction g = solve_grid_dirichlet(domain, m, data);
  CHECK(g.maximum_principle_slack() <= 1e-12);
  CHECK(g.residual_sup() <= g.solve_tolerance);
  const auto [lo, hi] = g.boundary_range();
  CHECK(lo < hi);

  SUBCASE("iterative relaxation matches the direct sparse solve") {
    const GridFunction d = detail::solve_grid_dirichlet_direct(domain, m, data);
    CHECK(d.residual_sup() <= 1e-11);
    double worst = 0.0;
    for (LatticePoint z : g.domain())
      worst = std::max(worst, std::abs(g.value(z) - d.value(z)));
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("grid Dirichlet handles split domains and rejects nothing it should solve") {
  // Two disjoint squares: each solves against its own boundary.
  std::vector<LatticePoint> domain;
  for (std::int32_t i = 0; i <= 4; ++i)
    for (std::int32_t j = 0; j <= 4; ++j) {
      domain.push_back({i, j});
      domain.push_back({i + 100, j});
    }
  const GridFunction g = solve_grid_dirichlet(
      domain, 4, [](LatticePoint z) { return z.i >= 100 ? 2.0 : -1.0; });
  CHECK(std::abs(g.value({2, 2}) + 1.0) <= 1e-8);
  CHECK(std::abs(g.value({102, 2}) - 2.0) <= 1e-8);
  CHECK(g.boundary().size() + 2 * 9 == g.domain().size());
}

TEST_CASE("cut-boundary grid solve is exact for linear data and second order for x^2") {
  const DiskRegion disk({0.0, 0.0}, 1.0);

  SUBCASE("linear data passes through the cut closure unchanged") {
    const GridFunction g =
        solve_grid_dirichlet_cut(disk, 16, [](Vec2 p) { return 2.0 * p.x - p.y; });
    CHECK(sup_error(g, [](Vec2 p) { return 2.0 * p.x - p.y; }, false) <= 1e-9);
    CHECK(g.maximum_principle_slack() <= 1e-12);
  }
  SUBCASE("x^2 converges at second order toward R^2/2 + (x^2 - y^2)/2") {
    const auto exact = [](Vec2 p) { return 0.5 + 0.5 * (p.x * p.x - p.y * p.y); };
    const auto data = [](Vec2 p) { return p.x * p.x; };
    const double e16 = sup_error(solve_grid_dirichlet_cut(disk, 16, data), exact, false);
    const double e32 = sup_error(solve_grid_dirichlet_cut(disk, 32, data), exact, false);
    CHECK(e16 > 1e-5);
    CHECK(e16 / e32 > 2.3);
    CHECK(e16 / e32 < 7.0);
  }
}

TEST_CASE("disk Dirichlet series matches analytic extensions") {
  const int n_modes = 24;
  const int count = 4 * n_modes;

  SUBCASE("constant data gives a lone constant coefficient") {
    const std::vector<double> samples(count, 1.0);
    const FourierHarmonic h = solve_disk_dirichlet(samples, 1.0, n_modes);
    CHECK(std::abs(h.coeff[0] - std::complex<double>{1.0, 0.0}) <= 1e-13);
    for (int n = 1; n <= n_modes; ++n) CHECK(std::abs(h.coeff[std::size_t(n)]) <= 1e-13);
    CHECK(std::abs(h.eval({0.3, -0.2}) - 1.0) <= 1e-13);
  }
  SUBCASE("boundary x extends to the plane coordinate x") {
    const double radius = 2.0;
    std::vector<double> samples(count);
    for (int k = 0; k < count; ++k) samples[std::size_t(k)] = radius * std::cos(2.0 * kPi * k / count);
    const FourierHarmonic h = solve_disk_dirichlet(samples, radius, n_modes);
    CHECK(std::abs(h.eval({0.7, 0.4}) - 0.7) <= 1e-12);
    CHECK(h.boundary_mismatch(samples) <= 1e-12);
  }
  SUBCASE("boundary x^2 extends to R^2/2 + r^2 cos(2 theta)/2") {
    const double radius = 1.5;
    std::vector<double> samples(count);
    for (int k = 0; k < count; ++k) {
      const double c = std::cos(2.0 * kPi * k / count);
      samples[std::size_t(k)] = radius * radius * c * c;
    }
    const FourierHarmonic h = solve_disk_dirichlet(samples, radius, n_modes);
    const Vec2 z{0.8, -0.5};
    const double expected = 0.5 * radius * radius + 0.5 * (z.x * z.x - z.y * z.y);
    CHECK(std::abs(h.eval(z) - expected) <= 1e-12);
  }
  SUBCASE("too few samples are rejected") {
    const std::vector<double> samples(4 * n_modes - 1, 0.0);
    CHECK_THROWS_AS(solve_disk_dirichlet(samples, 1.0, n_modes), std::invalid_argument);
  }
}

TEST_CASE("disk Dirichlet agrees with the continuum extension of entire data") {
  // u(theta) = Re exp(e^{i theta}) extends to Re exp(x + i y).
  const int n_modes = 32;
  const int count = 256;
  std::vector<double> samples(count);
  for (int k = 0; k < count; ++k) {
    const double theta = 2.0 * kPi * k / count;
    samples[std::size_t(k)] = std::exp(std::cos(theta)) * std::cos(std::sin(theta));
  }
  const FourierHarmonic h = solve_disk_dirichlet(samples, 1.0, n_modes);
  const Vec2 z{0.3, 0.4};
  const double exact = std::exp(z.x) * std::cos(z.y);
  CHECK(std::abs(h.eval(z) - exact) <= 1e-12);
  CHECK(h.boundary_mismatch(samples) <= 1e-12);

  SUBCASE("Poisson kernel average reproduces the series value") {
    double avg = 0.0;
    for (int k = 0; k < count; ++k) {
      const double theta = 2.0 * kPi * k / count;
      const PoissonKernelDisk kernel{1.0, theta};
      avg += samples[std::size_t(k)] * kernel.eval(z, 1e-13);
    }
    avg /= count;
    CHECK(std::abs(avg - h.eval(z)) <= 1e-9);
  }
}

TEST_CASE("Poisson kernel series matches its closed form") {
  const PoissonKernelDisk kernel{1.3, 0.7};
  // Geometric-series oracle: (r_p^2 - r^2) / (r_p^2 - 2 r r_p cos(dtheta) + r^2).
  const auto closed = [&](double r, double theta) {
    const double num = kernel.r_p * kernel.r_p - r * r;
    const double den = kernel.r_p * kernel.r_p -
                       2.0 * r * kernel.r_p * std::cos(theta - kernel.theta_p) + r * r;
    return num / den;
  };

  SUBCASE("center value is one and positivity holds") {
    CHECK(kernel.eval({0.0, 0.0}, 8) == doctest::Approx(1.0).epsilon(1e-15));
    for (int a = 0; a < 24; ++a) {
      const double theta = 2.0 * kPi * a / 24;
      CHECK(kernel.eval({0.9 * std::cos(theta), 0.9 * std::sin(theta)}, 1e-10) > 0.0);
    }
  }
  SUBCASE("truncated series hits the closed form within the stated bound") {
    for (double r : {0.2, 0.7, 1.1}) {
      for (double theta : {0.0, 0.4, 2.0, 3.1}) {
        const Vec2 z{r * std::cos(theta), r * std::sin(theta)};
        const double rho = r / kernel.r_p;
        const int order = PoissonKernelDisk::truncation_order(rho, 1e-11);
        CHECK(std::abs(kernel.eval(z, order) - closed(r, theta)) <= 1e-10);
        CHECK(2.0 * std::pow(rho, order + 1) / (1.0 - rho) <= 1e-11);
      }
    }
  }
  SUBCASE("circle averages are one") {
    const int count = 128;
    for (double r : {0.4, 0.9}) {
      double avg = 0.0;
      for (int k = 0; k < count; ++k) {
        const double theta = 2.0 * kPi * k / count;
        avg += kernel.eval({r * std::cos(theta), r * std::sin(theta)}, 40);
      }
      CHECK(std::abs(avg / count - 1.0) <= 1e-13);
    }
  }
  SUBCASE("evaluation outside the pole circle is rejected") {
    CHECK_THROWS_AS(kernel.eval({1.3, 0.0}, 8), std::invalid_argument);
    CHECK_THROWS_AS(poisson_kernel_disk({1.0, 0.0}, {1.5, 0.0}, 8), std::invalid_argument);
  }
}

TEST_CASE("weighted flow integrals reduce to ball moments") {
  const MassDistribution md = MassDistribution::disk_preset();
  const double s = kPi;  // full horizon: sigma is 2 on the unit ball, D_s has radius sqrt(2)

  SUBCASE("constant integrand balances to zero") {
    const auto r = integrate_weighted([](Vec2) { return 1.0; }, md, s, {});
    CHECK(std::abs(r.value) <= 1e-10);
    CHECK(r.converged);
  }
  SUBCASE("x^2 integrates to pi/2") {
    const auto r = integrate_weighted([](Vec2 z) { return z.x * z.x; }, md, s, {});
    CHECK(std::abs(r.value - kPi / 2.0) <= 1e-8);
    CHECK(r.converged);
  }
  SUBCASE("odd integrands vanish") {
    const auto r = integrate_weighted([](Vec2 z) { return z.x; }, md, s, {});
    CHECK(std::abs(r.value) <= 1e-12);
  }
  SUBCASE("extra panel breaks capture radial discontinuities") {
    // f = indicator of the ball of radius 1.2; with the break on the panel edge
    // the quadrature is exact: pi (1.2^2 - 1) - pi = pi (0.44 - 1).
    QuadratureSpec spec;
    spec.extra_breaks = {1.2};
    const auto f = [](Vec2 z) { return norm2(z) <= 1.44 ? 1.0 : 0.0; };
    const auto r = integrate_weighted(f, md, s, spec);
    CHECK(std::abs(r.value - kPi * (0.44 - 1.0)) <= 1e-10);
    CHECK(r.converged);
  }
  SUBCASE("a coarse rule reports non-convergence honestly") {
    QuadratureSpec coarse;
    coarse.radial_nodes = 2;
    coarse.angular_nodes = 4;
    coarse.target = 1e-10;
    const auto f = [](Vec2 z) { return std::cos(3.0 * z.x + z.y) * std::exp(z.y); };
    const auto rough = integrate_weighted(f, md, s, coarse);
    CHECK_FALSE(rough.converged);
    const auto good = integrate_weighted(f, md, s, {});
    CHECK(good.converged);
    CHECK(std::abs(good.value - rough.value) > good.error_estimate);
    QuadratureSpec big;
    big.radial_nodes = 64;
    big.angular_nodes = 512;
    const auto best = integrate_weighted(f, md, s, big);
    CHECK(std::abs(good.value - best.value) <= std::max(10.0 * good.error_estimate, 1e-9));
  }
  SUBCASE("half horizon splits the density at the released radius") {
    // s = pi/2: sigma is 2 on B_{1/sqrt 2}, 1 on the ring to radius 1, 0 beyond;
    // for f = 1 the integral is area(D_s) - 2 pi/2 - (pi - pi/2) = 0 by mass balance.
    const auto r = integrate_weighted([](Vec2) { return 1.0; }, md, kPi / 2.0, {});
    CHECK(std::abs(r.value) <= 1e-10);
    // f = x^2: moments pi R^4/4 per ball give
    // pi ( (1.5^2 - 1)/4 ) ... assembled below from ball moments directly.
    const double m_ds = kPi * 1.5 * 1.5 / 4.0;   // D_s radius sqrt(1.5)
    const double m_b1 = kPi / 4.0;               // unit ball
    const double m_half = kPi * 0.25 / 4.0;      // released ball radius 1/sqrt 2
    const auto rx = integrate_weighted([](Vec2 z) { return z.x * z.x; }, md, kPi / 2.0, {});
    CHECK(std::abs(rx.value - (m_ds - m_b1 - m_half)) <= 1e-8);
  }
}
