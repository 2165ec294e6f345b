// growth.cpp — boundary fluctuation reports and the tentacle density statistic.
#include "latgrow/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latgrow {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

FluctuationReport fluctuation_report(const std::vector<LatticePoint>& occupied,
                                     const FlowDescriptor& flow, double s, int m,
                                     double band_eps) {
  if (m < 1) throw std::invalid_argument("fluctuation_report: need m >= 1");
  FluctuationReport rep;
  const double R = flow.radius(s);

  // Paint occupancy over a window that covers both the domain and the set.
  std::int32_t half = std::int32_t(R * m) + 2;
  for (LatticePoint z : occupied)
    half = std::max({half, std::abs(z.i) + 1, std::abs(z.j) + 1});
  Grid2D<std::uint8_t> occ = Grid2D<std::uint8_t>::centered(half, 0);
  for (LatticePoint z : occupied) occ.at(z) = 1;

  // Deepest vacancy inside D_s.
  const auto lim = std::int32_t(std::floor(R * m));
  for (std::int32_t j = -lim; j <= lim; ++j) {
    for (std::int32_t i = -lim; i <= lim; ++i) {
      const LatticePoint z{i, j};
      const double depth = flow.signed_distance(s, to_plane(z, m));
      if (depth <= rep.inner_deficit) continue;  // cannot beat the current worst
      if (depth > 0.0 && !occ.get_or(z, 0)) rep.inner_deficit = depth;
    }
  }
  // Farthest occupied site outside D_s.
  for (LatticePoint z : occupied) {
    const double d = flow.signed_distance(s, to_plane(z, m));
    if (-d > rep.outer_excess) rep.outer_excess = -d;
  }

  const double inner_r = std::max(R - band_eps, 0.0);
  rep.band_volume = kPi * ((R + band_eps) * (R + band_eps) - inner_r * inner_r);
  rep.in_band = rep.inner_deficit <= band_eps && rep.outer_excess <= band_eps;
  return rep;
}

std::optional<double> tentacle_statistic(const std::vector<LatticePoint>& occupied,
                                         const Region& initial_domain, int m, double r) {
  if (m < 1 || r <= 0.0) throw std::invalid_argument("tentacle_statistic: need m >= 1, r > 0");
  std::int32_t half = 4;
  for (LatticePoint z : occupied)
    half = std::max({half, std::abs(z.i) + 1, std::abs(z.j) + 1});
  const double rm = r * m;
  const auto rceil = std::int32_t(std::ceil(rm));
  half += rceil + 1;
  Grid2D<std::uint8_t> occ = Grid2D<std::uint8_t>::centered(half, 0);
  for (LatticePoint z : occupied) occ.at(z) = 1;

  // Lattice ball offsets of euclidean radius r*m (closed).
  std::vector<LatticePoint> ball;
  for (std::int32_t dj = -rceil; dj <= rceil; ++dj)
    for (std::int32_t di = -rceil; di <= rceil; ++di)
      if (double(di) * di + double(dj) * dj <= rm * rm) ball.push_back({di, dj});

  std::optional<double> min_ratio;
  const double norm_count = double(m) * m * r * r;
  for (LatticePoint z : occupied) {
    // Qualify sites whose r-ball stays clear of the initial domain.
    bool clear = true;
    for (LatticePoint d : ball) {
      if (initial_domain.contains(to_plane({z.i + d.i, z.j + d.j}, m))) {
        clear = false;
        break;
      }
    }
    if (!clear) continue;
    std::size_t hit = 0;
    for (LatticePoint d : ball) hit += occ.get_or({z.i + d.i, z.j + d.j}, 0);
    const double ratio = double(hit) / norm_count;
    if (!min_ratio || ratio < *min_ratio) min_ratio = ratio;
  }
  return min_ratio;
}

}  // namespace latgrow
