// geometry.cpp — lattice point enumeration over closed regions.
#include "latgrow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latgrow {

std::vector<LatticePoint> lattice_points(const Region& region, int m) {
  if (m < 1) throw std::invalid_argument("lattice_points: need m >= 1");
  std::vector<LatticePoint> out;
  const BBox bb = region.bounds();
  if (bb.empty()) return out;
  const auto lo_i = std::int64_t(std::ceil(bb.xmin * m - 1e-12));
  const auto hi_i = std::int64_t(std::floor(bb.xmax * m + 1e-12));
  const auto lo_j = std::int64_t(std::ceil(bb.ymin * m - 1e-12));
  const auto hi_j = std::int64_t(std::floor(bb.ymax * m + 1e-12));
  for (std::int64_t j = lo_j; j <= hi_j; ++j) {
    for (std::int64_t i = lo_i; i <= hi_i; ++i) {
      const Vec2 p{double(i) / m, double(j) / m};
      if (region.contains(p)) out.push_back({std::int32_t(i), std::int32_t(j)});
    }
  }
  // Row-major scan above is (j, i); reorder to documented lexicographic (i, j).
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace latgrow
