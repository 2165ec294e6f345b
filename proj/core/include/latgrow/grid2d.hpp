// grid2d.hpp — dense storage over a rectangular window of integer lattice coordinates.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "latgrow/geometry.hpp"

namespace latgrow {

template <class T>
class Grid2D {
 public:
  Grid2D() = default;
  Grid2D(std::int32_t i0, std::int32_t j0, std::int32_t nx, std::int32_t ny, T fill = T{})
      : i0_(i0), j0_(j0), nx_(nx), ny_(ny), data_(std::size_t(nx) * std::size_t(ny), fill) {}

  // Square window centered at the origin covering |i|, |j| <= half.
  static Grid2D centered(std::int32_t half, T fill = T{}) {
    return Grid2D(-half, -half, 2 * half + 1, 2 * half + 1, fill);
  }

  bool in_window(LatticePoint z) const {
    return z.i >= i0_ && z.i < i0_ + nx_ && z.j >= j0_ && z.j < j0_ + ny_;
  }
  T& at(LatticePoint z) { return data_[index(z)]; }
  const T& at(LatticePoint z) const { return data_[index(z)]; }
  T get_or(LatticePoint z, T fallback) const { return in_window(z) ? data_[index(z)] : fallback; }

  std::int32_t i0() const { return i0_; }
  std::int32_t j0() const { return j0_; }
  std::int32_t nx() const { return nx_; }
  std::int32_t ny() const { return ny_; }
  std::size_t size() const { return data_.size(); }
  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  std::size_t index(LatticePoint z) const {
    return std::size_t(z.i - i0_) + std::size_t(nx_) * std::size_t(z.j - j0_);
  }
  LatticePoint point_at(std::size_t idx) const {
    return {std::int32_t(idx % std::size_t(nx_)) + i0_,
            std::int32_t(idx / std::size_t(nx_)) + j0_};
  }

  // Copy into a window enlarged by `pad` on every side.
  Grid2D grown(std::int32_t pad, T fill = T{}) const {
    Grid2D g(i0_ - pad, j0_ - pad, nx_ + 2 * pad, ny_ + 2 * pad, fill);
    for (std::int32_t j = 0; j < ny_; ++j) {
      const T* src = data_.data() + std::size_t(nx_) * j;
      T* dst = &g.at({i0_, j0_ + j});
      for (std::int32_t i = 0; i < nx_; ++i) dst[i] = src[i];
    }
    return g;
  }

 private:
  std::int32_t i0_ = 0, j0_ = 0, nx_ = 0, ny_ = 0;
  std::vector<T> data_;
};

inline const LatticePoint kNeighborSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

inline LatticePoint neighbor(LatticePoint z, unsigned dir) {
  const LatticePoint d = kNeighborSteps[dir & 3u];
  return {z.i + d.i, z.j + d.j};
}

}  // namespace latgrow
