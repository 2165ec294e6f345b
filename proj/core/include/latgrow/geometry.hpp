// geometry.hpp — plane points, lattice points at scale 1/m, simple closed regions.
#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

namespace latgrow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Point of the scaled lattice (1/m)Z^2, stored as integer coordinates (i, j);
// the plane position is (i/m, j/m). Ordering is lexicographic in (i, j), which
// is the documented tie-break order for source sequences.
struct LatticePoint {
  std::int32_t i = 0;
  std::int32_t j = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline Vec2 to_plane(LatticePoint z, int m) {
  return {double(z.i) / m, double(z.j) / m};
}

// 64-bit key for hash maps over lattice points.
inline std::uint64_t pack(LatticePoint z) {
  return (std::uint64_t(std::uint32_t(z.i)) << 32) | std::uint64_t(std::uint32_t(z.j));
}
inline LatticePoint unpack(std::uint64_t k) {
  return {std::int32_t(std::uint32_t(k >> 32)), std::int32_t(std::uint32_t(k))};
}

struct BBox {
  double xmin = 0.0, xmax = -1.0;  // empty by default (xmin > xmax)
  double ymin = 0.0, ymax = -1.0;
  bool empty() const { return xmin > xmax || ymin > ymax; }
};

// Closed bounded region of the plane. Membership is closed (boundary included),
// which matters for lattice point counts: the unit disk at m=1 holds 5 points.
class Region {
 public:
  virtual ~Region() = default;
  virtual bool contains(Vec2 p) const = 0;
  virtual BBox bounds() const = 0;
  virtual std::unique_ptr<Region> clone() const = 0;
};

class DiskRegion final : public Region {
 public:
  DiskRegion(Vec2 center, double radius) : c_(center), r_(radius) {}
  bool contains(Vec2 p) const override { return norm2(p - c_) <= r_ * r_; }
  BBox bounds() const override { return {c_.x - r_, c_.x + r_, c_.y - r_, c_.y + r_}; }
  std::unique_ptr<Region> clone() const override { return std::make_unique<DiskRegion>(*this); }
  Vec2 center() const { return c_; }
  double radius() const { return r_; }
  // Positive inside, negative outside.
  double signed_distance(Vec2 p) const { return r_ - norm(p - c_); }

 private:
  Vec2 c_;
  double r_;
};

class RectRegion final : public Region {
 public:
  RectRegion(Vec2 lo, Vec2 hi) : lo_(lo), hi_(hi) {}
  bool contains(Vec2 p) const override {
    return p.x >= lo_.x && p.x <= hi_.x && p.y >= lo_.y && p.y <= hi_.y;
  }
  BBox bounds() const override { return {lo_.x, hi_.x, lo_.y, hi_.y}; }
  std::unique_ptr<Region> clone() const override { return std::make_unique<RectRegion>(*this); }

 private:
  Vec2 lo_, hi_;
};

class EmptyRegion final : public Region {
 public:
  bool contains(Vec2) const override { return false; }
  BBox bounds() const override { return {}; }
  std::unique_ptr<Region> clone() const override { return std::make_unique<EmptyRegion>(); }
};

// All points of (1/m)Z^2 inside the closed region, in lexicographic (i, j) order.
std::vector<LatticePoint> lattice_points(const Region& region, int m);

}  // namespace latgrow
