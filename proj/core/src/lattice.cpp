// lattice.cpp — mass distributions, source sequences, discrete density slices,
// and the disk preset flow.
#include "latgrow/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace latgrow {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double DiskSource::appearance_time(Vec2 x, double total_horizon) const {
  // Family area needed to reach x, then invert the proportional allocation
  // a = s * horizon / total_horizon.
  const double a = kPi * norm2(x - center);
  if (horizon <= 0.0) return std::numeric_limits<double>::infinity();
  return a * total_horizon / horizon;
}

MassDistribution::MassDistribution(std::unique_ptr<Region> initial_domain,
                                   std::vector<DiskSource> sources)
    : initial_domain_(std::move(initial_domain)), sources_(std::move(sources)) {
  if (!initial_domain_) throw std::invalid_argument("MassDistribution: null initial domain");
  total_horizon_ = 0.0;
  for (const DiskSource& src : sources_) {
    if (src.horizon <= 0.0)
      throw std::invalid_argument("MassDistribution: source horizons must be positive");
    total_horizon_ += src.horizon;
  }
}

MassDistribution::MassDistribution(const MassDistribution& other)
    : initial_domain_(other.initial_domain_->clone()),
      sources_(other.sources_),
      total_horizon_(other.total_horizon_) {}

MassDistribution MassDistribution::disk_preset() {
  std::vector<DiskSource> sources;
  sources.push_back(DiskSource{{0.0, 0.0}, kPi});
  return MassDistribution(std::make_unique<DiskRegion>(Vec2{0.0, 0.0}, 1.0), std::move(sources));
}

bool MassDistribution::is_disk_preset() const {
  if (sources_.size() != 1) return false;
  const auto* disk = dynamic_cast<const DiskRegion*>(initial_domain_.get());
  if (!disk) return false;
  return disk->radius() == 1.0 && disk->center().x == 0.0 && disk->center().y == 0.0 &&
         sources_[0].center.x == 0.0 && sources_[0].center.y == 0.0 &&
         sources_[0].horizon == kPi;
}

int MassDistribution::sigma(double s, Vec2 x) const {
  int count = initial_domain_->contains(x) ? 1 : 0;
  for (const DiskSource& src : sources_) {
    const double released = s * src.horizon / total_horizon_;  // family area at time s
    if (released <= 0.0) continue;
    if (norm2(x - src.center) <= released / kPi) ++count;
  }
  return count;
}

std::vector<SourceEntry> build_source_sequence(const MassDistribution& md, int m, double T) {
  if (m < 1) throw std::invalid_argument("build_source_sequence: need m >= 1");
  if (T < 0.0) throw std::invalid_argument("build_source_sequence: need T >= 0");
  if (T > md.total_horizon() * (1.0 + 1e-12) + 1e-12)
    throw std::invalid_argument("build_source_sequence: T exceeds the total horizon");

  std::vector<SourceEntry> seq;
  const double total = md.total_horizon();
  for (std::size_t f = 0; f < md.sources().size(); ++f) {
    const DiskSource& src = md.sources()[f];
    // Released family region at global time T.
    const double area = T * src.horizon / total;
    const double radius = std::sqrt(area / kPi);
    for (LatticePoint z : lattice_points(DiskRegion(src.center, radius), m)) {
      const double t = src.appearance_time(to_plane(z, m), total);
      seq.push_back({z, std::min(t, T), std::int32_t(f)});
    }
  }
  std::stable_sort(seq.begin(), seq.end(), [](const SourceEntry& a, const SourceEntry& b) {
    if (a.appearance != b.appearance) return a.appearance < b.appearance;
    if (a.z != b.z) return a.z < b.z;
    return a.family < b.family;
  });
  return seq;
}

DensityProfile::DensityProfile(const MassDistribution& md, int m, std::int64_t n,
                               std::unordered_map<std::uint64_t, int> counts,
                               std::int64_t initial_count)
    : md_(&md), m_(m), n_(n), counts_(std::move(counts)), initial_count_(initial_count) {}

int DensityProfile::discrete(LatticePoint z) const {
  auto it = counts_.find(pack(z));
  return it == counts_.end() ? 0 : it->second;
}

DensityProfile sigma_discrete(const MassDistribution& md, int m, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("sigma_discrete: need n >= 0");
  std::vector<SourceEntry> seq = build_source_sequence(md, m, md.total_horizon());
  if (n > std::int64_t(seq.size()))
    throw std::invalid_argument("sigma_discrete: n exceeds the source sequence length");
  std::unordered_map<std::uint64_t, int> counts;
  std::int64_t initial_count = 0;
  for (LatticePoint z : lattice_points(md.initial_domain(), m)) {
    ++counts[pack(z)];
    ++initial_count;
  }
  for (std::int64_t k = 0; k < n; ++k) ++counts[pack(seq[std::size_t(k)].z)];
  return DensityProfile(md, m, n, std::move(counts), initial_count);
}

double disk_flow_radius(double s) {
  if (s < 0.0) throw std::invalid_argument("disk_flow_radius: need s >= 0");
  return std::sqrt(1.0 + s / kPi);
}

double flow_velocity(Vec2 p) {
  const double r = norm(p);
  if (r < 1.0) throw std::invalid_argument("flow_velocity: point inside the initial body");
  return 1.0 / (2.0 * kPi * r);
}

FlowDescriptor FlowDescriptor::disk() {
  FlowDescriptor f;
  f.analytic_disk_ = true;
  f.horizon_ = kPi;
  return f;
}

FlowDescriptor FlowDescriptor::tabulated_radial(std::vector<double> s_samples,
                                                std::vector<double> radius_samples) {
  if (s_samples.size() != radius_samples.size() || s_samples.size() < 2)
    throw std::invalid_argument("FlowDescriptor: need matching sample vectors, length >= 2");
  for (std::size_t k = 1; k < s_samples.size(); ++k) {
    if (s_samples[k] <= s_samples[k - 1] || radius_samples[k] < radius_samples[k - 1])
      throw std::invalid_argument("FlowDescriptor: samples must be increasing");
  }
  FlowDescriptor f;
  f.analytic_disk_ = false;
  f.horizon_ = s_samples.back();
  f.s_samples_ = std::move(s_samples);
  f.radius_samples_ = std::move(radius_samples);
  return f;
}

double FlowDescriptor::radius(double s) const {
  if (analytic_disk_) return disk_flow_radius(s);
  if (s <= s_samples_.front()) return radius_samples_.front();
  if (s >= s_samples_.back()) return radius_samples_.back();
  auto it = std::upper_bound(s_samples_.begin(), s_samples_.end(), s);
  const std::size_t k = std::size_t(it - s_samples_.begin());
  const double t = (s - s_samples_[k - 1]) / (s_samples_[k] - s_samples_[k - 1]);
  return radius_samples_[k - 1] + t * (radius_samples_[k] - radius_samples_[k - 1]);
}

double FlowDescriptor::arrival_time(Vec2 p) const {
  const double r = norm(p);
  if (analytic_disk_) return kPi * (r * r - 1.0);
  if (r <= radius_samples_.front()) return -1.0;
  if (r > radius_samples_.back()) return std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(radius_samples_.begin(), radius_samples_.end(), r);
  const std::size_t k = std::size_t(it - radius_samples_.begin());
  if (k == 0) return s_samples_.front();
  const double dr = radius_samples_[k] - radius_samples_[k - 1];
  const double t = dr > 0.0 ? (r - radius_samples_[k - 1]) / dr : 1.0;
  return s_samples_[k - 1] + t * (s_samples_[k] - s_samples_[k - 1]);
}

double FlowDescriptor::velocity(Vec2 p) const {
  if (analytic_disk_) return flow_velocity(p);
  // Finite-difference speed dr/ds at the arrival time of p.
  const double s = arrival_time(p);
  const double h = horizon_ * 1e-4;
  const double lo = std::max(0.0, s - h), hi = std::min(horizon_, s + h);
  return (radius(hi) - radius(lo)) / (hi - lo);
}

}  // namespace latgrow
