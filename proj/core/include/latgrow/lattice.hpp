// lattice.hpp — mass distributions, ordered source sequences, discrete densities,
// and the domain flow for the disk preset.
//
// A mass distribution is an initial body D0 plus a list of extended sources; each
// source is a nested family of disks Q_i^a = B(c_i, sqrt(a/pi)) that releases one
// unit of mass per lattice site as its area parameter sweeps [0, T_i]. Families
// release mass simultaneously in proportion to their horizons: at global time
// s in [0, T], family i has released area s * T_i / T with T = sum of horizons.
//
// The discrete source sequence at scale m lists sites in order of first
// appearance; ties are broken lexicographically by integer coordinates, then by
// family index. The sequence for a smaller horizon is a prefix of the sequence
// for a larger one (verified by unit test).
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "latgrow/geometry.hpp"

namespace latgrow {

struct DiskSource {
  Vec2 center{0.0, 0.0};
  double horizon = 0.0;  // total area this family releases (T_i)

  // Global time at which plane point x starts receiving this family's mass,
  // under proportional allocation with global horizon T.
  double appearance_time(Vec2 x, double total_horizon) const;
};

class MassDistribution {
 public:
  MassDistribution(std::unique_ptr<Region> initial_domain, std::vector<DiskSource> sources);
  MassDistribution(const MassDistribution& other);
  MassDistribution& operator=(const MassDistribution&) = delete;

  // The running example: unit-disk body with one concentric source of area pi,
  // so that sigma at the final time is 2 on the unit disk.
  static MassDistribution disk_preset();

  const Region& initial_domain() const { return *initial_domain_; }
  const std::vector<DiskSource>& sources() const { return sources_; }
  double total_horizon() const { return total_horizon_; }
  bool is_disk_preset() const;

  // Continuum density sigma_s(x): initial-body indicator plus the number of
  // source families whose released region covers x at global time s.
  int sigma(double s, Vec2 x) const;

 private:
  std::unique_ptr<Region> initial_domain_;
  std::vector<DiskSource> sources_;
  double total_horizon_;
};

struct SourceEntry {
  LatticePoint z;
  double appearance = 0.0;  // global time the site enters the released region
  std::int32_t family = 0;
};

// All source sites with appearance time <= T, in launch order. Throws if T
// exceeds the distribution's total horizon by more than a rounding allowance.
std::vector<SourceEntry> build_source_sequence(const MassDistribution& md, int m, double T);

// Discrete density slice: per-site counts sigma_{m,n} = (initial body at scale m)
// + multiplicities among the first n source entries. Also evaluates the continuum
// profile of the same distribution.
class DensityProfile {
 public:
  DensityProfile(const MassDistribution& md, int m, std::int64_t n,
                 std::unordered_map<std::uint64_t, int> counts, std::int64_t initial_count);

  int m() const { return m_; }
  std::int64_t n() const { return n_; }
  std::int64_t total_mass() const { return initial_count_ + n_; }  // exact by construction
  int discrete(LatticePoint z) const;
  int continuum(double s, Vec2 x) const { return md_->sigma(s, x); }
  const std::unordered_map<std::uint64_t, int>& counts() const { return counts_; }

 private:
  const MassDistribution* md_;
  int m_;
  std::int64_t n_;
  std::unordered_map<std::uint64_t, int> counts_;
  std::int64_t initial_count_;
};

DensityProfile sigma_discrete(const MassDistribution& md, int m, std::int64_t n);

// Disk preset flow: D_s is the ball of area pi + s around the origin.
double disk_flow_radius(double s);
// Normal speed of the flow boundary as it crosses p (|p| >= 1); the smash-sum
// boundary passes p at time s = pi (|p|^2 - 1) moving at 1 / (2 pi |p|).
double flow_velocity(Vec2 p);

// Evolving domain s -> D_s with signed distance and arrival time queries.
// The disk preset is analytic; tabulated radial flows cover radially symmetric
// generalizations (radius samples are interpolated monotonically).
class FlowDescriptor {
 public:
  static FlowDescriptor disk();
  static FlowDescriptor tabulated_radial(std::vector<double> s_samples,
                                         std::vector<double> radius_samples);

  double radius(double s) const;
  bool contains(double s, Vec2 p) const { return norm(p) <= radius(s); }
  // Positive inside D_s, negative outside.
  double signed_distance(double s, Vec2 p) const { return radius(s) - norm(p); }
  // Time at which p joins the domain; negative values mean p is in D_0.
  double arrival_time(Vec2 p) const;
  double velocity(Vec2 p) const;
  double horizon() const { return horizon_; }

 private:
  FlowDescriptor() = default;
  bool analytic_disk_ = true;
  double horizon_ = 0.0;
  std::vector<double> s_samples_;
  std::vector<double> radius_samples_;
};

}  // namespace latgrow
