// growth.hpp — growth engines: internal aggregation with extended sources (random
// walkers that settle on the first vacant site), the divisible sandpile relaxation,
// Diaconis-Fulton smash sums, and boundary fluctuation reports.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "latgrow/grid2d.hpp"
#include "latgrow/lattice.hpp"

namespace latgrow {

struct GrowthHistory {
  int m = 0;
  std::uint64_t seed = 0;
  std::vector<LatticePoint> initial_set;
  // arrivals[n-1] is where the n-th walker settled; growth order defines the
  // cluster at every intermediate step.
  std::vector<LatticePoint> arrivals;
  std::unordered_map<std::uint64_t, std::int64_t> arrival_step;  // site -> n (1-based)
  std::vector<std::pair<std::int64_t, std::vector<LatticePoint>>> snapshots;

  std::vector<LatticePoint> occupied() const;             // initial set plus all arrivals
  std::vector<LatticePoint> occupied_at(std::int64_t n) const;
};

// Reusable walker engine: the occupancy window, source geometry, and the
// certified-ball bookkeeping are set up once and reset cheaply per run, which
// is what ensemble sweeps need. Walk law: unbiased nearest-neighbor steps,
// settling on the first vacant site. While the walker is provably inside a
// fully occupied ball around the origin (certificate maintained from completed
// squared-radius shells), it takes an exact leap to the exit distribution of a
// centered square instead of stepping; the exit laws are precomputed by solving
// the expected-visit equations, so the settling law is exactly that of the
// plain walk (strong Markov property; no vacant site inside a certified ball).
class IdlaEngine {
 public:
  IdlaEngine(const std::vector<LatticePoint>& initial_set, int m,
             std::span<const SourceEntry> sources);
  ~IdlaEngine();
  IdlaEngine(const IdlaEngine&) = delete;
  IdlaEngine& operator=(const IdlaEngine&) = delete;

  // Runs n_particles walkers under the given seed. on_settle(n, site) fires in
  // launch order with n starting at 1. Returns the number of window growth
  // events (0 in normal operation; growth preserves the law, it only re-pads
  // the dense grids).
  int run(std::uint64_t run_seed, std::int64_t n_particles,
          const std::function<void(std::int64_t, LatticePoint)>& on_settle);

  int m() const { return m_; }
  std::int64_t max_particles() const { return std::int64_t(sources_.size()); }
  const Grid2D<std::uint8_t>& occupancy() const { return occ_; }

 private:
  struct Shells;
  void ensure_window(LatticePoint z);
  void settle(LatticePoint z);

  int m_;
  std::vector<SourceEntry> sources_;
  std::vector<LatticePoint> initial_points_;
  Grid2D<std::uint8_t> occ_;
  Grid2D<std::uint8_t> occ_initial_;
  std::unique_ptr<Shells> shells_;
  std::int64_t certified_norm2_ = -1;  // all sites with i^2+j^2 <= this are occupied
};

GrowthHistory run_idla(const std::vector<LatticePoint>& initial_set,
                       std::span<const SourceEntry> sources, int m, std::uint64_t seed,
                       std::int64_t n_particles,
                       const std::vector<std::int64_t>& checkpoints = {});

namespace detail {
// Exit law of the simple walk started at the center of [-k, k]^2, as
// (site, probability) pairs over the reachable ring sites. Exposed so tests can
// check it against an independent power-iteration computation.
std::vector<std::pair<LatticePoint, double>> square_exit_law(int k);
}  // namespace detail

// Diaconis-Fulton smash sum of two finite lattice sets: sites in both sets send
// their extra unit on a walk that settles on the first vacant site. The result
// contains the union; duplicates are processed in lexicographic order.
std::vector<LatticePoint> smash_sum(const std::vector<LatticePoint>& a,
                                    const std::vector<LatticePoint>& b, std::uint64_t seed);

struct SandpileOptions {
  double tolerance = 1e-12;        // queue relaxation: largest excess must fall below this
  bool incremental = false;        // stabilize after every added unit
  // Relax by direct harmonic solves instead of the toppling queue. Sites at
  // capacity re-emit everything they receive, so each stabilization's emission
  // field solves a sparse linear system over the saturated set; the stable
  // configuration is the same (it is the tolerance-zero limit of the queue),
  // but the cost per added unit drops from millions of topplings to one solve.
  // `tolerance` is ignored in this mode.
  bool direct_solver = false;
  std::vector<std::int64_t> checkpoints;  // steps at which to snapshot total emitted mass
};

struct SandpileState {
  int m = 0;
  std::int64_t step = 0;
  Grid2D<double> mass;      // nu: per-site mass after relaxation
  Grid2D<double> odometer;  // total mass each site emitted
  // Step-weighted density increments sum_n n * (nu_n - nu_{n-1}), the expected
  // arrival time scale used by the lateness field. Filled only by incremental
  // runs, where the per-step increments are defined; `has_increments` says so.
  Grid2D<double> increment_accumulator;
  bool has_increments = false;
  std::vector<std::pair<std::int64_t, double>> emitted_checkpoints;

  double total_mass() const;     // compensated grid sum
  double total_emitted() const;  // compensated odometer sum
  std::vector<LatticePoint> occupied(double threshold = 1.0 - 1e-9) const;
};

// Divisible sandpile engine. Toppling a site keeps one unit and sends the excess
// in equal quarters to the four neighbors; mass updates are compensated per site
// so that conservation identities hold to accumulation error of the site count,
// not of the event count. Linear functionals registered before a run are tracked
// per toppling: c_f accumulates excess * (mean of f over neighbors - f(site)),
// so that sum_z nu(z) f(z) = sum_z sigma(z) f(z) + c_f at any stable moment, and
// the step-weighted source sum D_f accumulates n * d<nu, f> per added unit.
class SandpileEngine {
 public:
  SandpileEngine(const std::vector<LatticePoint>& initial_set, int m, double window_radius);

  int register_functional(const std::function<double(Vec2)>& f);

  void add_unit(LatticePoint z);
  void stabilize(double tol);
  // Adds source units seq[0..n), stabilizing after each when incremental.
  void run(std::span<const SourceEntry> seq, std::int64_t n, const SandpileOptions& opt);

  std::int64_t step() const { return step_; }
  double mass_at(LatticePoint z) const { return mass_.get_or(z, 0.0); }
  double functional_mass(int id) const;    // raw lattice sum of nu * f
  double functional_source(int id) const;  // raw lattice sum of sigma * f
  double functional_D(int id) const;       // raw sum_n n * d<nu, f>_n
  double total_emitted() const;
  std::int64_t topple_events() const { return events_; }

  SandpileState state() const;  // deep copy in contract form

 private:
  void rebuild_window(std::int32_t half);
  void mark_edges();
  void grow_window();
  void ensure_window(LatticePoint z);
  void tabulate(std::size_t fid);
  void run_solver(std::span<const SourceEntry> seq, std::int64_t n, const SandpileOptions& opt);

  // Step-weighted increment tracking (incremental runs only): before a site's
  // mass first changes while processing unit n, its prior value is recorded;
  // after the unit stabilizes, n * (new - old) is accumulated per dirty site.
  void note_mass(std::size_t idx);
  void flush_weighted(std::int64_t n);

  int m_;
  Grid2D<double> mass_, mass_comp_;
  Grid2D<double> acc_, acc_comp_;
  Grid2D<double> wacc_, wacc_comp_;
  Grid2D<std::uint32_t> wstamp_;
  std::vector<std::pair<std::uint32_t, double>> wdirty_;
  std::uint32_t wunit_ = 0;
  bool track_weighted_ = false;
  std::int64_t weighted_units_ = 0;  // units flushed; accumulator complete iff == step_
  Grid2D<std::uint8_t> inqueue_;
  Grid2D<std::uint8_t> edge_;
  std::vector<std::uint32_t> queue_;
  std::size_t qhead_ = 0, qtail_ = 0, qmask_ = 0;
  std::int64_t step_ = 0;
  std::int64_t events_ = 0;

  struct Tracked {
    std::function<double(Vec2)> f;
    std::vector<double> table;          // f on the window
    double c = 0.0, c_comp = 0.0;       // toppling flux of f
    double source = 0.0, source_comp = 0.0;  // sum sigma * f
    double d = 0.0, d_comp = 0.0;       // sum_n n * d<nu,f>
    double c_prev = 0.0;
  };
  std::vector<Tracked> tracked_;
  std::vector<std::pair<std::int64_t, double>> emitted_checkpoints_;
  friend SandpileState run_sandpile(const std::vector<LatticePoint>&,
                                    std::span<const SourceEntry>, int, std::int64_t,
                                    const SandpileOptions&);
};

SandpileState run_sandpile(const std::vector<LatticePoint>& initial_set,
                           std::span<const SourceEntry> sources, int m, std::int64_t n_units,
                           const SandpileOptions& options = {});

struct FluctuationReport {
  double inner_deficit = 0.0;  // deepest vacant site inside D_s (distance to the boundary)
  double outer_excess = 0.0;   // farthest occupied site outside D_s
  double band_volume = 0.0;    // area of the width-2eps band around the flow boundary
  bool in_band = true;         // both extremes within eps
};

FluctuationReport fluctuation_report(const std::vector<LatticePoint>& occupied,
                                     const FlowDescriptor& flow, double s, int m,
                                     double band_eps);

// Minimum local occupation ratio around far-out occupied sites: for every
// occupied z at distance >= r from the initial domain, the count of occupied
// lattice sites in B(z, r) divided by m^2 r^2 (a full ball scores about pi, an
// isolated site 1/(m r)^2). Thin tentacles drive the minimum toward zero; the
// value is absent when no site qualifies.
std::optional<double> tentacle_statistic(const std::vector<LatticePoint>& occupied,
                                         const Region& initial_domain, int m, double r);

}  // namespace latgrow
