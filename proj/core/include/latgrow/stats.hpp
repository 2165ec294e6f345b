// stats.hpp — fluctuation fields of paired growth runs: the occupancy
// discrepancy field E and the lateness field L, their pairings with C4 test
// functions, seeded ensembles with streaming pairings against one shared
// relaxed profile, stepwise martingale diagnostics along a run, and normality
// statistics for the sampled pairings.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "latgrow/growth.hpp"
#include "latgrow/harmonic.hpp"
#include "latgrow/lattice.hpp"
#include "latgrow/theory.hpp"

namespace latgrow {

enum class SmoothnessClass {
  kC4,         // four continuous derivatives on the plane
  kC4Compact,  // additionally vanishes outside a ball
};

// Test function paired against the fluctuation fields. Compactly supported
// bumps carry their support ball; the derivative bound is a coarse sup
// estimate of the fourth derivatives, used only for tolerance budgets.
struct TestFunction {
  std::string id;
  std::function<double(Vec2)> eval;
  SmoothnessClass smoothness = SmoothnessClass::kC4;
  std::optional<DiskSupport> support;
  double derivative_bound = 1.0;

  double operator()(Vec2 p) const { return eval(p); }
};

TestFunction test_function(std::string id, std::function<double(Vec2)> eval,
                           double derivative_bound = 1.0);
// Unit-integral C4 bump supported on B_eps(center), same profile as bump_ball.
TestFunction bump_test_function(Vec2 center, double eps);

// Values below this magnitude are not stored in a field's sparse map.
inline constexpr double kFieldStoreThreshold = 1e-9;

// Sparse real field on the scaled lattice. The error variant stores
// m (1_A - nu), so every value lies in [-m, m]; the lateness variant stores
// arrival versus expected-arrival times in units of m.
struct ScalarField {
  enum class Kind { kError, kLateness };

  Kind kind = Kind::kError;
  int m = 1;
  std::int64_t step = 0;
  double s = 0.0;  // step / m^2
  std::unordered_map<std::uint64_t, double> values;  // pack(site) -> value

  double value(LatticePoint z) const {
    auto it = values.find(pack(z));
    return it == values.end() ? 0.0 : it->second;
  }
  std::size_t support_size() const { return values.size(); }
};

// E(x) = m (1_A(x) - nu(x)) at the relaxed profile's step, with A read from
// the growth order. The history must be at least as long as the profile's
// step and share its resolution; values at or below the store threshold are
// dropped (they are exact zeros away from the active band).
ScalarField error_field(const GrowthHistory& idla, const SandpileState& sandpile);

// L(x) = arrival_step(x)/m (0 when x has not arrived by the profile's step)
// minus increment_accumulator(x)/m, the step-weighted expected arrival time.
// Requires a profile whose accumulator covers every step, i.e. one produced
// by an incremental run.
ScalarField lateness_field(const GrowthHistory& idla, const SandpileState& sandpile);

// m^{-2} sum_x field(x) u(x/m).
double inner_product(const ScalarField& field, const TestFunction& u);

// Moment and goodness-of-fit summary of one sample set against a normal law
// with fitted mean and variance. The KS p-value uses the asymptotic
// Kolmogorov distribution with the finite-sample scale correction; with
// fitted parameters it is conservative (biased toward acceptance).
struct NormalityReport {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double ks_stat = 0.0;
  double ks_p = 0.0;
  bool degenerate = false;  // all samples equal; KS fields are then 1 and 0
};

// Requires at least 100 samples; flags degenerate (zero-variance) input
// instead of failing on it.
NormalityReport normality_report(std::span<const double> samples);

// Standard error of the unbiased sample variance by seeded bootstrap
// resampling (B resamples drawn with replacement from a counter-based
// stream, so the estimate is reproducible).
double bootstrap_variance_se(std::span<const double> samples, int resamples,
                             std::uint64_t seed);

struct EnsembleConfig {
  int m = 64;
  double s = 0.0;                // pairing time; runs use step = floor(m^2 s)
  bool with_lateness = false;    // relax the shared profile incrementally and sample L
  bool direct_solver = true;     // relaxation route for the shared profile
  double sandpile_tolerance = 1e-12;  // queue-route stabilization threshold
  int workers = 1;               // concurrent seed pipelines
  // When set (disk preset only): per run, check that every nonzero value of E
  // sits within this distance of the domain boundary radius, and report the
  // fraction of runs where that holds.
  std::optional<double> band_epsilon;
};

struct EnsembleStatistics {
  std::string test_function_id;
  NormalityReport report;
  double standard_error = 0.0;  // of the sample mean
};

struct EnsembleResult {
  int m = 0;
  double s = 0.0;
  std::int64_t step = 0;
  std::vector<std::uint64_t> seeds;         // seeds that produced samples, in input order
  std::vector<std::uint64_t> failed_seeds;  // excluded by the per-run conservation guard
  std::vector<std::string> function_ids;
  // samples[f][k]: pairing of the field with function f on the k-th kept seed.
  std::vector<std::vector<double>> error_samples;
  std::vector<std::vector<double>> lateness_samples;  // empty without lateness
  std::vector<EnsembleStatistics> error_stats;
  std::vector<EnsembleStatistics> lateness_stats;
  double band_containment = -1.0;  // fraction of kept runs fully in band; -1 untracked
};

// One deterministic relaxed profile, then one growth run per seed with the
// pairings accumulated streamingly (the profile-side sums are shared across
// seeds). Every run asserts the constant-function pairing (E, 1) = 0 to 1e-9;
// a violating seed is excluded and reported. Identical seed lists and config
// give bit-identical samples; workers only partition the seed list.
EnsembleResult run_ensemble(const MassDistribution& md, const EnsembleConfig& config,
                            std::span<const TestFunction> functions,
                            std::span<const std::uint64_t> seeds);

// Stepwise diagnostics of the harmonic-pairing martingale along one run.
// With psi grid-harmonic on its interior, X(t) = (psi(a_t) - psi(z_t))/m is a
// martingale difference, M is its running sum, S the running sum of squares,
// Z the matching sum of (psi(a_t)^2 - psi(z_t)^2)/m^2, and the residual
// N = S - Z is stored exactly as computed. All series freeze at the first
// settle outside the enlarged domain (the stopping step).
struct MartingaleTrace {
  std::vector<double> martingale;   // M(t), index t-1
  std::vector<double> increments;   // X(t)
  std::vector<double> square_sum;   // S(t)
  std::vector<double> compensator;  // Z(t)
  std::vector<double> residual;     // N(t) = S(t) - Z(t)
  std::int64_t first_exit_step = 0;  // 0 when the run never left the enlarged domain
  bool stopped = false;
};

// Walks steps 1..steps of the run: a_t is the t-th settle, z_t the t-th launch
// site. psi must be defined at every visited site up to the stopping step
// (both settles and launches); a lookup outside its domain is rejected as a
// too-small solve. inside_enlarged decides the stopping step: the first t
// whose settle point (in plane coordinates) falls outside.
MartingaleTrace martingale_diagnostics(const GrowthHistory& run, const GridFunction& psi,
                                       std::span<const SourceEntry> sources,
                                       std::int64_t steps,
                                       const std::function<bool(Vec2)>& inside_enlarged);

// CSV export. Sample rows are seed,m,s,test_function_id,E_inner,L_inner (the
// last empty when lateness was not sampled); statistics rows carry the moment
// and fit summary next to the theory variance and its z-score. A nonempty
// header comment is written first, one '#'-prefixed line per input line.
void write_samples_csv(std::ostream& os, const EnsembleResult& result,
                       std::string_view header_comment = {});

struct StatisticsCsvRow {
  int m = 0;
  double s = 0.0;
  std::string test_function_id;
  std::string field_label;  // "E" or "L"
  NormalityReport stats;
  double standard_error = 0.0;
  double theory_variance = 0.0;
  double z_score = 0.0;  // (sample variance - theory variance) / bootstrap SE
};

void write_statistics_csv(std::ostream& os, std::span<const StatisticsCsvRow> rows,
                          std::string_view header_comment = {});

}  // namespace latgrow
