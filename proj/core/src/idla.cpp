// idla.cpp — internal aggregation walkers and smash sums.
//
// The walk itself is the unbiased nearest-neighbor walk on Z^2 settling on the
// first vacant site. Inside a ball that is provably fully occupied the walker
// cannot settle, so by the strong Markov property it may be teleported to the
// exact exit distribution of any centered square contained in that ball. Exit
// laws are precomputed per square radius from the expected-visit equations and
// sampled through alias tables; everything stays bit-reproducible because all
// draws come from the particle's own counter stream.
#include "latgrow/growth.hpp"
#include "latgrow/rng.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace latgrow {

namespace {

struct ExitTable {
  int k = 0;
  std::vector<LatticePoint> sites;  // reachable ring sites of [-k, k]^2
  std::vector<double> prob;         // alias table acceptance probabilities
  std::vector<std::uint32_t> alias;
};

void build_alias(const std::vector<double>& weights, std::vector<double>& prob,
                 std::vector<std::uint32_t>& alias) {
  const std::size_t n = weights.size();
  prob.assign(n, 0.0);
  alias.assign(n, 0);
  std::vector<double> scaled(n);
  double total = 0.0;
  for (double w : weights) total += w;
  for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * double(n) / total;
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i)
    (scaled[i] < 1.0 ? small : large).push_back(std::uint32_t(i));
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back(), l = large.back();
    small.pop_back();
    prob[s] = scaled[s];
    alias[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::uint32_t i : large) prob[i] = 1.0;
  for (std::uint32_t i : small) prob[i] = 1.0;  // leftovers are 1 up to rounding
}

ExitTable build_exit_table(int k) {
  // Interior sites |i|,|j| <= k-1; absorption on the ring max(|i|,|j|) = k.
  const int n = 2 * k - 1;
  auto id = [&](int i, int j) { return (i + k - 1) + n * (j + k - 1); };
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(std::size_t(n) * n * 5);
  for (int j = -(k - 1); j <= k - 1; ++j) {
    for (int i = -(k - 1); i <= k - 1; ++i) {
      trips.emplace_back(id(i, j), id(i, j), 1.0);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ii = i + di[d], jj = j + dj[d];
        if (std::max(std::abs(ii), std::abs(jj)) <= k - 1)
          trips.emplace_back(id(i, j), id(ii, jj), -0.25);
      }
    }
  }
  Eigen::SparseMatrix<double> A(n * n, n * n);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("exit table: factorization failed");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n * n);
  rhs[id(0, 0)] = 1.0;
  Eigen::VectorXd visits = solver.solve(rhs);

  ExitTable table;
  table.k = k;
  std::vector<double> weights;
  // Ring sites reachable in one step from the interior: the four open sides.
  const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
  for (int j = -k; j <= k; ++j) {
    for (int i = -k; i <= k; ++i) {
      if (std::max(std::abs(i), std::abs(j)) != k) continue;
      double w = 0.0;
      for (int d = 0; d < 4; ++d) {
        const int ii = i + di[d], jj = j + dj[d];
        if (std::max(std::abs(ii), std::abs(jj)) <= k - 1) w += 0.25 * visits[id(ii, jj)];
      }
      if (w > 0.0) {
        table.sites.push_back({i, j});
        weights.push_back(w);
      }
    }
  }
  double total = 0.0;
  for (double w : weights) total += w;
  if (std::abs(total - 1.0) > 1e-12)
    throw std::runtime_error("exit table: probabilities do not sum to one");
  build_alias(weights, table.prob, table.alias);
  return table;
}

constexpr int kJumpRadii[4] = {32, 16, 8, 4};

const ExitTable& exit_table(int k) {
  static std::mutex mu;
  static ExitTable tables[4];
  std::lock_guard<std::mutex> lock(mu);
  for (int idx = 0; idx < 4; ++idx) {
    if (kJumpRadii[idx] == k) {
      if (tables[idx].k == 0) tables[idx] = build_exit_table(k);
      return tables[idx];
    }
  }
  throw std::invalid_argument("exit_table: unsupported radius");
}

LatticePoint sample_exit(const ExitTable& t, CounterStream& rng) {
  const std::uint64_t idx = rng.next_below(t.sites.size());
  const std::size_t pick = rng.next_unit() < t.prob[idx] ? std::size_t(idx) : t.alias[idx];
  return t.sites[pick];
}

}  // namespace

// Completed-shell bookkeeping: for every squared radius v we track how many of
// the sites with i^2 + j^2 = v are occupied; the certificate is the largest v
// with every shell <= v complete, and it only ever grows during a run.
struct IdlaEngine::Shells {
  std::int64_t max_norm2 = 0;
  std::vector<std::int32_t> expected;
  std::vector<std::int32_t> count;
  std::vector<std::int32_t> count_initial;
  std::int64_t certified_initial = -1;

  void build_expected(std::int32_t half) {
    max_norm2 = std::int64_t(half) * half;
    expected.assign(std::size_t(max_norm2) + 1, 0);
    for (std::int32_t i = -half; i <= half; ++i)
      for (std::int32_t j = -half; j <= half; ++j) {
        const std::int64_t v = std::int64_t(i) * i + std::int64_t(j) * j;
        if (v <= max_norm2) ++expected[std::size_t(v)];
      }
    count.assign(expected.size(), 0);
  }
};

IdlaEngine::IdlaEngine(const std::vector<LatticePoint>& initial_set, int m,
                       std::span<const SourceEntry> sources)
    : m_(m), sources_(sources.begin(), sources.end()), initial_points_(initial_set) {
  if (m < 1) throw std::invalid_argument("IdlaEngine: need m >= 1");
  // Window sized from the total mass: final cluster area is (|initial| + n)/m^2.
  std::int64_t extent = 4;
  for (LatticePoint z : initial_points_)
    extent = std::max({extent, std::int64_t(std::abs(z.i)), std::int64_t(std::abs(z.j))});
  for (const SourceEntry& e : sources_)
    extent = std::max({extent, std::int64_t(std::abs(e.z.i)), std::int64_t(std::abs(e.z.j))});
  const double total = double(initial_points_.size() + sources_.size());
  const double growth_radius = std::sqrt(total / 3.14159265358979323846);
  const auto half = std::int32_t(std::max(double(extent), growth_radius) * 1.2 + 24.0);

  occ_initial_ = Grid2D<std::uint8_t>::centered(half, 0);
  for (LatticePoint z : initial_points_) occ_initial_.at(z) = 1;
  shells_ = std::make_unique<Shells>();
  shells_->build_expected(half);
  for (LatticePoint z : initial_points_) {
    const std::int64_t v = std::int64_t(z.i) * z.i + std::int64_t(z.j) * z.j;
    if (v <= shells_->max_norm2) ++shells_->count[std::size_t(v)];
  }
  std::int64_t certified = -1;
  while (certified + 1 <= shells_->max_norm2 &&
         shells_->count[std::size_t(certified + 1)] == shells_->expected[std::size_t(certified + 1)])
    ++certified;
  shells_->certified_initial = certified;
  shells_->count_initial = shells_->count;
  occ_ = occ_initial_;
}

IdlaEngine::~IdlaEngine() = default;

void IdlaEngine::ensure_window(LatticePoint z) {
  if (occ_.in_window(z)) return;
  // Rare: pad the window by half its size and rebuild the shell bookkeeping.
  const std::int32_t pad = std::max(occ_.nx() / 2, 32);
  occ_ = occ_.grown(pad, 0);
  occ_initial_ = occ_initial_.grown(pad, 0);
  const std::int32_t half = -occ_.i0();  // windows stay centered squares
  Shells fresh;
  fresh.build_expected(half);
  for (std::size_t idx = 0; idx < occ_.size(); ++idx) {
    if (!occ_.data()[idx]) continue;
    const LatticePoint p = occ_.point_at(idx);
    const std::int64_t v = std::int64_t(p.i) * p.i + std::int64_t(p.j) * p.j;
    if (v <= fresh.max_norm2) ++fresh.count[std::size_t(v)];
  }
  std::int64_t certified = certified_norm2_;
  while (certified + 1 <= fresh.max_norm2 &&
         fresh.count[std::size_t(certified + 1)] == fresh.expected[std::size_t(certified + 1)])
    ++certified;
  // Rebuild the initial snapshot under the new window for later resets.
  std::vector<std::int32_t> init_count(fresh.expected.size(), 0);
  for (LatticePoint z0 : initial_points_) {
    const std::int64_t v = std::int64_t(z0.i) * z0.i + std::int64_t(z0.j) * z0.j;
    if (v <= fresh.max_norm2) ++init_count[std::size_t(v)];
  }
  fresh.count_initial = std::move(init_count);
  fresh.certified_initial = -1;
  while (fresh.certified_initial + 1 <= fresh.max_norm2 &&
         fresh.count_initial[std::size_t(fresh.certified_initial + 1)] ==
             fresh.expected[std::size_t(fresh.certified_initial + 1)])
    ++fresh.certified_initial;
  *shells_ = std::move(fresh);
  certified_norm2_ = certified;
}

void IdlaEngine::settle(LatticePoint z) {
  occ_.at(z) = 1;
  const std::int64_t v = std::int64_t(z.i) * z.i + std::int64_t(z.j) * z.j;
  if (v <= shells_->max_norm2) {
    ++shells_->count[std::size_t(v)];
    while (certified_norm2_ + 1 <= shells_->max_norm2 &&
           shells_->count[std::size_t(certified_norm2_ + 1)] ==
               shells_->expected[std::size_t(certified_norm2_ + 1)])
      ++certified_norm2_;
  }
}

int IdlaEngine::run(std::uint64_t run_seed, std::int64_t n_particles,
                    const std::function<void(std::int64_t, LatticePoint)>& on_settle) {
  if (n_particles < 0 || n_particles > max_particles())
    throw std::invalid_argument("IdlaEngine::run: particle count exceeds the source sequence");
  // Reset to the initial configuration (buffers keep their window).
  std::copy(occ_initial_.data(), occ_initial_.data() + occ_initial_.size(), occ_.data());
  shells_->count = shells_->count_initial;
  certified_norm2_ = shells_->certified_initial;

  int grow_events = 0;
  for (std::int64_t t = 1; t <= n_particles; ++t) {
    CounterStream rng(derive(run_seed, std::uint64_t(t)));
    LatticePoint z = sources_[std::size_t(t - 1)].z;
    ensure_window(z);
    while (occ_.at(z)) {
      const std::int64_t ax = std::abs(std::int64_t(z.i));
      const std::int64_t ay = std::abs(std::int64_t(z.j));
      bool jumped = false;
      for (int k : kJumpRadii) {
        const std::int64_t ci = ax + k, cj = ay + k;
        if (ci * ci + cj * cj <= certified_norm2_) {
          const LatticePoint d = sample_exit(exit_table(k), rng);
          z = {z.i + d.i, z.j + d.j};
          jumped = true;
          break;
        }
      }
      if (!jumped) {
        z = neighbor(z, rng.next_step());
        if (!occ_.in_window(z)) {
          ensure_window(z);
          ++grow_events;
        }
      }
    }
    settle(z);
    if (on_settle) on_settle(t, z);
  }
  return grow_events;
}

namespace detail {
std::vector<std::pair<LatticePoint, double>> square_exit_law(int k) {
  const ExitTable table = build_exit_table(k);
  // Recover plain probabilities from the alias structure: weight of site i is
  // (prob[i] + sum of (1 - prob[j]) over j with alias[j] == i) / n.
  const std::size_t n = table.sites.size();
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] += table.prob[i];
    p[table.alias[i]] += 1.0 - table.prob[i];
  }
  std::vector<std::pair<LatticePoint, double>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {table.sites[i], p[i] / double(n)};
  return out;
}
}  // namespace detail

std::vector<LatticePoint> GrowthHistory::occupied() const {
  return occupied_at(std::int64_t(arrivals.size()));
}

std::vector<LatticePoint> GrowthHistory::occupied_at(std::int64_t n) const {
  std::vector<LatticePoint> out = initial_set;
  out.insert(out.end(), arrivals.begin(), arrivals.begin() + std::min<std::ptrdiff_t>(n, arrivals.size()));
  std::sort(out.begin(), out.end());
  return out;
}

GrowthHistory run_idla(const std::vector<LatticePoint>& initial_set,
                       std::span<const SourceEntry> sources, int m, std::uint64_t seed,
                       std::int64_t n_particles, const std::vector<std::int64_t>& checkpoints) {
  IdlaEngine engine(initial_set, m, sources);
  GrowthHistory h;
  h.m = m;
  h.seed = seed;
  h.initial_set = initial_set;
  h.arrivals.reserve(std::size_t(n_particles));
  h.arrival_step.reserve(std::size_t(n_particles) * 2);
  engine.run(seed, n_particles, [&](std::int64_t n, LatticePoint z) {
    h.arrivals.push_back(z);
    h.arrival_step.emplace(pack(z), n);
  });
  for (std::int64_t c : checkpoints) {
    if (c < 0 || c > n_particles)
      throw std::invalid_argument("run_idla: checkpoint outside the run");
    h.snapshots.emplace_back(c, h.occupied_at(c));
  }
  return h;
}

std::vector<LatticePoint> smash_sum(const std::vector<LatticePoint>& a,
                                    const std::vector<LatticePoint>& b, std::uint64_t seed) {
  std::int64_t extent = 4;
  for (const auto* set : {&a, &b})
    for (LatticePoint z : *set)
      extent = std::max({extent, std::int64_t(std::abs(z.i)), std::int64_t(std::abs(z.j))});
  const double total = double(a.size() + b.size());
  const auto half =
      std::int32_t(std::max(double(extent), std::sqrt(total / 3.141592653589793)) * 1.3 + 16.0);
  Grid2D<std::uint8_t> occ = Grid2D<std::uint8_t>::centered(half, 0);

  for (LatticePoint z : a) occ.at(z) = 1;
  std::vector<LatticePoint> duplicates;
  for (LatticePoint z : b) {
    if (occ.at(z))
      duplicates.push_back(z);
    else
      occ.at(z) = 1;
  }
  std::sort(duplicates.begin(), duplicates.end());

  for (std::size_t k = 0; k < duplicates.size(); ++k) {
    CounterStream rng(derive(seed, std::uint64_t(k + 1)));
    LatticePoint z = duplicates[k];
    while (occ.get_or(z, 0)) z = neighbor(z, rng.next_step());
    if (!occ.in_window(z)) {
      occ = occ.grown(std::max(occ.nx() / 2, 16), 0);
    }
    occ.at(z) = 1;
  }

  std::vector<LatticePoint> out;
  for (std::size_t idx = 0; idx < occ.size(); ++idx)
    if (occ.data()[idx]) out.push_back(occ.point_at(idx));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace latgrow
