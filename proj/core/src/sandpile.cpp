// sandpile.cpp — divisible sandpile relaxation.
//
// A site with mass above 1 keeps one unit and splits the excess equally among
// its four neighbors. The work queue holds sites whose excess reached the
// tolerance; since every mass receipt re-checks its site, an empty queue means
// the configuration is stable. Per-site masses and the odometer use compensated
// addition so conservation sums are good to roughly site-count rounding even
// after billions of topplings.
#include "latgrow/growth.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace latgrow {

namespace {

inline void kahan_add(double& sum, double& comp, double value) {
  const double y = value - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace

double SandpileState::total_mass() const {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) kahan_add(s, c, mass.data()[i]);
  return s;
}

double SandpileState::total_emitted() const {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < odometer.size(); ++i) kahan_add(s, c, odometer.data()[i]);
  return s;
}

std::vector<LatticePoint> SandpileState::occupied(double threshold) const {
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < mass.size(); ++i)
    if (mass.data()[i] >= threshold) out.push_back(mass.point_at(i));
  std::sort(out.begin(), out.end());
  return out;
}

SandpileEngine::SandpileEngine(const std::vector<LatticePoint>& initial_set, int m,
                               double window_radius)
    : m_(m) {
  if (m < 1) throw std::invalid_argument("SandpileEngine: need m >= 1");
  std::int32_t half = std::int32_t(window_radius * m) + 4;
  for (LatticePoint z : initial_set)
    half = std::max({half, std::abs(z.i) + 4, std::abs(z.j) + 4});
  rebuild_window(half);
  for (LatticePoint z : initial_set) mass_.at(z) += 1.0;
}

void SandpileEngine::rebuild_window(std::int32_t half) {
  mass_ = Grid2D<double>::centered(half, 0.0);
  mass_comp_ = Grid2D<double>::centered(half, 0.0);
  acc_ = Grid2D<double>::centered(half, 0.0);
  acc_comp_ = Grid2D<double>::centered(half, 0.0);
  wacc_ = Grid2D<double>::centered(half, 0.0);
  wacc_comp_ = Grid2D<double>::centered(half, 0.0);
  wstamp_ = Grid2D<std::uint32_t>::centered(half, 0);
  inqueue_ = Grid2D<std::uint8_t>::centered(half, 0);
  edge_ = Grid2D<std::uint8_t>::centered(half, 0);
  mark_edges();
  std::size_t cap = 1;
  while (cap < mass_.size()) cap <<= 1;
  queue_.assign(cap, 0);
  qmask_ = cap - 1;
  qhead_ = qtail_ = 0;
}

void SandpileEngine::note_mass(std::size_t idx) {
  if (!track_weighted_ || wunit_ == 0) return;
  if (wstamp_.data()[idx] == wunit_) return;
  wstamp_.data()[idx] = wunit_;
  wdirty_.emplace_back(std::uint32_t(idx), mass_.data()[idx]);
}

void SandpileEngine::flush_weighted(std::int64_t n) {
  for (auto [idx, before] : wdirty_)
    kahan_add(wacc_.data()[idx], wacc_comp_.data()[idx],
              double(n) * (mass_.data()[idx] - before));
  wdirty_.clear();
  ++weighted_units_;
}

void SandpileEngine::mark_edges() {
  // Outermost two rings: sites here may receive mass but must not topple
  // (their flat-index neighbor arithmetic would wrap rows); reaching toppling
  // excess on the ring triggers a window growth instead.
  const std::int32_t half = -edge_.i0();
  for (std::size_t idx = 0; idx < edge_.size(); ++idx) {
    const LatticePoint p = edge_.point_at(idx);
    edge_.data()[idx] =
        (std::abs(p.i) >= half - 1 || std::abs(p.j) >= half - 1) ? std::uint8_t(1) : std::uint8_t(0);
  }
}

int SandpileEngine::register_functional(const std::function<double(Vec2)>& f) {
  if (step_ != 0 || events_ != 0)
    throw std::logic_error("register_functional: register before adding mass");
  Tracked t;
  t.f = f;
  tracked_.push_back(std::move(t));
  tabulate(tracked_.size() - 1);
  // Account for the initial body already in place: source sum over current mass.
  Tracked& tr = tracked_.back();
  for (std::size_t i = 0; i < mass_.size(); ++i)
    if (mass_.data()[i] != 0.0)
      kahan_add(tr.source, tr.source_comp, mass_.data()[i] * tr.table[i]);
  return int(tracked_.size() - 1);
}

void SandpileEngine::tabulate(std::size_t fid) {
  Tracked& t = tracked_[fid];
  t.table.assign(mass_.size(), 0.0);
  for (std::size_t i = 0; i < mass_.size(); ++i)
    t.table[i] = t.f(to_plane(mass_.point_at(i), m_));
}

void SandpileEngine::grow_window() {
  const std::int32_t old_i0 = mass_.i0(), old_j0 = mass_.j0();
  const std::int32_t old_nx = mass_.nx();
  const std::int32_t pad = std::max(old_nx / 4, 16);

  mass_ = mass_.grown(pad, 0.0);
  mass_comp_ = mass_comp_.grown(pad, 0.0);
  acc_ = acc_.grown(pad, 0.0);
  acc_comp_ = acc_comp_.grown(pad, 0.0);
  wacc_ = wacc_.grown(pad, 0.0);
  wacc_comp_ = wacc_comp_.grown(pad, 0.0);
  wstamp_ = wstamp_.grown(pad, 0);
  // Dirty-list entries hold window-relative flat indices; remap them.
  for (auto& [idx, before] : wdirty_) {
    const LatticePoint p{std::int32_t(idx % std::uint32_t(old_nx)) + old_i0,
                         std::int32_t(idx / std::uint32_t(old_nx)) + old_j0};
    idx = std::uint32_t(mass_.index(p));
  }
  inqueue_ = inqueue_.grown(pad, 0);
  edge_ = Grid2D<std::uint8_t>::centered(-mass_.i0(), 0);
  mark_edges();
  for (std::size_t fid = 0; fid < tracked_.size(); ++fid) tabulate(fid);

  // Remap pending queue entries: they are window-relative flat indices.
  const std::size_t n = qtail_ - qhead_;
  std::vector<std::uint32_t> pending(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t old_idx = queue_[(qhead_ + k) & qmask_];
    const LatticePoint p{std::int32_t(old_idx % std::uint32_t(old_nx)) + old_i0,
                         std::int32_t(old_idx / std::uint32_t(old_nx)) + old_j0};
    pending[k] = std::uint32_t(mass_.index(p));
  }
  std::size_t cap = 1;
  while (cap < mass_.size()) cap <<= 1;
  queue_.assign(cap, 0);
  qmask_ = cap - 1;
  std::copy(pending.begin(), pending.end(), queue_.begin());
  qhead_ = 0;
  qtail_ = n;
}

void SandpileEngine::ensure_window(LatticePoint z) {
  while (!mass_.in_window(z) || std::abs(z.i) >= -mass_.i0() - 1 ||
         std::abs(z.j) >= -mass_.j0() - 1)
    grow_window();
}

void SandpileEngine::add_unit(LatticePoint z) {
  ensure_window(z);
  const std::size_t idx = mass_.index(z);
  note_mass(idx);
  kahan_add(mass_.data()[idx], mass_comp_.data()[idx], 1.0);
  ++step_;
  for (Tracked& t : tracked_) kahan_add(t.source, t.source_comp, t.table[idx]);
  if (mass_.data()[idx] - 1.0 > 0.0 && !inqueue_.data()[idx]) {
    inqueue_.data()[idx] = 1;
    queue_[qtail_++ & qmask_] = std::uint32_t(idx);
  }
}

void SandpileEngine::stabilize(double tol) {
  while (qhead_ != qtail_) {
    const std::ptrdiff_t w = mass_.nx();
    double* mass = mass_.data();
    double* comp = mass_comp_.data();
    double* acc = acc_.data();
    double* acc_comp = acc_comp_.data();
    std::uint8_t* inq = inqueue_.data();
    const std::uint8_t* edge = edge_.data();

    while (qhead_ != qtail_) {
      const std::size_t idx = queue_[qhead_++ & qmask_];
      inq[idx] = 0;
      const double e = mass[idx] - 1.0;
      if (e < tol) continue;
      if (edge[idx]) {
        // Re-queue, enlarge, and restart with fresh buffers.
        inq[idx] = 1;
        queue_[--qhead_ & qmask_] = std::uint32_t(idx);
        grow_window();
        break;
      }

      ++events_;
      note_mass(idx);
      mass[idx] = 1.0;
      comp[idx] = 0.0;
      kahan_add(acc[idx], acc_comp[idx], e);
      const double quarter = 0.25 * e;
      const std::size_t nb[4] = {idx + 1, idx - 1, idx + std::size_t(w), idx - std::size_t(w)};
      for (std::size_t b : nb) {
        note_mass(b);
        kahan_add(mass[b], comp[b], quarter);
        if (mass[b] - 1.0 >= tol && !inq[b]) {
          inq[b] = 1;
          queue_[qtail_++ & qmask_] = std::uint32_t(b);
        }
      }
      for (Tracked& t : tracked_) {
        const double* tab = t.table.data();
        const double flux =
            e * (0.25 * (tab[nb[0]] + tab[nb[1]] + tab[nb[2]] + tab[nb[3]]) - tab[idx]);
        kahan_add(t.c, t.c_comp, flux);
      }
    }
  }
}

// Relaxation by direct harmonic solves. Every site at capacity re-emits all
// mass it receives, so within a fixed saturated region the emission field psi
// of one stabilization solves (I - P) psi = sources, with P the one-step
// transition kernel restricted to the region. Deposits land on the adjacent
// unsaturated ring; a deposit that lifts a ring site above capacity converts
// it into an emitter and its overflow seeds another round. This computes the
// same stable configuration as the toppling queue in its tolerance-zero limit,
// at one sparse solve per stabilization instead of millions of topplings.
void SandpileEngine::run_solver(std::span<const SourceEntry> seq, std::int64_t n,
                                const SandpileOptions& opt) {
  using Vec = Eigen::VectorXd;
  using SpMat = Eigen::SparseMatrix<double>;

  std::vector<LatticePoint> sites;               // saturated region, solve ordering
  std::vector<std::array<std::int32_t, 4>> adj;  // in-region neighbor positions by direction
  Grid2D<std::int32_t> pos;
  Eigen::SimplicialLDLT<SpMat> factor;
  std::size_t base_n = 0;  // leading sites covered by `factor`
  std::size_t stale = 0;   // sites appended since the factorization
  bool need_factor = true;
  Vec x, r, z, p, ap, rhs, head;

  constexpr double kTolRel = 3e-13;     // solve target, relative to the source norm
  constexpr double kAcceptRel = 1e-10;  // stagnation acceptance near the rounding floor
  constexpr int kMaxIter = 400;
  constexpr std::size_t kRefactorAppends = 24;

  auto rebuild_pos = [&] {
    pos = Grid2D<std::int32_t>::centered(-mass_.i0(), -1);
    for (std::size_t k = 0; k < sites.size(); ++k) pos.at(sites[k]) = std::int32_t(k);
  };
  rebuild_pos();

  auto append_site = [&](LatticePoint zp) {
    while (edge_.at(zp)) {
      grow_window();
      rebuild_pos();
    }
    const std::int32_t k = std::int32_t(sites.size());
    sites.push_back(zp);
    pos.at(zp) = k;
    std::array<std::int32_t, 4> a{-1, -1, -1, -1};
    for (int d = 0; d < 4; ++d) {
      const std::int32_t q = pos.get_or(neighbor(zp, d), -1);
      a[std::size_t(d)] = q;
      if (q >= 0) adj[std::size_t(q)][std::size_t(d ^ 1)] = k;  // directions pair +x/-x, +y/-y
    }
    adj.push_back(a);
    if (++stale > kRefactorAppends) need_factor = true;
  };

  auto refactor = [&] {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(sites.size() * 5);
    for (std::size_t k = 0; k < sites.size(); ++k) {
      trip.emplace_back(int(k), int(k), 1.0);
      for (int d = 0; d < 4; ++d)
        if (adj[k][std::size_t(d)] >= 0) trip.emplace_back(int(k), int(adj[k][std::size_t(d)]), -0.25);
    }
    SpMat a(Eigen::Index(sites.size()), Eigen::Index(sites.size()));
    a.setFromTriplets(trip.begin(), trip.end());
    factor.compute(a);
    if (factor.info() != Eigen::Success)
      throw std::runtime_error("sandpile direct solver: factorization failed");
    base_n = sites.size();
    stale = 0;
    need_factor = false;
  };

  auto matvec = [&](const Vec& v, Vec& out) {
    out.resize(v.size());
    for (std::size_t k = 0; k < sites.size(); ++k) {
      const auto& a = adj[k];
      double s = 0.0;
      if (a[0] >= 0) s += v[a[0]];
      if (a[1] >= 0) s += v[a[1]];
      if (a[2] >= 0) s += v[a[2]];
      if (a[3] >= 0) s += v[a[3]];
      out[Eigen::Index(k)] = v[Eigen::Index(k)] - 0.25 * s;
    }
  };

  auto precond = [&](const Vec& v, Vec& out) {
    out.resize(v.size());
    head = v.head(Eigen::Index(base_n));
    out.head(Eigen::Index(base_n)) = factor.solve(head);
    if (v.size() > Eigen::Index(base_n))
      out.tail(v.size() - Eigen::Index(base_n)) = v.tail(v.size() - Eigen::Index(base_n));
  };

  // Preconditioned CG on (I - P) over the region. The preconditioner is the
  // cached factorization extended by the identity on appended sites, so the
  // iteration count tracks the append count; a stall forces a fresh factor.
  auto solve = [&](const Vec& b) -> const Vec& {
    for (int attempt = 0;; ++attempt) {
      if (need_factor) refactor();
      const double bnorm = b.norm();
      x = Vec::Zero(b.size());
      if (bnorm == 0.0) return x;
      r = b;
      double rn = bnorm;
      precond(r, z);
      p = z;
      double rz = r.dot(z);
      double best = rn;
      int since_best = 0;
      bool stalled = false;
      for (int it = 0; it < kMaxIter; ++it) {
        matvec(p, ap);
        const double alpha = rz / p.dot(ap);
        x += alpha * p;
        r -= alpha * ap;
        rn = r.norm();
        if (rn <= kTolRel * bnorm) return x;
        if (rn < 0.25 * best) {
          best = rn;
          since_best = 0;
        } else if (++since_best >= 6) {
          stalled = true;
          break;
        }
        precond(r, z);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
      }
      if (stalled && rn <= kAcceptRel * bnorm) return x;
      if (attempt == 0 && base_n != sites.size()) {
        need_factor = true;
        continue;
      }
      throw std::runtime_error("sandpile direct solver: emission solve did not converge");
    }
  };

  std::vector<std::pair<LatticePoint, double>> src;       // pending mass, raw
  std::vector<std::pair<std::int32_t, double>> emis;      // normalized region emissions
  std::vector<LatticePoint> touched;                      // deposit targets this round

  auto process = [&] {
    while (!src.empty()) {
      emis.clear();
      for (auto& [zp, amount] : src) {
        while (!mass_.in_window(zp)) {
          grow_window();
          rebuild_pos();
        }
        std::int32_t q = pos.at(zp);
        if (q < 0) {
          const std::size_t idx = mass_.index(zp);
          note_mass(idx);
          kahan_add(mass_.data()[idx], mass_comp_.data()[idx], amount);
          if (mass_.data()[idx] <= 1.0) continue;  // absorbed below capacity
          const double e = mass_.data()[idx] - 1.0;
          mass_.data()[idx] = 1.0;
          mass_comp_.data()[idx] = 0.0;
          append_site(zp);
          q = pos.at(zp);
          amount = e;
        }
        emis.emplace_back(q, amount);
      }
      src.clear();
      if (emis.empty()) break;
      rhs = Vec::Zero(Eigen::Index(sites.size()));
      for (auto [q, amount] : emis) rhs[q] += amount;
      const Vec& psi = solve(rhs);

      // Odometer and deposits onto the unsaturated ring.
      const std::ptrdiff_t w = mass_.nx();
      touched.clear();
      for (std::size_t k = 0; k < sites.size(); ++k) {
        const double em = psi[Eigen::Index(k)];
        if (em == 0.0) continue;
        const std::size_t idx = mass_.index(sites[k]);
        kahan_add(acc_.data()[idx], acc_comp_.data()[idx], em);
        const auto& a = adj[k];
        const double quarter = 0.25 * em;
        if (a[0] < 0) {
          note_mass(idx + 1);
          kahan_add(mass_.data()[idx + 1], mass_comp_.data()[idx + 1], quarter);
          touched.push_back(neighbor(sites[k], 0));
        }
        if (a[1] < 0) {
          note_mass(idx - 1);
          kahan_add(mass_.data()[idx - 1], mass_comp_.data()[idx - 1], quarter);
          touched.push_back(neighbor(sites[k], 1));
        }
        if (a[2] < 0) {
          note_mass(idx + std::size_t(w));
          kahan_add(mass_.data()[idx + std::size_t(w)], mass_comp_.data()[idx + std::size_t(w)],
                    quarter);
          touched.push_back(neighbor(sites[k], 2));
        }
        if (a[3] < 0) {
          note_mass(idx - std::size_t(w));
          kahan_add(mass_.data()[idx - std::size_t(w)], mass_comp_.data()[idx - std::size_t(w)],
                    quarter);
          touched.push_back(neighbor(sites[k], 3));
        }
      }
      for (Tracked& t : tracked_) {
        const double* tab = t.table.data();
        double fsum = 0.0, fcomp = 0.0;
        for (std::size_t k = 0; k < sites.size(); ++k) {
          const double em = psi[Eigen::Index(k)];
          if (em == 0.0) continue;
          const std::size_t idx = mass_.index(sites[k]);
          kahan_add(fsum, fcomp,
                    em * (0.25 * (tab[idx + 1] + tab[idx - 1] + tab[idx + std::size_t(w)] +
                                  tab[idx - std::size_t(w)]) -
                          tab[idx]));
        }
        kahan_add(t.c, t.c_comp, fsum);
      }

      // Deposit targets that crossed capacity become emitters next round.
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (LatticePoint zp : touched) {
        const std::size_t idx = mass_.index(zp);
        if (mass_.data()[idx] <= 1.0) continue;
        const double e = mass_.data()[idx] - 1.0;
        mass_.data()[idx] = 1.0;
        mass_comp_.data()[idx] = 0.0;
        append_site(zp);  // may grow the window; later flat indices are recomputed
        src.emplace_back(zp, e);
      }
    }
  };

  if (!opt.incremental) {
    for (std::int64_t k = 0; k < n; ++k) {
      LatticePoint zk = seq[std::size_t(k)].z;
      while (!mass_.in_window(zk)) {
        grow_window();
        rebuild_pos();
      }
      const std::size_t idx = mass_.index(zk);
      kahan_add(mass_.data()[idx], mass_comp_.data()[idx], 1.0);
      ++step_;
      for (Tracked& t : tracked_) kahan_add(t.source, t.source_comp, t.table[idx]);
    }
  }

  // Seed the region with every site at or above capacity; excess is relaxed
  // before any step attribution starts.
  {
    std::vector<std::pair<LatticePoint, double>> body;
    for (std::size_t idx = 0; idx < mass_.size(); ++idx)
      if (mass_.data()[idx] >= 1.0)
        body.emplace_back(mass_.point_at(idx), mass_.data()[idx] - 1.0);
    for (auto& [zp, e] : body) {
      mass_.at(zp) = 1.0;
      mass_comp_.at(zp) = 0.0;
      append_site(zp);
      if (e > 0.0) src.emplace_back(zp, e);
    }
    process();
    for (Tracked& t : tracked_) t.c_prev = t.c;
  }

  if (!opt.incremental) {
    if (!opt.checkpoints.empty()) emitted_checkpoints_.emplace_back(n, total_emitted());
    return;
  }

  auto checkpoint_it = opt.checkpoints.begin();
  for (std::int64_t k = 0; k < n; ++k) {
    const LatticePoint zk = seq[std::size_t(k)].z;
    while (!mass_.in_window(zk)) {
      grow_window();
      rebuild_pos();
    }
    ++step_;
    wunit_ = std::uint32_t(step_);
    {
      const std::size_t idx = mass_.index(zk);
      for (Tracked& t : tracked_) kahan_add(t.source, t.source_comp, t.table[idx]);
    }
    src.emplace_back(zk, 1.0);
    process();
    flush_weighted(step_);
    const std::size_t idx = mass_.index(zk);  // the window may have grown while relaxing
    for (Tracked& t : tracked_) {
      kahan_add(t.d, t.d_comp, double(k + 1) * (t.table[idx] + (t.c - t.c_prev)));
      t.c_prev = t.c;
    }
    while (checkpoint_it != opt.checkpoints.end() && *checkpoint_it == k + 1) {
      emitted_checkpoints_.emplace_back(k + 1, total_emitted());
      ++checkpoint_it;
    }
  }
}

void SandpileEngine::run(std::span<const SourceEntry> seq, std::int64_t n,
                         const SandpileOptions& opt) {
  if (n < 0 || n > std::int64_t(seq.size()))
    throw std::invalid_argument("SandpileEngine::run: unit count exceeds the source sequence");
  track_weighted_ = opt.incremental;
  if (opt.direct_solver) {
    run_solver(seq, n, opt);
    return;
  }
  auto checkpoint_it = opt.checkpoints.begin();
  if (opt.incremental) {
    for (std::int64_t k = 0; k < n; ++k) {
      wunit_ = std::uint32_t(step_ + 1);
      add_unit(seq[std::size_t(k)].z);
      stabilize(opt.tolerance);
      flush_weighted(step_);
      // Step-weighted source increments: d<nu,f> for unit k+1 is f at the source
      // plus the toppling flux this stabilization added to c_f.
      const std::size_t idx = mass_.index(seq[std::size_t(k)].z);
      for (Tracked& t : tracked_) {
        kahan_add(t.d, t.d_comp, double(k + 1) * (t.table[idx] + (t.c - t.c_prev)));
        t.c_prev = t.c;
      }
      while (checkpoint_it != opt.checkpoints.end() && *checkpoint_it == k + 1) {
        emitted_checkpoints_.emplace_back(k + 1, total_emitted());
        ++checkpoint_it;
      }
    }
  } else {
    for (std::int64_t k = 0; k < n; ++k) add_unit(seq[std::size_t(k)].z);
    stabilize(opt.tolerance);
    if (!opt.checkpoints.empty()) emitted_checkpoints_.emplace_back(n, total_emitted());
  }
}

double SandpileEngine::functional_mass(int id) const {
  const Tracked& t = tracked_.at(std::size_t(id));
  return t.source + t.c;
}

double SandpileEngine::functional_source(int id) const {
  return tracked_.at(std::size_t(id)).source;
}

double SandpileEngine::functional_D(int id) const { return tracked_.at(std::size_t(id)).d; }

double SandpileEngine::total_emitted() const {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < acc_.size(); ++i) kahan_add(s, c, acc_.data()[i]);
  return s;
}

SandpileState SandpileEngine::state() const {
  SandpileState st;
  st.m = m_;
  st.step = step_;
  st.mass = mass_;
  st.odometer = acc_;
  st.increment_accumulator = wacc_;
  st.has_increments = step_ > 0 && weighted_units_ == step_;
  st.emitted_checkpoints = emitted_checkpoints_;
  return st;
}

SandpileState run_sandpile(const std::vector<LatticePoint>& initial_set,
                           std::span<const SourceEntry> sources, int m, std::int64_t n_units,
                           const SandpileOptions& options) {
  const double total_mass = double(initial_set.size()) + double(n_units);
  const double radius = std::sqrt(total_mass / 3.14159265358979323846) / std::max(m, 1);
  SandpileEngine engine(initial_set, m, radius * 1.1 + 8.0 / m);
  engine.run(sources, n_units, options);
  return engine.state();
}

}  // namespace latgrow
