// Fluctuation fields, ensembles, martingale diagnostics, and normality
// statistics. Ensemble pairings are accumulated streamingly per settle, so no
// per-seed field is materialized; the relaxed-profile sums are shared.
#include "latgrow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "latgrow/geometry.hpp"
#include "latgrow/rng.hpp"

namespace latgrow {
namespace {

constexpr double kPi = 3.14159265358979323846;

void kahan_add(double& sum, double& comp, double x) {
  const double y = x - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Kolmogorov limit law Q(lambda) = P(sup|B| > lambda); the two standard
// series, switched where each converges fast.
double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    const double t = std::exp(-kPi * kPi / (8.0 * lambda * lambda));
    const double p =
        1.0 - std::sqrt(2.0 * kPi) / lambda * (t + std::pow(t, 9.0) + std::pow(t, 25.0));
    return std::clamp(p, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * double(k) * double(k) * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// Moments and KS fit without the sample-count gate (normality_report adds it).
NormalityReport describe(std::span<const double> xs) {
  NormalityReport r;
  r.count = xs.size();
  if (xs.size() < 2) {
    r.degenerate = true;
    r.mean = xs.empty() ? 0.0 : xs[0];
    r.ks_stat = 1.0;
    return r;
  }
  const double n = double(xs.size());
  double sum = 0.0, comp = 0.0;
  for (double x : xs) kahan_add(sum, comp, x);
  r.mean = sum / n;
  double s2 = 0.0, s3 = 0.0, s4 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  for (double x : xs) {
    const double d = x - r.mean;
    kahan_add(s2, c2, d * d);
    kahan_add(s3, c3, d * d * d);
    kahan_add(s4, c4, d * d * d * d);
  }
  r.variance = s2 / (n - 1.0);
  if (s2 == 0.0) {
    r.degenerate = true;
    r.ks_stat = 1.0;
    r.ks_p = 0.0;
    return r;
  }
  const double m2 = s2 / n;
  r.skewness = (s3 / n) / std::pow(m2, 1.5);
  r.excess_kurtosis = (s4 / n) / (m2 * m2) - 3.0;

  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = std::sqrt(r.variance);
  double d_stat = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf((sorted[i] - r.mean) / sd);
    d_stat = std::max(d_stat, std::max(double(i + 1) / n - f, f - double(i) / n));
  }
  r.ks_stat = d_stat;
  const double root = std::sqrt(n);
  r.ks_p = kolmogorov_q((root + 0.12 + 0.11 / root) * d_stat);
  return r;
}

void write_comment_lines(std::ostream& os, std::string_view comment) {
  std::size_t start = 0;
  while (start < comment.size()) {
    std::size_t end = comment.find('\n', start);
    if (end == std::string_view::npos) end = comment.size();
    os << "# ";
    os.write(comment.data() + start, std::streamsize(end - start));
    os << '\n';
    start = end + 1;
  }
}

struct CsvNumber {
  char buf[32];
  explicit CsvNumber(double v) { std::snprintf(buf, sizeof buf, "%.17g", v); }
};

std::ostream& operator<<(std::ostream& os, const CsvNumber& v) { return os << v.buf; }

}  // namespace

TestFunction test_function(std::string id, std::function<double(Vec2)> eval,
                           double derivative_bound) {
  TestFunction f;
  f.id = std::move(id);
  f.eval = std::move(eval);
  f.smoothness = SmoothnessClass::kC4;
  f.derivative_bound = derivative_bound;
  return f;
}

TestFunction bump_test_function(Vec2 center, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("bump_test_function: eps must be positive");
  TestFunction f;
  char name[96];
  std::snprintf(name, sizeof name, "bump_%g_%g_e%g", center.x, center.y, eps);
  f.id = name;
  f.eval = [center, eps](Vec2 p) { return bump_ball(p, center, eps); };
  f.smoothness = SmoothnessClass::kC4Compact;
  f.support = DiskSupport{center, eps};
  // Coarse sup of the fourth derivatives: profile curvature ~ eps^-4 on top of
  // the unit-integral normalization 6 / (pi eps^2).
  f.derivative_bound = 2400.0 / (kPi * std::pow(eps, 6.0));
  return f;
}

ScalarField error_field(const GrowthHistory& idla, const SandpileState& sandpile) {
  if (idla.m != sandpile.m)
    throw std::invalid_argument("error_field: resolutions differ");
  if (std::int64_t(idla.arrivals.size()) < sandpile.step)
    throw std::invalid_argument("error_field: growth run is behind the relaxed profile");
  const int m = sandpile.m;
  ScalarField field;
  field.kind = ScalarField::Kind::kError;
  field.m = m;
  field.step = sandpile.step;
  field.s = double(sandpile.step) / (double(m) * double(m));
  field.values.reserve(sandpile.mass.size() / 4);

  std::unordered_set<std::uint64_t> cluster;
  cluster.reserve(idla.initial_set.size() + std::size_t(sandpile.step));
  auto add_site = [&](LatticePoint z) {
    cluster.insert(pack(z));
    const double v = double(m) * (1.0 - sandpile.mass.get_or(z, 0.0));
    if (std::abs(v) > kFieldStoreThreshold) field.values[pack(z)] = v;
  };
  for (LatticePoint z : idla.initial_set) add_site(z);
  for (std::int64_t k = 0; k < sandpile.step; ++k) add_site(idla.arrivals[std::size_t(k)]);

  for (std::size_t i = 0; i < sandpile.mass.size(); ++i) {
    const double nu = sandpile.mass.data()[i];
    if (nu == 0.0) continue;
    const LatticePoint z = sandpile.mass.point_at(i);
    if (cluster.count(pack(z))) continue;
    const double v = -double(m) * nu;
    if (std::abs(v) > kFieldStoreThreshold) field.values[pack(z)] = v;
  }
  return field;
}

ScalarField lateness_field(const GrowthHistory& idla, const SandpileState& sandpile) {
  if (idla.m != sandpile.m)
    throw std::invalid_argument("lateness_field: resolutions differ");
  if (std::int64_t(idla.arrivals.size()) < sandpile.step)
    throw std::invalid_argument("lateness_field: growth run is behind the relaxed profile");
  if (!sandpile.has_increments)
    throw std::invalid_argument(
        "lateness_field: increment accumulator is incomplete; relax incrementally");
  const int m = sandpile.m;
  ScalarField field;
  field.kind = ScalarField::Kind::kLateness;
  field.m = m;
  field.step = sandpile.step;
  field.s = double(sandpile.step) / (double(m) * double(m));

  for (std::int64_t k = 0; k < sandpile.step; ++k)
    field.values[pack(idla.arrivals[std::size_t(k)])] = double(k + 1) / double(m);
  for (std::size_t i = 0; i < sandpile.increment_accumulator.size(); ++i) {
    const double w = sandpile.increment_accumulator.data()[i];
    if (w == 0.0) continue;
    field.values[pack(sandpile.increment_accumulator.point_at(i))] -= w / double(m);
  }
  for (auto it = field.values.begin(); it != field.values.end();)
    it = std::abs(it->second) > kFieldStoreThreshold ? std::next(it) : field.values.erase(it);
  return field;
}

double inner_product(const ScalarField& field, const TestFunction& u) {
  double sum = 0.0, comp = 0.0;
  for (const auto& [key, v] : field.values)
    kahan_add(sum, comp, v * u(to_plane(unpack(key), field.m)));
  return sum / (double(field.m) * double(field.m));
}

NormalityReport normality_report(std::span<const double> samples) {
  if (samples.size() < 100)
    throw std::invalid_argument("normality_report: needs at least 100 samples");
  return describe(samples);
}

double bootstrap_variance_se(std::span<const double> samples, int resamples,
                             std::uint64_t seed) {
  const std::size_t n = samples.size();
  if (n < 2) throw std::invalid_argument("bootstrap_variance_se: needs at least 2 samples");
  if (resamples < 2)
    throw std::invalid_argument("bootstrap_variance_se: needs at least 2 resamples");
  CounterStream rng(seed);
  double mean_var = 0.0, m2_var = 0.0;
  for (int b = 0; b < resamples; ++b) {
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = samples[rng.next_below(n)];
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / double(n);
    const double var = std::max(0.0, (sumsq - double(n) * mean * mean) / double(n - 1));
    const double delta = var - mean_var;
    mean_var += delta / double(b + 1);
    m2_var += delta * (var - mean_var);
  }
  return std::sqrt(m2_var / double(resamples - 1));
}

EnsembleResult run_ensemble(const MassDistribution& md, const EnsembleConfig& config,
                            std::span<const TestFunction> functions,
                            std::span<const std::uint64_t> seeds) {
  if (config.m < 2) throw std::invalid_argument("run_ensemble: m must be at least 2");
  if (!(config.s > 0.0) || config.s > md.total_horizon() + 1e-9)
    throw std::invalid_argument("run_ensemble: s must lie in (0, total horizon]");
  if (seeds.size() < 2) throw std::invalid_argument("run_ensemble: needs at least 2 seeds");
  if (config.workers < 1) throw std::invalid_argument("run_ensemble: workers must be positive");
  if (config.band_epsilon && (!md.is_disk_preset() || !(*config.band_epsilon > 0.0)))
    throw std::invalid_argument(
        "run_ensemble: band tracking needs the disk preset and a positive width");

  const int m = config.m;
  const auto initial = lattice_points(md.initial_domain(), m);
  const auto seq = build_source_sequence(md, m, md.total_horizon());
  const std::int64_t n = std::min<std::int64_t>(
      std::int64_t(seq.size()),
      std::int64_t(std::floor(double(m) * double(m) * config.s)));

  SandpileOptions sopt;
  sopt.tolerance = config.sandpile_tolerance;
  sopt.incremental = config.with_lateness;
  sopt.direct_solver = config.direct_solver;
  const SandpileState profile = run_sandpile(initial, seq, m, n, sopt);
  const double total_mass = profile.total_mass();

  // Profile-side sums, shared by every seed.
  const std::size_t nf = functions.size();
  std::vector<double> nu_dot(nf, 0.0), acc_dot(nf, 0.0), init_u(nf, 0.0);
  for (std::size_t f = 0; f < nf; ++f) {
    double comp = 0.0;
    for (std::size_t i = 0; i < profile.mass.size(); ++i) {
      const double nu = profile.mass.data()[i];
      if (nu != 0.0)
        kahan_add(nu_dot[f], comp, nu * functions[f](to_plane(profile.mass.point_at(i), m)));
    }
    if (config.with_lateness) {
      double compw = 0.0;
      for (std::size_t i = 0; i < profile.increment_accumulator.size(); ++i) {
        const double w = profile.increment_accumulator.data()[i];
        if (w != 0.0)
          kahan_add(acc_dot[f], compw,
                    w * functions[f](to_plane(profile.increment_accumulator.point_at(i), m)));
      }
    }
    double compi = 0.0;
    for (LatticePoint z : initial) kahan_add(init_u[f], compi, functions[f](to_plane(z, m)));
  }

  // Band geometry: the disk preset grows a centered disk, so containment is a
  // radius test against the domain radius at the reached step.
  const bool track_band = config.band_epsilon.has_value();
  const double s_field = double(n) / (double(m) * double(m));
  const double band_radius = std::sqrt(1.0 + s_field / kPi);
  const double band_eps = track_band ? *config.band_epsilon : 0.0;
  const double nu_threshold = kFieldStoreThreshold / double(m);
  auto in_band = [band_radius, band_eps](Vec2 p) {
    return std::abs(norm(p) - band_radius) <= band_eps;
  };
  std::unordered_set<std::uint64_t> initial_packed;
  std::vector<std::uint64_t> required_outside_band;  // profile support that A must cover
  if (track_band) {
    for (LatticePoint z : initial) initial_packed.insert(pack(z));
    for (std::size_t i = 0; i < profile.mass.size(); ++i) {
      if (profile.mass.data()[i] <= nu_threshold) continue;
      const LatticePoint z = profile.mass.point_at(i);
      if (initial_packed.count(pack(z))) continue;
      if (!in_band(to_plane(z, m))) required_outside_band.push_back(pack(z));
    }
  }

  const std::size_t ns = seeds.size();
  std::vector<std::vector<double>> e_rows(ns, std::vector<double>(nf, 0.0));
  std::vector<std::vector<double>> l_rows(
      config.with_lateness ? ns : 0, std::vector<double>(nf, 0.0));
  std::vector<std::uint8_t> kept(ns, 0), contained(ns, 0);

  auto run_block = [&](std::size_t begin, std::size_t end) {
    IdlaEngine engine(initial, m, seq);
    std::vector<double> sum_a(nf), comp_a(nf), sum_l(nf), comp_l(nf);
    std::unordered_set<std::uint64_t> arrived;
    for (std::size_t k = begin; k < end; ++k) {
      std::fill(sum_a.begin(), sum_a.end(), 0.0);
      std::fill(comp_a.begin(), comp_a.end(), 0.0);
      std::fill(sum_l.begin(), sum_l.end(), 0.0);
      std::fill(comp_l.begin(), comp_l.end(), 0.0);
      arrived.clear();
      std::int64_t settles = 0;
      bool in_band_ok = true;
      try {
        engine.run(seeds[k], n, [&](std::int64_t t, LatticePoint a) {
          ++settles;
          const Vec2 p = to_plane(a, m);
          for (std::size_t f = 0; f < nf; ++f) {
            const double u = functions[f](p);
            kahan_add(sum_a[f], comp_a[f], u);
            if (config.with_lateness) kahan_add(sum_l[f], comp_l[f], double(t) * u);
          }
          if (track_band) {
            arrived.insert(pack(a));
            if (in_band_ok && std::abs(1.0 - profile.mass.get_or(a, 0.0)) > nu_threshold &&
                !in_band(p))
              in_band_ok = false;
          }
        });
      } catch (const std::exception&) {
        continue;  // kept[k] stays 0; the seed is reported as failed
      }
      // Conservation guard: the constant-function pairing must vanish.
      const double e_one =
          (double(initial.size()) + double(settles) - total_mass) / double(m);
      if (settles != n || std::abs(e_one) > 1e-9) continue;
      if (track_band && in_band_ok)
        for (std::uint64_t key : required_outside_band)
          if (!arrived.count(key)) {
            in_band_ok = false;
            break;
          }
      for (std::size_t f = 0; f < nf; ++f) {
        e_rows[k][f] = (init_u[f] + sum_a[f] - nu_dot[f]) / double(m);
        if (config.with_lateness)
          l_rows[k][f] =
              (sum_l[f] - acc_dot[f]) / (double(m) * double(m) * double(m));
      }
      kept[k] = 1;
      contained[k] = in_band_ok ? 1 : 0;
    }
  };

  const std::size_t workers = std::min<std::size_t>(std::size_t(config.workers), ns);
  if (workers <= 1) {
    run_block(0, ns);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t quot = ns / workers, rem = ns % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t end = begin + quot + (w < rem ? 1 : 0);
      pool.emplace_back(run_block, begin, end);
      begin = end;
    }
    for (auto& t : pool) t.join();
  }

  EnsembleResult result;
  result.m = m;
  result.s = s_field;
  result.step = n;
  result.function_ids.reserve(nf);
  for (const TestFunction& f : functions) result.function_ids.push_back(f.id);
  result.error_samples.assign(nf, {});
  if (config.with_lateness) result.lateness_samples.assign(nf, {});
  std::size_t n_contained = 0;
  for (std::size_t k = 0; k < ns; ++k) {
    if (!kept[k]) {
      result.failed_seeds.push_back(seeds[k]);
      continue;
    }
    result.seeds.push_back(seeds[k]);
    n_contained += contained[k];
    for (std::size_t f = 0; f < nf; ++f) {
      result.error_samples[f].push_back(e_rows[k][f]);
      if (config.with_lateness) result.lateness_samples[f].push_back(l_rows[k][f]);
    }
  }
  auto summarize = [](const std::string& id, const std::vector<double>& xs) {
    EnsembleStatistics st;
    st.test_function_id = id;
    st.report = describe(xs);
    st.standard_error =
        st.report.count >= 2 ? std::sqrt(st.report.variance / double(st.report.count)) : 0.0;
    return st;
  };
  for (std::size_t f = 0; f < nf; ++f) {
    result.error_stats.push_back(summarize(result.function_ids[f], result.error_samples[f]));
    if (config.with_lateness)
      result.lateness_stats.push_back(
          summarize(result.function_ids[f], result.lateness_samples[f]));
  }
  if (track_band)
    result.band_containment =
        result.seeds.empty() ? 0.0 : double(n_contained) / double(result.seeds.size());
  return result;
}

MartingaleTrace martingale_diagnostics(const GrowthHistory& run, const GridFunction& psi,
                                       std::span<const SourceEntry> sources,
                                       std::int64_t steps,
                                       const std::function<bool(Vec2)>& inside_enlarged) {
  if (steps < 1) throw std::invalid_argument("martingale_diagnostics: needs at least one step");
  if (std::int64_t(run.arrivals.size()) < steps)
    throw std::invalid_argument("martingale_diagnostics: run is shorter than requested");
  if (std::int64_t(sources.size()) < steps)
    throw std::invalid_argument("martingale_diagnostics: source sequence is too short");
  if (psi.m != run.m)
    throw std::invalid_argument("martingale_diagnostics: resolutions differ");

  const double inv_m = 1.0 / double(run.m);
  MartingaleTrace trace;
  trace.martingale.resize(std::size_t(steps));
  trace.increments.resize(std::size_t(steps));
  trace.square_sum.resize(std::size_t(steps));
  trace.compensator.resize(std::size_t(steps));
  trace.residual.resize(std::size_t(steps));
  double msum = 0.0, ssum = 0.0, zsum = 0.0;
  for (std::int64_t t = 1; t <= steps; ++t) {
    if (!trace.stopped) {
      const LatticePoint a = run.arrivals[std::size_t(t - 1)];
      const LatticePoint z = sources[std::size_t(t - 1)].z;
      if (!psi.in_domain(a) || !psi.in_domain(z))
        throw std::invalid_argument(
            "martingale_diagnostics: harmonic solve domain is too small for this run");
      const double pa = psi.value(a), pz = psi.value(z);
      const double x = (pa - pz) * inv_m;
      msum += x;
      ssum += x * x;
      zsum += (pa * pa - pz * pz) * (inv_m * inv_m);
      trace.increments[std::size_t(t - 1)] = x;
      if (!inside_enlarged(to_plane(a, run.m))) {
        trace.stopped = true;
        trace.first_exit_step = t;
      }
    } else {
      trace.increments[std::size_t(t - 1)] = 0.0;
    }
    trace.martingale[std::size_t(t - 1)] = msum;
    trace.square_sum[std::size_t(t - 1)] = ssum;
    trace.compensator[std::size_t(t - 1)] = zsum;
    trace.residual[std::size_t(t - 1)] = ssum - zsum;
  }
  return trace;
}

void write_samples_csv(std::ostream& os, const EnsembleResult& result,
                       std::string_view header_comment) {
  write_comment_lines(os, header_comment);
  os << "seed,m,s,test_function_id,E_inner,L_inner\n";
  const bool with_l = !result.lateness_samples.empty();
  for (std::size_t k = 0; k < result.seeds.size(); ++k)
    for (std::size_t f = 0; f < result.function_ids.size(); ++f) {
      os << result.seeds[k] << ',' << result.m << ',' << CsvNumber(result.s) << ','
         << result.function_ids[f] << ',' << CsvNumber(result.error_samples[f][k]) << ',';
      if (with_l) os << CsvNumber(result.lateness_samples[f][k]);
      os << '\n';
    }
}

void write_statistics_csv(std::ostream& os, std::span<const StatisticsCsvRow> rows,
                          std::string_view header_comment) {
  write_comment_lines(os, header_comment);
  os << "m,s,test_function_id,field,mean,var,se,skew,kurt,ks_stat,ks_p,theory_var,z_score\n";
  for (const StatisticsCsvRow& row : rows) {
    os << row.m << ',' << CsvNumber(row.s) << ',' << row.test_function_id << ','
       << row.field_label << ',' << CsvNumber(row.stats.mean) << ','
       << CsvNumber(row.stats.variance) << ',' << CsvNumber(row.standard_error) << ','
       << CsvNumber(row.stats.skewness) << ',' << CsvNumber(row.stats.excess_kurtosis) << ','
       << CsvNumber(row.stats.ks_stat) << ',' << CsvNumber(row.stats.ks_p) << ','
       << CsvNumber(row.theory_variance) << ',' << CsvNumber(row.z_score) << '\n';
  }
}

}  // namespace latgrow
