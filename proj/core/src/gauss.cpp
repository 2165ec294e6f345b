// gauss.cpp — Gauss-Legendre node computation with process-wide cache.
#include "latgrow/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace latgrow {

namespace {

GaussRule compute_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const double pi = 3.14159265358979323846;
  for (int k = 0; k < (n + 1) / 2; ++k) {
    // Tricomi initial guess for the k-th positive root, then Newton.
    double x = std::cos(pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // One final refresh of dp at the converged node.
        p0 = 1.0;
        p1 = x;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.x[k] = -x;  // ascending order: negative roots first
    rule.w[k] = w;
    rule.x[n - 1 - k] = x;
    rule.w[n - 1 - k] = w;
  }
  if (n % 2 == 1) {
    // Center node of odd rules is exactly zero.
    rule.x[n / 2] = 0.0;
  }
  return rule;
}

std::map<int, GaussRule>& cache() {
  static std::map<int, GaussRule> c;
  return c;
}
std::mutex cache_mutex;

}  // namespace

const GaussRule& gauss_legendre(int n) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache().find(n);
  if (it == cache().end()) it = cache().emplace(n, compute_rule(n)).first;
  return it->second;
}

PanelRule panel_rule(const std::vector<double>& breaks, int n) {
  if (breaks.size() < 2) throw std::invalid_argument("panel_rule: need at least one panel");
  const GaussRule& g = gauss_legendre(n);
  PanelRule out;
  out.x.reserve((breaks.size() - 1) * std::size_t(n));
  out.w.reserve((breaks.size() - 1) * std::size_t(n));
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    if (half <= 0.0) continue;  // skip empty or inverted panels
    for (int i = 0; i < n; ++i) {
      out.x.push_back(mid + half * g.x[i]);
      out.w.push_back(half * g.w[i]);
    }
  }
  return out;
}

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breaks, int n) {
  PanelRule r = panel_rule(breaks, n);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) sum += r.w[i] * f(r.x[i]);
  return sum;
}

}  // namespace latgrow
