// gauss.hpp — Gauss-Legendre rules and composite panel quadrature.
#pragma once

#include <functional>
#include <vector>

namespace latgrow {

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;  // weights summing to 2
};

// Nodes and weights of the n-point Gauss-Legendre rule, computed once per n by
// Newton iteration on the Legendre recurrence (machine accurate) and cached.
const GaussRule& gauss_legendre(int n);

struct PanelRule {
  std::vector<double> x;  // nodes in the panel union
  std::vector<double> w;  // matching weights
};

// Composite rule: n-point Gauss-Legendre on each interval [breaks[k], breaks[k+1]].
PanelRule panel_rule(const std::vector<double>& breaks, int n);

double integrate_panels(const std::function<double(double)>& f,
                        const std::vector<double>& breaks, int n);

}  // namespace latgrow
