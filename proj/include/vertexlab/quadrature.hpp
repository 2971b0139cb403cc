#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace vertexlab::quad {

/// Quadrature value with an a-posteriori error estimate.
template <typename T>
struct Estimate {
  T value{};
  double error = 0.0;
};

using Result = Estimate<double>;
using ComplexResult = Estimate<std::complex<double>>;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule; cached per n, safe to call concurrently.
const GaussLegendre& gauss_legendre(int n);

/// A fixed composite rule: concatenated nodes and weights over all panels.
struct PanelRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Composite rule with `order` points on each interval [breaks[i], breaks[i+1]].
PanelRule make_panel_rule(std::span<const double> breaks, int order);

/// Same breakpoints with every panel bisected; paired with make_panel_rule it
/// gives the coarse/fine estimate used throughout.
PanelRule make_bisected_rule(std::span<const double> breaks, int order);

/// Breakpoints a, a+h, ..., b with the last panel absorbing round-off.
std::vector<double> uniform_breaks(double a, double b, double width);

/// Apply a fixed rule to values sampled at its nodes.
template <typename T>
T apply(const PanelRule& rule, std::span<const T> values) {
  T sum{};
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * values[i];
  return sum;
}

/// Coarse/fine composite Gauss-Legendre on fixed breakpoints.
template <typename T, typename F>
Estimate<T> integrate_panels(F&& f, std::span<const double> breaks, int order = 16) {
  const PanelRule coarse = make_panel_rule(breaks, order);
  const PanelRule fine = make_bisected_rule(breaks, order);
  T c{};
  for (std::size_t i = 0; i < coarse.size(); ++i) c += coarse.weights[i] * f(coarse.nodes[i]);
  T v{};
  for (std::size_t i = 0; i < fine.size(); ++i) v += fine.weights[i] * f(fine.nodes[i]);
  return {v, std::abs(v - c)};
}

/// Globally adaptive Gauss-Legendre: a panel is accepted when its value agrees
/// with the sum over its two halves to within its share of the tolerance.
template <typename T, typename F>
Estimate<T> integrate_adaptive(F&& f, double a, double b, double abs_tol, double rel_tol = 1e-13,
                               int order = 12, int max_depth = 40) {
  const GaussLegendre& gl = gauss_legendre(order);
  auto panel = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    T s{};
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * f(mid + half * gl.nodes[i]);
    return T(s * half);
  };
  struct Work {
    double lo, hi;
    T whole;
    int depth;
  };
  Estimate<T> out;
  std::vector<Work> stack{{a, b, panel(a, b), 0}};
  const double total_width = std::fabs(b - a);
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (w.lo + w.hi);
    const T left = panel(w.lo, mid);
    const T right = panel(mid, w.hi);
    const T both = left + right;
    const double err = std::abs(both - w.whole);
    const double share = std::fabs(w.hi - w.lo) / total_width;
    const double tol = std::max(abs_tol * share, rel_tol * std::abs(both));
    if (err <= tol || w.depth >= max_depth) {
      out.value += both;
      out.error += err;
    } else {
      stack.push_back({w.lo, mid, left, w.depth + 1});
      stack.push_back({mid, w.hi, right, w.depth + 1});
    }
  }
  return out;
}

}  // namespace vertexlab::quad
