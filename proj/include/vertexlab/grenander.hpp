#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vertexlab/rng.hpp"

namespace vertexlab::grenander {

/// A strictly decreasing density on [0, support_end) (support_end may be +inf).
struct DecreasingDensity {
  std::string name;
  std::function<double(double)> pdf;
  std::function<double(double)> pdf_deriv;
  double support_end = 0.0;
  std::function<double(double)> inverse_cdf;
};

/// f(x) = 2(1 - x) on [0, 1]
DecreasingDensity triangular();
/// f(x) = exp(-x) on [0, inf)
DecreasingDensity exponential();
/// Lookup by name ("triangular", "exponential"); ConfigError otherwise.
DecreasingDensity model_by_name(const std::string& name);

struct Vertex {
  double x = 0.0;
  double y = 0.0;
};

struct ConcaveMajorant {
  std::vector<Vertex> vertices;

  /// Piecewise-linear value at x in [0, last vertex].
  double operator()(double x) const;
  std::size_t segments() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// n inverse-cdf draws, sorted ascending.
std::vector<double> sample_sorted(const DecreasingDensity& model, int n, Rng& rng);

/// Sign of the turn o -> a -> b for points with ordinates given as counts
/// (y = count / n). Positive for a left turn, 0 when collinear up to rounding.
int orientation(double ox, double oc, double ax, double ac, double bx, double bc);

/// Upper hull of (0, 0) and (x_(i), i/n) by monotone chain; collinear points
/// are dropped and repeated abscissas keep the largest ordinate.
ConcaveMajorant lcm_empirical(std::span<const double> sorted_sample);

/// Segments of the majorant, i.e. vertices - 1.
int grenander_jump_count(std::span<const double> sorted_sample);

/// int |f'(x)^2 / (4 f(x))|^{1/3} dx over the support. Throws DomainError if
/// f' is not strictly negative on the support.
double theory_coefficient(const DecreasingDensity& model);

/// Local scaling constants at level a in the range of f:
/// c1 = {4a |f'(g(a))|}^{1/3}, c2 = {f'(g(a))^2 / (4a)}^{1/3}, g = f^{-1}.
double local_scale_c1(const DecreasingDensity& model, double a);
double local_scale_c2(const DecreasingDensity& model, double a);

struct JumpStudyResult {
  std::string model;
  int n = 0;
  int reps = 0;
  std::vector<int> counts;
  double mean_coeff = 0.0;
  double mean_se = 0.0;
  double var_coeff = 0.0;
  double var_se = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

/// `reps` samples of size n; replication r draws from stream r of `seed`.
JumpStudyResult mc_jump_study(const DecreasingDensity& model, int n, int reps, std::uint64_t seed,
                              int threads = 0);

}  // namespace vertexlab::grenander
