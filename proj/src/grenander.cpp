#include "vertexlab/grenander.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "vertexlab/errors.hpp"

namespace vertexlab::grenander {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tanh-sinh rule on [0, length]; tolerates integrable endpoint singularities.
template <typename F>
double tanh_sinh(F&& f, double length) {
  const double half_pi = 0.5 * std::numbers::pi;
  auto term = [&](double t) {
    const double v = half_pi * std::sinh(t);
    const double c = std::cosh(v);
    const double w = 0.5 * length * half_pi * std::cosh(t) / (c * c);
    // Distances to both ends without cancellation.
    const double left = length / (1.0 + std::exp(-2.0 * v));
    const double right = length / (1.0 + std::exp(2.0 * v));
    if (!(left > 0.0) || !(right > 0.0)) return 0.0;
    const double x = v < 0.0 ? left : length - right;
    if (!(x > 0.0) || !(x < length)) return 0.0;
    return w * f(x);
  };
  const double t_max = 3.5;
  double h = 0.5;
  double sum = term(0.0);
  for (double t = h; t <= t_max; t += h) sum += term(t) + term(-t);
  double estimate = h * sum;
  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    for (double t = h; t <= t_max; t += 2.0 * h) sum += term(t) + term(-t);
    const double next = h * sum;
    if (level > 2 && std::fabs(next - estimate) < 1e-13 * std::fabs(next)) return next;
    estimate = next;
  }
  return estimate;
}

struct Moments {
  double mean = 0.0, var = 0.0, skew = 0.0, kurt = 0.0, m4 = 0.0;
};

Moments moments(const std::vector<int>& counts) {
  Moments m;
  const double n = static_cast<double>(counts.size());
  for (int c : counts) m.mean += c;
  m.mean /= n;
  double c2 = 0.0, c3 = 0.0, c4 = 0.0;
  for (int c : counts) {
    const double d = c - m.mean;
    c2 += d * d;
    c3 += d * d * d;
    c4 += d * d * d * d;
  }
  m.var = c2 / (n - 1.0);
  const double biased = c2 / n;
  m.m4 = c4 / n;
  m.skew = (c3 / n) / std::pow(biased, 1.5);
  m.kurt = m.m4 / (biased * biased) - 3.0;
  return m;
}

double inverse_pdf(const DecreasingDensity& model, double a) {
  double lo = 0.0;
  double hi = model.support_end;
  if (!(a > 0.0) || a > model.pdf(0.0)) throw DomainError("local scale: level outside the range of f");
  if (std::isinf(hi)) {
    hi = 1.0;
    while (model.pdf(hi) > a) hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (model.pdf(mid) > a ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DecreasingDensity triangular() {
  return {"triangular", [](double x) { return 2.0 * (1.0 - x); }, [](double) { return -2.0; }, 1.0,
          [](double q) { return 1.0 - std::sqrt(1.0 - q); }};
}

DecreasingDensity exponential() {
  return {"exponential", [](double x) { return std::exp(-x); }, [](double x) { return -std::exp(-x); },
          kInf, [](double q) { return -std::log1p(-q); }};
}

DecreasingDensity model_by_name(const std::string& name) {
  if (name == "triangular") return triangular();
  if (name == "exponential") return exponential();
  throw ConfigError("unknown model '" + name + "' (expected triangular or exponential)");
}

double ConcaveMajorant::operator()(double x) const {
  if (vertices.empty() || x < vertices.front().x || x > vertices.back().x) {
    throw DomainError("majorant: x outside the hull");
  }
  auto it = std::upper_bound(vertices.begin(), vertices.end(), x,
                             [](double v, const Vertex& p) { return v < p.x; });
  if (it == vertices.end()) return vertices.back().y;
  const Vertex& b = *it;
  const Vertex& a = *(it - 1);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

std::vector<double> sample_sorted(const DecreasingDensity& model, int n, Rng& rng) {
  if (n < 1) throw ConfigError("sample size must be positive");
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (auto& x : xs) x = model.inverse_cdf(rng.uniform());
  std::sort(xs.begin(), xs.end());
  return xs;
}

int orientation(double ox, double oc, double ax, double ac, double bx, double bc) {
  const double t1 = (ax - ox) * (bc - oc);
  const double t2 = (ac - oc) * (bx - ox);
  const double cross = t1 - t2;
  if (std::fabs(cross) <= 1e-12 * (std::fabs(t1) + std::fabs(t2))) return 0;
  return cross > 0.0 ? 1 : -1;
}

ConcaveMajorant lcm_empirical(std::span<const double> sorted_sample) {
  const auto n = sorted_sample.size();
  if (n == 0) throw ConfigError("lcm_empirical: empty sample");
  struct P {
    double x;
    double c;
  };
  std::vector<P> hull{{0.0, 0.0}};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = sorted_sample[i];
    if (i > 0 && x < sorted_sample[i - 1]) throw ConfigError("lcm_empirical: sample not sorted");
    if (x < 0.0) throw ConfigError("lcm_empirical: negative observation");
    const P b{x, double(i + 1)};
    if (hull.back().x == b.x) hull.pop_back();
    while (hull.size() >= 2) {
      const P& o = hull[hull.size() - 2];
      const P& a = hull.back();
      if (orientation(o.x, o.c, a.x, a.c, b.x, b.c) >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(b);
  }
  ConcaveMajorant m;
  m.vertices.reserve(hull.size());
  for (const auto& p : hull) m.vertices.push_back({p.x, p.c / double(n)});
  return m;
}

int grenander_jump_count(std::span<const double> sorted_sample) {
  return static_cast<int>(lcm_empirical(sorted_sample).segments());
}

double theory_coefficient(const DecreasingDensity& model) {
  const double probe_end = std::isinf(model.support_end) ? 20.0 : model.support_end;
  for (int k = 0; k < 64; ++k) {
    const double x = probe_end * (k + 0.5) / 64.0;
    if (!(model.pdf_deriv(x) < 0.0)) {
      throw DomainError("theory_coefficient: density '" + model.name + "' is not strictly decreasing");
    }
  }
  auto integrand = [&](double x) {
    const double d = model.pdf_deriv(x);
    return std::cbrt(std::fabs(d * d / (4.0 * model.pdf(x))));
  };
  if (!std::isinf(model.support_end)) return tanh_sinh(integrand, model.support_end);

  double upper = 1.0;
  while (integrand(upper) >= 1e-12) upper *= 1.25;
  const double body = tanh_sinh(integrand, upper);
  // Exponential tail beyond the cutoff with the local decay rate.
  const double delta = 1e-3 * upper;
  const double rate = -(std::log(integrand(upper + delta)) - std::log(integrand(upper))) / delta;
  if (!(rate > 0.0)) throw AccuracyError("theory_coefficient: integrand does not decay");
  return body + integrand(upper) / rate;
}

double local_scale_c1(const DecreasingDensity& model, double a) {
  const double d = model.pdf_deriv(inverse_pdf(model, a));
  return std::cbrt(4.0 * a * std::fabs(d));
}

double local_scale_c2(const DecreasingDensity& model, double a) {
  const double d = model.pdf_deriv(inverse_pdf(model, a));
  return std::cbrt(d * d / (4.0 * a));
}

JumpStudyResult mc_jump_study(const DecreasingDensity& model, int n, int reps, std::uint64_t seed,
                              int threads) {
  if (n < 1 || reps < 2) throw ConfigError("grenander: need n >= 1 and reps >= 2");
  JumpStudyResult r;
  r.model = model.name;
  r.n = n;
  r.reps = reps;
  r.counts.assign(static_cast<std::size_t>(reps), 0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(reps));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < reps; k = next++) {
      try {
        Rng rng(seed, static_cast<std::uint64_t>(k));
        const auto xs = sample_sorted(model, n, rng);
        r.counts[std::size_t(k)] = grenander_jump_count(xs);
      } catch (...) {
        errors[std::size_t(k)] = std::current_exception();
      }
    }
  };
  unsigned n_threads = threads > 0 ? unsigned(threads) : std::thread::hardware_concurrency();
  n_threads = std::clamp(n_threads, 1u, unsigned(reps));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  const Moments m = moments(r.counts);
  const double scale = std::cbrt(double(n));
  const double biased = m.var * (reps - 1.0) / reps;
  r.mean_coeff = m.mean / scale;
  r.mean_se = std::sqrt(m.var / reps) / scale;
  r.var_coeff = m.var / scale;
  r.var_se = std::sqrt(std::max(0.0, m.m4 - biased * biased) / reps) / scale;
  r.skewness = m.skew;
  r.excess_kurtosis = m.kurt;
  return r;
}

}  // namespace vertexlab::grenander
