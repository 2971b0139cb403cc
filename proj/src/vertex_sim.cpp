#include "vertexlab/vertex_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "vertexlab/errors.hpp"

namespace vertexlab::sim {
namespace {

constexpr double kScanStep = 0.005;
constexpr double kEnvelopeMargin = 1.001;
constexpr double kBetweenNodes = 1.10;
constexpr double kCutoffRatio = 1e-12;

struct Moments {
  double mean = 0.0, var = 0.0, m3 = 0.0, m4 = 0.0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  const double n = static_cast<double>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= n;
  double c2 = 0.0;
  for (double x : v) {
    const double d = x - m.mean;
    c2 += d * d;
    m.m3 += d * d * d;
    m.m4 += d * d * d * d;
  }
  m.var = c2 / (n - 1.0);
  m.m3 /= n;
  m.m4 /= n;
  return m;
}

}  // namespace

void SimConfig::validate() const {
  if (!(window >= 1.0)) throw ConfigError("simulate: window must be >= 1");
  if (!(horizon >= 10.0 * window)) throw ConfigError("simulate: horizon must be at least 10 windows");
  if (replications < 1) throw ConfigError("simulate: replications must be positive");
  if (threads < 0) throw ConfigError("simulate: threads must be non-negative");
}

VertexSampler::VertexSampler(const CoreFnSuite& suite, double state_step)
    : suite_(suite), state_x0_(suite.config().x_min), state_step_(state_step) {
  const double span = suite.config().x_max - suite.config().x_min;
  const auto n = static_cast<std::size_t>(std::llround(span / state_step)) + 1;
  grid_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) grid_.push_back(certify_envelope(state_x0_ + state_step * double(i)));

  double peak = 0.0;
  const auto& fv0 = suite.fv0_table();
  for (std::size_t i = 0; i < fv0.size(); ++i) {
    if (std::fabs(fv0.node(i)) <= kV0Half) peak = std::max(peak, fv0.values()[i]);
  }
  v0_height_ = kEnvelopeMargin * peak;
}

VertexSampler::Envelope VertexSampler::certify_envelope(double y) const {
  auto f = [&](double s) { return suite_.jump_density_s(y, s); };
  double upper = std::sqrt(std::max(0.0, -y) + 12.0);
  std::vector<double> vals;
  for (;;) {
    const auto n = static_cast<std::size_t>(std::ceil(upper / kScanStep));
    vals.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) vals[k] = f(kScanStep * double(k));
    const double top = *std::max_element(vals.begin(), vals.end());
    if (vals.back() < kCutoffRatio * top) break;
    upper *= 1.5;
  }
  const auto peak_it = std::max_element(vals.begin(), vals.end());
  const auto k = static_cast<std::size_t>(std::distance(vals.begin(), peak_it));
  // Golden-section refinement of the maximum around the best grid point.
  double lo = k == 0 ? 0.0 : kScanStep * double(k - 1);
  double hi = kScanStep * double(k + 1);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 60 && hi - lo > 1e-10; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = f(d);
    }
  }
  const double peak = std::max({*peak_it, fc, fd});
  std::size_t last = k;
  for (std::size_t m = k; m < vals.size(); ++m) {
    if (vals[m] >= kCutoffRatio * peak) last = m;
  }
  return {kScanStep * double(last + 1), kEnvelopeMargin * peak};
}

VertexSampler::Envelope VertexSampler::envelope(double y) const {
  const double pos = (y - state_x0_) / state_step_;
  if (pos < 0.0 || pos > double(grid_.size() - 1)) return certify_envelope(y);
  const auto i = std::min(static_cast<std::size_t>(pos), grid_.size() - 2);
  const Envelope& a = grid_[i];
  const Envelope& b = grid_[i + 1];
  return {std::max(a.s_max, b.s_max), kBetweenNodes * std::max(a.height, b.height)};
}

double VertexSampler::sample_v0(Rng& rng) const {
  for (;;) {
    const double x = rng.uniform(-kV0Half, kV0Half);
    const double f = suite_.f_v0(x);
    if (f > v0_height_) {
      throw EnvelopeViolation("sample_v0: density " + std::to_string(f) + " above envelope at x = " +
                              std::to_string(x));
    }
    if (rng.uniform() * v0_height_ < f) return x;
  }
}

double VertexSampler::sample_waiting_time(Rng& rng, double y, bool* extended) const {
  const double start = suite_.Phi(y);
  for (;;) {
    const double w = rng.exponential();
    bool ext = false;
    const double u = y - suite_.Phi_inverse(start - w, &ext);
    if (u > 0.0) {
      if (extended) *extended = ext;
      return u;
    }
  }
}

double VertexSampler::sample_jump(Rng& rng, double y) const {
  const Envelope env = envelope(y);
  for (int tries = 0; tries < 1000000; ++tries) {
    const double s = env.s_max * rng.uniform();
    if (s == 0.0) continue;
    const double f = suite_.jump_density_s(y, s);
    if (f > env.height) {
      throw EnvelopeViolation("sample_jump: density " + std::to_string(f) + " above envelope " +
                              std::to_string(env.height) + " at state " + std::to_string(y) +
                              ", s = " + std::to_string(s));
    }
    if (rng.uniform() * env.height < f) return s * s;
  }
  throw NumericalError("sample_jump: no acceptance in 1e6 proposals at state " + std::to_string(y));
}

VertexPath simulate_path(const VertexSampler& sampler, double horizon, Rng& rng) {
  VertexPath path;
  try {
    path.v0 = sampler.sample_v0(rng);
    double a = 0.0;
    double v = path.v0;
    for (;;) {
      bool extended = false;
      const double wait = sampler.sample_waiting_time(rng, v - a, &extended);
      a += wait;
      if (a > horizon) break;
      if (extended) ++path.extended_waits;
      v += sampler.sample_jump(rng, v - a);
      path.events.push_back({a, v});
    }
  } catch (const EnvelopeViolation& e) {
    throw EnvelopeViolation(std::string(e.what()) + " (after " + std::to_string(path.events.size()) +
                            " events, v0 = " + std::to_string(path.v0) + ")");
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " (after " + std::to_string(path.events.size()) +
                         " events, v0 = " + std::to_string(path.v0) + ")");
  }
  return path;
}

std::vector<int> window_counts(const VertexPath& path, double horizon, double window) {
  const auto n = static_cast<std::size_t>(std::floor(horizon / window + 1e-9));
  std::vector<int> counts(n, 0);
  for (const auto& e : path.events) {
    const auto k = static_cast<std::size_t>(std::floor(e.a / window));
    if (k < n) ++counts[k];
  }
  return counts;
}

CountStats estimate_rates(const VertexSampler& sampler, const SimConfig& config) {
  config.validate();
  const auto reps = static_cast<std::size_t>(config.replications);
  std::vector<std::vector<int>> per_rep(reps);
  std::vector<int> extended(reps, 0);
  std::vector<std::exception_ptr> errors(reps);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        Rng rng(config.seed, r);
        const VertexPath path = simulate_path(sampler, config.horizon, rng);
        per_rep[r] = window_counts(path, config.horizon, config.window);
        extended[r] = path.extended_waits;
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  unsigned n_threads = config.threads > 0 ? unsigned(config.threads) : std::thread::hardware_concurrency();
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

  CountStats stats;
  stats.window = config.window;
  for (std::size_t r = 0; r < reps; ++r) {
    stats.window_counts.insert(stats.window_counts.end(), per_rep[r].begin(), per_rep[r].end());
    stats.extended_waits += extended[r];
  }
  const std::vector<double> c(stats.window_counts.begin(), stats.window_counts.end());
  if (c.size() < 2) throw ConfigError("simulate: need at least two windows");
  const Moments m = moments(c);
  const double n = static_cast<double>(c.size());
  const double w = config.window;
  stats.mean_rate = m.mean / w;
  stats.var_rate = m.var / w;
  stats.mean_rate_se = std::sqrt(m.var / n) / w;
  const double biased_var = m.var * (n - 1.0) / n;
  stats.var_rate_se = std::sqrt(std::max(0.0, m.m4 - biased_var * biased_var) / n) / w;
  stats.skewness = m.m3 / std::pow(biased_var, 1.5);
  stats.excess_kurtosis = m.m4 / (biased_var * biased_var) - 3.0;
  return stats;
}

CltReport clt_check(const CountStats& stats, double k1, double k2) {
  const double w = stats.window;
  std::vector<double> z;
  z.reserve(stats.window_counts.size());
  for (int c : stats.window_counts) z.push_back((c - k1 * w) / std::sqrt(k2 * w));
  if (z.size() < 2) throw ConfigError("clt_check: need at least two windows");
  const Moments m = moments(z);
  const double n = static_cast<double>(z.size());
  const double biased_var = m.var * (n - 1.0) / n;
  CltReport r;
  r.windows = z.size();
  r.mean = m.mean;
  r.variance = m.var;
  r.skewness = m.m3 / std::pow(biased_var, 1.5);
  r.excess_kurtosis = m.m4 / (biased_var * biased_var) - 3.0;
  std::sort(z.begin(), z.end());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
    r.ks_distance = std::max({r.ks_distance, std::fabs(double(i + 1) / n - cdf), std::fabs(double(i) / n - cdf)});
  }
  return r;
}

}  // namespace vertexlab::sim
