#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vertexlab/rng.hpp"
#include "vertexlab/special_fns.hpp"

namespace vertexlab::sim {

struct SimConfig {
  double horizon = 2000.0;
  int replications = 100;
  std::uint64_t seed = 20240601;
  double window = 50.0;
  /// Worker threads for replications; 0 means hardware concurrency.
  int threads = 0;

  /// Throws ConfigError unless horizon >= 10 window, window >= 1, replications >= 1.
  void validate() const;
};

struct VertexEvent {
  double a = 0.0;
  double x = 0.0;
};

struct VertexPath {
  double v0 = 0.0;
  std::vector<VertexEvent> events;
  /// Waiting times that needed the analytic extension of Phi beyond the table.
  int extended_waits = 0;
};

struct CountStats {
  double window = 0.0;
  std::vector<int> window_counts;
  double mean_rate = 0.0;
  double var_rate = 0.0;
  double mean_rate_se = 0.0;
  double var_rate_se = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  int extended_waits = 0;
};

struct CltReport {
  std::size_t windows = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  /// Kolmogorov distance between the standardized counts and N(0, 1).
  double ks_distance = 0.0;
};

/// Rejection samplers for V(0), waiting times and jump sizes. Jump envelopes
/// are precomputed on a state grid; construction is the expensive part.
class VertexSampler {
 public:
  explicit VertexSampler(const CoreFnSuite& suite, double state_step = 0.05);

  const CoreFnSuite& suite() const { return suite_; }

  /// Chernoff-distributed V(0) on [-3.5, 3.5] (outside mass below 1e-6 is dropped).
  double sample_v0(Rng& rng) const;
  /// Time to the next jump from state y = V(a) - a. Sets *extended when the
  /// exponential draw ran past the tabulated cumulative hazard.
  double sample_waiting_time(Rng& rng, double y, bool* extended = nullptr) const;
  /// Jump size u > 0 from state y, drawn as s = sqrt(u).
  double sample_jump(Rng& rng, double y) const;

  struct Envelope {
    double s_max = 0.0;
    double height = 0.0;
  };
  /// Envelope used for state y (grid-based inside the table, computed on demand outside).
  Envelope envelope(double y) const;
  /// Envelope computed directly at y: scan for the peak and the 1e-12 cutoff.
  Envelope certify_envelope(double y) const;

  static constexpr double kV0Half = 3.5;

 private:
  const CoreFnSuite& suite_;
  double state_x0_ = 0.0;
  double state_step_ = 0.0;
  std::vector<Envelope> grid_;
  double v0_height_ = 0.0;
};

/// Path from a = 0 to the horizon; failures are rethrown with the prefix length attached.
VertexPath simulate_path(const VertexSampler& sampler, double horizon, Rng& rng);

/// Number of events in each left-closed window [k w, (k+1) w) inside [0, horizon).
std::vector<int> window_counts(const VertexPath& path, double horizon, double window);

/// Runs the seeded replications (stream = replication index) and pools the window counts.
CountStats estimate_rates(const VertexSampler& sampler, const SimConfig& config);

/// Standardizes counts with (N - k1 w) / sqrt(k2 w).
CltReport clt_check(const CountStats& stats, double k1 = 2.10848, double k2 = 1.029);

}  // namespace vertexlab::sim
