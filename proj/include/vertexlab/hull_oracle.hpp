#pragma once

#include <span>
#include <vector>

#include "vertexlab/grenander.hpp"

namespace vertexlab::grenander {

/// Exhaustive O(n^3) upper hull of (0, 0) and (x_(i), i/n): a point is a vertex
/// unless it lies on or below the chord of some pair straddling it. Used only
/// to cross-check lcm_empirical.
inline std::vector<Vertex> brute_force_upper_hull(std::span<const double> sorted_sample) {
  const std::size_t n = sorted_sample.size();
  std::vector<double> xs{0.0};
  std::vector<double> cs{0.0};
  for (std::size_t i = 0; i < n; ++i) {
    if (xs.back() == sorted_sample[i]) {
      cs.back() = double(i + 1);
    } else {
      xs.push_back(sorted_sample[i]);
      cs.push_back(double(i + 1));
    }
  }
  const std::size_t m = xs.size();
  std::vector<Vertex> out;
  for (std::size_t j = 0; j < m; ++j) {
    bool vertex = true;
    for (std::size_t i = 0; i < j && vertex; ++i) {
      for (std::size_t k = j + 1; k < m; ++k) {
        // j on or below chord i-k  <=>  turn i -> j -> k is not clockwise
        if (orientation(xs[i], cs[i], xs[j], cs[j], xs[k], cs[k]) >= 0) {
          vertex = false;
          break;
        }
      }
    }
    if (vertex) out.push_back({xs[j], cs[j] / double(n)});
  }
  return out;
}

}  // namespace vertexlab::grenander
