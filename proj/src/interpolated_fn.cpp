#include "vertexlab/interpolated_fn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vertexlab/errors.hpp"

namespace vertexlab {

InterpolatedFn::InterpolatedFn(double x0, double dx, std::vector<double> values)
    : x0_(x0), dx_(dx), values_(std::move(values)) {
  if (!(dx_ > 0.0)) throw ConfigError("InterpolatedFn: grid step must be positive");
  if (values_.size() < 2) throw ConfigError("InterpolatedFn: need at least two nodes");
}

bool InterpolatedFn::contains(double x) const {
  const double slack = 1e-9 * dx_;
  return x >= x0_ - slack && x <= x_end() + slack;
}

double InterpolatedFn::operator()(double x) const {
  if (!contains(x)) {
    throw DomainError("InterpolatedFn: x = " + std::to_string(x) + " outside [" +
                      std::to_string(x0_) + ", " + std::to_string(x_end()) + "]");
  }
  const double pos = (x - x0_) / dx_;
  const auto last = static_cast<std::ptrdiff_t>(values_.size()) - 2;
  const auto i = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor(pos)), 0, last);
  const double t = pos - static_cast<double>(i);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

double InterpolatedFn::cubic(double x) const {
  if (!contains(x)) {
    throw DomainError("InterpolatedFn: x = " + std::to_string(x) + " outside the grid");
  }
  if (values_.size() < 4) return (*this)(x);
  const double pos = (x - x0_) / dx_;
  const auto n = static_cast<std::ptrdiff_t>(values_.size());
  const auto base = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(std::floor(pos)) - 1, 0, n - 4);
  const double t = pos - static_cast<double>(base);  // nodes at t = 0, 1, 2, 3
  const double f0 = values_[base];
  const double f1 = values_[base + 1];
  const double f2 = values_[base + 2];
  const double f3 = values_[base + 3];
  const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
  const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
  const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
  const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
  return f0 * l0 + f1 * l1 + f2 * l2 + f3 * l3;
}

}  // namespace vertexlab
