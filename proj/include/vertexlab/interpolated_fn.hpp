#pragma once

#include <cstddef>
#include <vector>

namespace vertexlab {

/// Values on the uniform grid x0, x0 + dx, ..., evaluated by linear
/// interpolation (or 4-point Lagrange via `cubic`). Evaluation outside the
/// grid throws DomainError.
class InterpolatedFn {
 public:
  InterpolatedFn() = default;
  InterpolatedFn(double x0, double dx, std::vector<double> values);

  double operator()(double x) const;
  double cubic(double x) const;

  double x0() const { return x0_; }
  double dx() const { return dx_; }
  double x_end() const { return x0_ + dx_ * static_cast<double>(values_.size() - 1); }
  std::size_t size() const { return values_.size(); }
  double node(std::size_t i) const { return x0_ + dx_ * static_cast<double>(i); }
  const std::vector<double>& values() const { return values_; }
  bool contains(double x) const;

 private:
  double x0_ = 0.0;
  double dx_ = 1.0;
  std::vector<double> values_;
};

}  // namespace vertexlab
