#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vertexlab/special_fns.hpp"

namespace vertexlab::checks {

/// |Ai''(z) - z Ai(z)| relative to |z Ai| + |Ai| + |Ai'|, with Ai'' from a
/// fourth-order central difference of Ai' (step 1e-3).
double airy_ode_residual(Complex z);

/// Composite Simpson over the table nodes of w(x, value); falls back to the
/// trapezoid rule on an odd node count.
double table_integral(const InterpolatedFn& table, const std::function<double(double, double)>& w);

struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Builds a check that passes when |value - target| <= tolerance.
Check near(std::string name, double value, double target, double tolerance);

/// The invariant suite behind `selftest`: Airy values and ODE residual,
/// representation seams, the u2/g identity, normalizations, route agreement of
/// k1, Fourier checks and the hull oracle. `quick` trims the hull sample count.
std::vector<Check> invariant_suite(const CoreFnSuite& suite, bool quick);

}  // namespace vertexlab::checks
