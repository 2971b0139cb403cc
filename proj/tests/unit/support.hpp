#pragma once

#include "vertexlab/special_fns.hpp"

namespace vertexlab::testing {

// Default tables, built once per test binary.
inline const CoreFnSuite& default_suite() {
  static const CoreFnSuite suite = CoreFnSuite::build(SuiteConfig{});
  return suite;
}

inline double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace vertexlab::testing
