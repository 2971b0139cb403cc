#pragma once

#include <string>
#include <vector>

#include "vertexlab/special_fns.hpp"

namespace vertexlab::constants {

inline constexpr double kK1Reference = 2.10848;
inline constexpr double kK2Default = 1.029;

struct Value {
  double value = 0.0;
  double error = 0.0;
  /// Imaginary part left over by quadrature of a real-valued complex integral.
  double imag_residue = 0.0;
};

/// -(2^{5/3}/6pi) int iu / Ai(2^{-1/3} iu)^2 du over symmetric nodes.
Value k1_airy();
/// -(2^{-2/3}/6pi) int iu / Ai(iu)^2 du, on its own node set.
Value ev0_sq();
/// (3/8) k1_airy
Value e_max();

/// int g(-x) dx int g(y) (y-x) p(y-x) dy with v = y - x = s^2 on the inner
/// variable. Sets *min_integrand to the smallest integrand value sampled.
Value k1_double_integral(const CoreFnSuite& suite, double* min_integrand = nullptr);

enum class Which { k1, k2 };

/// c^{2/3} times the base constant: k1 from the Airy integral, k2 from `k2_base`.
double k_scaled(double c, Which which, double k2_base = kK2Default);

/// k(a, t) = E{phi(V(0)) | V(a) = t} on a uniform grid, a in [-bound, 0],
/// t in [-(bound + 4), bound]. Row j holds a = -j * step.
struct KernelGrid {
  double bound = 0.0;
  double step = 0.0;
  double t0 = 0.0;
  std::size_t n_t = 0;
  std::size_t n_a = 0;
  std::vector<double> values;

  double t(std::size_t i) const { return t0 + step * static_cast<double>(i); }
  double a(std::size_t j) const { return -step * static_cast<double>(j); }
  double at(std::size_t j, std::size_t i) const { return values[j * n_t + i]; }
};

/// Implicit backward stepping in a with Riemann sums in the jump size.
KernelGrid solve_kernel(const CoreFnSuite& suite, double grid_bound, double step);

struct CovarianceResult {
  double two_int_cov = 0.0;
  double k2_analytic = 0.0;
  double k1_used = 0.0;
  /// Same quantity from the solve at twice the step.
  double two_int_cov_coarse = 0.0;
  double relative_change = 0.0;
  std::string warning;
  std::vector<double> b;
  std::vector<double> cov;
};

/// cov(phi(-V(b)+b), phi(V(0))) for b in [-bound, 0], its doubled integral,
/// and k2 = k1 + 2 int cov. Warns when the step-2h solve differs by more than 5%.
CovarianceResult covariance_kernel(const CoreFnSuite& suite, double grid_bound = 6.0,
                                   double step = 1e-2);

}  // namespace vertexlab::constants
