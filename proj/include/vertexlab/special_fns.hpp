#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vertexlab/airy.hpp"
#include "vertexlab/interpolated_fn.hpp"
#include "vertexlab/quadrature.hpp"

namespace vertexlab {

/// Coefficients of the small-argument expansion of p-tilde. Index-aligned:
/// c[n], a[n] for n = 0..N and b[n] for n = 1..N (b[0] is unused and zero).
struct TildePCoeffs {
  std::vector<double> c;
  std::vector<double> a;
  std::vector<double> b;

  int order() const { return static_cast<int>(a.size()) - 1; }
};

/// c_n by the ratio recursion, a_n and b_n by the Beta-function convolutions
/// (Beta through log-Gamma). Throws NumericalError on a non-finite coefficient.
TildePCoeffs tilde_p_coeffs(int n_max);

/// The transition kernel p(u) = 2 sum_n exp(2^{1/3} a_n u) and its regular
/// parts. Switches from the p-tilde series to the zero sum at `t_switch`.
class PFunction {
 public:
  static constexpr double kDefaultSwitch = 1.0;

  PFunction(TildePCoeffs coeffs, airy::AiryZeroTable zeros, double t_switch = kDefaultSwitch);

  /// Series value for 0 < t <= t_switch; terms are summed until the next one
  /// drops below 1e-17 in magnitude.
  double tilde_p(double t) const;
  /// p-tilde for any t > 0 (series below the switch, zero sum above).
  double tilde_p_any(double t) const;

  double p(double u) const;
  /// p(u) - (2 pi u^3)^{-1/2}
  double p0(double u) const;
  double p_from_series(double u) const;
  double p_from_zero_sum(double u) const;

  /// 4 s^3 p(s^2): the jump kernel u p(u) after the substitution u = s^2,
  /// including the Jacobian. Bounded, equal to 4/sqrt(2 pi) at s = 0.
  double sqrt_kernel(double s) const;

  const TildePCoeffs& coeffs() const { return coeffs_; }
  const airy::AiryZeroTable& zeros() const { return zeros_; }
  double t_switch() const { return t_switch_; }

 private:
  TildePCoeffs coeffs_;
  airy::AiryZeroTable zeros_;
  double t_switch_;
};

/// g and u2 through their independent representations.
class GFunction {
 public:
  explicit GFunction(PFunction p);

  /// Oscillatory Fourier inversion of 2^{1/3}/Ai(i 2^{-1/3} u). Absolute
  /// accuracy around 1e-14; throws AccuracyError if the tail bound at the
  /// truncation point exceeds 1e-10.
  quad::Result g_fourier(double x) const;
  /// 4^{1/3} sum_n exp(2^{1/3} a_n |x|) / Ai'(a_n), for x < 0.
  double g_series(double x) const;

  /// Integral representation of u2, intended for x >= -1.
  quad::Result u2_integral(double x) const;
  /// Zero-sum representation of u2, intended for x <= -1.
  double u2_series(double x) const;
  /// Branch selection at x = -1. Within `kSeamHalfWidth` of the seam both
  /// branches are evaluated and must agree to 1e-6 relative (AccuracyError).
  double u2(double x) const;

  /// log g using whichever representation keeps relative accuracy at x:
  /// the zero sum for x <= -1, Fourier inversion up to kFourierUpper, and
  /// exp(-(2/3) x^3) u2(x) beyond.
  double log_g_accurate(double x) const;

  /// Truncation point of the Fourier integral in the variable u.
  double fourier_cutoff() const { return cutoff_u_; }
  /// Bound on the discarded tail of the Fourier integral.
  double fourier_tail_bound() const { return tail_bound_; }

  const PFunction& p() const { return p_; }

  static constexpr double kSeamHalfWidth = 0.05;
  static constexpr double kFourierUpper = 2.0;

 private:
  PFunction p_;
  double cutoff_u_ = 0.0;
  double tail_bound_ = 0.0;
  quad::PanelRule coarse_;
  quad::PanelRule fine_;
  std::vector<Complex> coarse_inv_ai_;
  std::vector<Complex> fine_inv_ai_;
};

struct SuiteConfig {
  double x_min = -8.0;
  double x_max = 8.0;
  double step = 1e-3;
  int zero_count = 200;
  int coeff_order = 40;

  bool operator==(const SuiteConfig&) const = default;
};

/// Tabulated g, phi, Phi and f_{V(0)} on a uniform grid, plus the scalar
/// functions they were built from. Immutable after construction.
class CoreFnSuite {
 public:
  static CoreFnSuite build(const SuiteConfig& config);
  /// Rebuild from stored log g and phi node values (cache path).
  static CoreFnSuite from_tables(const SuiteConfig& config, std::vector<double> log_g,
                                 std::vector<double> phi);

  const SuiteConfig& config() const { return config_; }
  const PFunction& p_fn() const { return g_fn_.p(); }
  const GFunction& g_fn() const { return g_fn_; }
  const TildePCoeffs& coeffs() const { return g_fn_.p().coeffs(); }
  const airy::AiryZeroTable& zeros() const { return g_fn_.p().zeros(); }

  const InterpolatedFn& g_table() const { return g_table_; }
  const InterpolatedFn& log_g_table() const { return log_g_table_; }
  const InterpolatedFn& phi_table() const { return phi_table_; }
  const InterpolatedFn& Phi_table() const { return Phi_table_; }
  const InterpolatedFn& fv0_table() const { return fv0_table_; }

  /// log g anywhere: cubic interpolation on the table, the zero sum left of
  /// it, and the (2/3)x^3 tail right of it.
  double log_g(double x) const;
  double g(double x) const;
  double f_v0(double x) const;
  /// Jump intensity out of state x (table inside the grid, quadrature outside).
  double phi(double x) const;
  /// Cumulative intensity, Phi(0) = 0, with analytic extensions off the grid.
  double Phi(double x) const;
  /// Solves Phi(x) = value for x; sets *extended when the analytic tail was used.
  double Phi_inverse(double value, bool* extended = nullptr) const;
  /// h(x) = int_0^inf g(x+u) u p(u) du = g(x) phi(x) / 2
  double h(double x) const;

  /// Direct quadrature of phi at x in the s = sqrt(u) variable.
  quad::Result phi_quadrature(double x) const;
  /// Largest coarse/fine discrepancy seen while tabulating phi.
  double phi_error_estimate() const { return phi_error_; }

  /// Unnormalized jump density in s = sqrt(u) from state y:
  /// 4 s^3 p(s^2) g(y+s^2)/g(y). Its integral over s > 0 is phi(y).
  double jump_density_s(double y, double s) const;

 private:
  CoreFnSuite(SuiteConfig config, GFunction g_fn);
  void finish_tables(std::vector<double> log_g, std::vector<double> phi);

  SuiteConfig config_;
  GFunction g_fn_;
  quad::PanelRule phi_coarse_;
  quad::PanelRule phi_fine_;
  std::vector<double> phi_coarse_kernel_;
  std::vector<double> phi_fine_kernel_;
  InterpolatedFn g_table_;
  InterpolatedFn log_g_table_;
  InterpolatedFn phi_table_;
  InterpolatedFn Phi_table_;
  InterpolatedFn fv0_table_;
  double phi_error_ = 0.0;
  double left_cubic_coeff_ = 0.0;
};

/// Characteristic function of V(0) by quadrature of
/// (1/2pi) int du / (Ai(iu) Ai(i(u + 2^{-1/3} t))), |t| <= 20.
quad::ComplexResult charfn_v0(double t);

/// Closed Airy forms of the Fourier transforms of p1(x) = x p(x) 1{x>0} and of h.
Complex p1_hat_closed(double u);
Complex h_hat_closed(double u);

struct FourierCheckRow {
  double u = 0.0;
  Complex p1_direct;
  Complex p1_closed;
  Complex h_direct;
  Complex h_closed;
};

struct FourierCheckReport {
  std::vector<FourierCheckRow> rows;
  double max_p1_deviation = 0.0;
  double max_h_deviation = 0.0;
};

/// Direct numerical transforms against the closed forms on a grid, |u| <= 10.
FourierCheckReport fourier_checks(const CoreFnSuite& suite, std::span<const double> u_grid);

/// CSV `x,value` with 17 significant digits, LF endings.
void write_table_csv(std::ostream& out, std::span<const double> xs, std::span<const double> values);

}  // namespace vertexlab
