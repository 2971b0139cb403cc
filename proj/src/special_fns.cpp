#include "vertexlab/special_fns.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "vertexlab/errors.hpp"

namespace vertexlab {
namespace {

constexpr double kPi = std::numbers::pi;
const double kCbrt2 = std::cbrt(2.0);
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

double log_beta(double p, double q) { return std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q); }

// Bound on int_V^inf |1/Ai(iv)| dv from the value at V and the asymptotic
// log-derivative -(sqrt(2)/2) sqrt(v) + 1/(4v), which only steepens with v.
double inverse_ai_tail(double v) {
  const double at = 1.0 / std::abs(airy::airy_ai(Complex(0.0, v)));
  const double rate = std::sqrt(0.5) * std::sqrt(v) - 0.25 / v;
  return at / rate;
}

// Smallest panel-aligned cutoff whose tail bound is below `target`.
double choose_inverse_ai_cutoff(double target) {
  double v = 8.0;
  while (inverse_ai_tail(v) > target && v < 40.0) v += 0.5;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// p-tilde coefficients

TildePCoeffs tilde_p_coeffs(int n_max) {
  if (n_max < 1) throw ConfigError("tilde_p_coeffs: n_max must be positive");
  TildePCoeffs k;
  k.c.assign(n_max + 1, 0.0);
  k.a.assign(n_max + 1, 0.0);
  k.b.assign(n_max + 1, 0.0);
  k.c[0] = 1.0;
  k.a[0] = 1.0;
  k.b[1] = 2.0 / 3.0;
  const double log2 = std::log(2.0);
  for (int n = 1; n <= n_max; ++n) {
    k.c[n] = -(1.0 / 16.0) * (2.0 * n - 3.0) * (2.0 * n + 1.0) / (double(n) * n * (2.0 * n - 1.0)) *
             k.c[n - 1];
    if (n >= 2) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        const double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-2)^{j+1}
        const double mag = std::exp(log_beta(3.0 * n - 2.0 * j - 2.0, j + 1.5) -
                                    std::lgamma(j + 1.0) - (j + 1.0) * log2);
        s += sign * mag * k.a[n - j - 1];
      }
      k.b[n] = s;
    }
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;  // (-2)^j
      const double mag = std::exp(log_beta(3.0 * n - 2.0 * j - 0.5, j + 1.5) -
                                  std::lgamma(j + 1.0) - j * log2) / kPi;
      s += sign * mag * k.b[n - j];
    }
    k.a[n] = k.c[n] - s;
    if (!std::isfinite(k.a[n]) || !std::isfinite(k.b[n]) || !std::isfinite(k.c[n])) {
      throw NumericalError("tilde_p_coeffs: non-finite coefficient at n = " + std::to_string(n));
    }
  }
  return k;
}

// ---------------------------------------------------------------------------
// PFunction

PFunction::PFunction(TildePCoeffs coeffs, airy::AiryZeroTable zeros, double t_switch)
    : coeffs_(std::move(coeffs)), zeros_(std::move(zeros)), t_switch_(t_switch) {
  if (zeros_.size() == 0) throw ConfigError("PFunction: empty zero table");
}

double PFunction::tilde_p(double t) const {
  if (!(t > 0.0) || t > t_switch_ * (1.0 + 1e-12)) {
    throw DomainError("tilde_p: t = " + std::to_string(t) + " outside (0, t_switch]");
  }
  const double t3 = t * t * t;
  const double t_half = t * std::sqrt(t);  // t^{3/2}
  const int n = coeffs_.order();
  double sum_a = coeffs_.a[0];
  double sum_b = 0.0;
  double power = 1.0;  // t^{3(k-1)}
  for (int k = 1; k <= n; ++k) {
    const double term_b = coeffs_.b[k] * power * t_half;
    power *= t3;
    const double term_a = coeffs_.a[k] * power;
    sum_a += term_a;
    sum_b += term_b;
    if (std::fabs(term_a) < 1e-17 && std::fabs(term_b) < 1e-17) {
      return -std::sqrt(kPi / 2.0) * sum_a + sum_b;
    }
  }
  throw AccuracyError("tilde_p: series not truncated within " + std::to_string(n) + " terms");
}

double PFunction::tilde_p_any(double t) const {
  if (t <= t_switch_) return tilde_p(t);
  return kSqrt2Pi * std::exp(-t * t * t / 6.0) * p_from_zero_sum(t) - std::pow(t, -1.5);
}

double PFunction::p_from_series(double u) const {
  return std::exp(u * u * u / 6.0) * (tilde_p(u) + std::pow(u, -1.5)) / kSqrt2Pi;
}

double PFunction::p_from_zero_sum(double u) const {
  if (!(u > 0.0)) throw DomainError("p: argument must be positive");
  double sum = 0.0;
  const auto& z = zeros_.zeros();
  for (double zero : z) {
    const double term = 2.0 * std::exp(kCbrt2 * zero * u);
    sum += term;
    if (term < 1e-17 * sum) return sum;
  }
  throw AccuracyError("p: zero sum not converged with " + std::to_string(z.size()) +
                      " zeros at u = " + std::to_string(u));
}

double PFunction::p(double u) const {
  if (!(u > 0.0)) throw DomainError("p: argument must be positive");
  return u >= t_switch_ ? p_from_zero_sum(u) : p_from_series(u);
}

double PFunction::p0(double u) const {
  if (!(u > 0.0)) throw DomainError("p0: argument must be positive");
  if (u >= t_switch_) return p_from_zero_sum(u) - 1.0 / std::sqrt(2.0 * kPi * u * u * u);
  const double e = std::expm1(u * u * u / 6.0);
  return ((e + 1.0) * tilde_p(u) + e * std::pow(u, -1.5)) / kSqrt2Pi;
}

double PFunction::sqrt_kernel(double s) const {
  if (s < 0.0) throw DomainError("sqrt_kernel: s must be non-negative");
  if (s == 0.0) return 4.0 / kSqrt2Pi;
  const double u = s * s;
  if (u < t_switch_) {
    return 4.0 * std::exp(u * u * u / 6.0) * (s * s * s * tilde_p(u) + 1.0) / kSqrt2Pi;
  }
  return 4.0 * s * s * s * p_from_zero_sum(u);
}

// ---------------------------------------------------------------------------
// GFunction

GFunction::GFunction(PFunction p) : p_(std::move(p)) {
  const double cutoff_v = choose_inverse_ai_cutoff(1e-13);
  cutoff_u_ = kCbrt2 * cutoff_v;
  const double prefactor = std::cbrt(4.0) / kPi;
  tail_bound_ = prefactor * inverse_ai_tail(cutoff_v);
  const auto breaks = quad::uniform_breaks(0.0, cutoff_v, 0.5);
  coarse_ = quad::make_panel_rule(breaks, 20);
  fine_ = quad::make_bisected_rule(breaks, 20);
  for (double v : coarse_.nodes) coarse_inv_ai_.push_back(1.0 / airy::airy_ai(Complex(0.0, v)));
  for (double v : fine_.nodes) fine_inv_ai_.push_back(1.0 / airy::airy_ai(Complex(0.0, v)));
}

quad::Result GFunction::g_fourier(double x) const {
  if (tail_bound_ > 1e-10) {
    throw AccuracyError("g: Fourier tail bound " + std::to_string(tail_bound_) + " exceeds 1e-10");
  }
  // g(x) = (2^{2/3}/pi) int_0^V Re(exp(-i 2^{1/3} v x) / Ai(iv)) dv
  const double omega = kCbrt2 * x;
  auto apply = [&](const quad::PanelRule& rule, const std::vector<Complex>& inv) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double ph = omega * rule.nodes[i];
      s += rule.weights[i] * (std::cos(ph) * inv[i].real() + std::sin(ph) * inv[i].imag());
    }
    return s;
  };
  const double prefactor = std::cbrt(4.0) / kPi;
  const double coarse = prefactor * apply(coarse_, coarse_inv_ai_);
  const double fine = prefactor * apply(fine_, fine_inv_ai_);
  return {fine, std::fabs(fine - coarse) + tail_bound_};
}

double GFunction::g_series(double x) const {
  if (!(x < 0.0)) throw DomainError("g_series: requires x < 0");
  const double ax = -x;
  const auto& z = p_.zeros();
  double sum = 0.0;
  for (std::size_t n = 1; n <= z.size(); ++n) {
    const double term = std::exp(kCbrt2 * z.zero(n) * ax) / z.deriv(n);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) return std::cbrt(4.0) * sum;
  }
  throw AccuracyError("g_series: not converged at x = " + std::to_string(x));
}

double GFunction::u2_series(double x) const {
  if (!(x < 0.0)) throw DomainError("u2_series: requires x < 0");
  const auto& z = p_.zeros();
  double sum = 0.0;
  for (std::size_t n = 1; n <= z.size(); ++n) {
    const double term = std::exp(-kCbrt2 * z.zero(n) * x) / z.deriv(n);
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) {
      return std::exp(2.0 / 3.0 * x * x * x) * std::cbrt(4.0) * sum;
    }
  }
  throw AccuracyError("u2_series: not converged at x = " + std::to_string(x));
}

quad::Result GFunction::u2_integral(double x) const {
  // y = s^2 removes the y^{-1/2} singularity; both integrals share the weight
  // exp(-y(2x+y)^2/2), which vanishes at y = -2x when x < 0.
  auto exponent = [x](double s) {
    const double y = s * s;
    const double w = 2.0 * x + y;
    return 0.5 * y * w * w;
  };
  double upper = 0.25;
  while (upper * upper < -2.0 * x || exponent(upper) < 46.0) upper += 0.25;
  std::vector<double> breaks{0.0};
  if (x > 0.5) {
    // Mass concentrates at s ~ 1/(2x).
    const double scale = 1.0 / (2.0 * x);
    for (double m : {0.5, 1.0, 2.0, 4.0}) {
      if (m * scale < upper) breaks.push_back(m * scale);
    }
  }
  for (double b = 0.5; b < upper; b += 0.5) {
    if (b > breaks.back()) breaks.push_back(b);
  }
  breaks.push_back(upper);
  auto integrand = [&](double s) {
    const double y = s * s;
    const double weight = std::exp(-exponent(s));
    if (weight == 0.0) return 0.0;
    const double poly = 4.0 * x * x + 8.0 * x * y + 3.0 * y * y;
    const double first = (s > 0.0) ? p_.tilde_p_any(y) * 2.0 * s : 0.0;
    return (2.0 * poly - first) * weight;
  };
  quad::Result total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto r = quad::integrate_adaptive<double>(integrand, breaks[i], breaks[i + 1], 1e-15);
    total.value += r.value;
    total.error += r.error;
  }
  return {2.0 * x + total.value / kSqrt2Pi, total.error / kSqrt2Pi};
}

double GFunction::u2(double x) const {
  if (x > -1.0 + kSeamHalfWidth) return u2_integral(x).value;
  if (x < -1.0 - kSeamHalfWidth) return u2_series(x);
  const double a = u2_integral(x).value;
  const double b = u2_series(x);
  if (std::fabs(a - b) > 1e-6 * std::fabs(b)) {
    throw AccuracyError("u2: branch disagreement at x = " + std::to_string(x));
  }
  return x >= -1.0 ? a : b;
}

double GFunction::log_g_accurate(double x) const {
  double value = 0.0;
  if (x <= -1.0) {
    value = g_series(x);
  } else if (x <= kFourierUpper) {
    value = g_fourier(x).value;
  } else {
    const double u = u2_integral(x).value;
    if (!(u > 0.0)) throw AccuracyError("g: non-positive u2 at x = " + std::to_string(x));
    return std::log(u) - 2.0 / 3.0 * x * x * x;
  }
  if (!(value > 0.0)) throw AccuracyError("g: non-positive value at x = " + std::to_string(x));
  return std::log(value);
}

// ---------------------------------------------------------------------------
// CoreFnSuite

namespace {

void validate(const SuiteConfig& c) {
  if (!(c.step > 0.0) || c.step > 0.1) throw ConfigError("suite: table step must lie in (0, 0.1]");
  if (!(c.x_max > 0.0) || c.x_min != -c.x_max) {
    throw ConfigError("suite: table range must be symmetric about 0");
  }
  if (c.x_max < 3.0 || c.x_max > 10.0) throw ConfigError("suite: table range must lie in [3, 10]");
  const double cells = c.x_max / c.step;
  if (std::fabs(cells - std::round(cells)) > 1e-6) {
    throw ConfigError("suite: range must be an integer multiple of the step");
  }
  if (c.zero_count < 40 || c.zero_count > 200) throw ConfigError("suite: zero count in [40, 200]");
  if (c.coeff_order < 10) throw ConfigError("suite: coefficient order too small");
}

std::vector<double> phi_breaks(double upper) {
  std::vector<double> b{0.0, 0.01, 0.02, 0.035, 0.05, 0.075, 0.1, 0.15, 0.2, 0.3, 0.4,
                        0.5, 0.65, 0.8, 1.0};
  for (double s = 1.25; s < upper; s += 0.25) b.push_back(s);
  b.push_back(std::max(upper, b.back() + 0.25));
  return b;
}

}  // namespace

CoreFnSuite::CoreFnSuite(SuiteConfig config, GFunction g_fn)
    : config_(config), g_fn_(std::move(g_fn)) {
  const auto breaks = phi_breaks(std::sqrt(-config_.x_min + 6.0));
  phi_coarse_ = quad::make_panel_rule(breaks, 16);
  phi_fine_ = quad::make_bisected_rule(breaks, 16);
  for (double s : phi_coarse_.nodes) phi_coarse_kernel_.push_back(p_fn().sqrt_kernel(s));
  for (double s : phi_fine_.nodes) phi_fine_kernel_.push_back(p_fn().sqrt_kernel(s));
}

CoreFnSuite CoreFnSuite::build(const SuiteConfig& config) {
  validate(config);
  PFunction p(tilde_p_coeffs(config.coeff_order), airy::airy_zeros(config.zero_count));
  CoreFnSuite suite(config, GFunction(std::move(p)));
  const auto n = static_cast<std::size_t>(std::llround((config.x_max - config.x_min) / config.step)) + 1;
  std::vector<double> log_g(n);
  for (std::size_t i = 0; i < n; ++i) {
    log_g[i] = suite.g_fn_.log_g_accurate(config.x_min + config.step * static_cast<double>(i));
  }
  suite.log_g_table_ = InterpolatedFn(config.x_min, config.step, log_g);
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = suite.phi_quadrature(suite.log_g_table_.node(i));
    phi[i] = r.value;
    suite.phi_error_ = std::max(suite.phi_error_, r.error);
  }
  suite.finish_tables(std::move(log_g), std::move(phi));
  return suite;
}

CoreFnSuite CoreFnSuite::from_tables(const SuiteConfig& config, std::vector<double> log_g,
                                     std::vector<double> phi) {
  validate(config);
  const auto n = static_cast<std::size_t>(std::llround((config.x_max - config.x_min) / config.step)) + 1;
  if (log_g.size() != n || phi.size() != n) throw ConfigError("suite: table size mismatch");
  PFunction p(tilde_p_coeffs(config.coeff_order), airy::airy_zeros(config.zero_count));
  CoreFnSuite suite(config, GFunction(std::move(p)));
  suite.finish_tables(std::move(log_g), std::move(phi));
  return suite;
}

void CoreFnSuite::finish_tables(std::vector<double> log_g, std::vector<double> phi) {
  const double x0 = config_.x_min;
  const double dx = config_.step;
  const std::size_t n = log_g.size();
  log_g_table_ = InterpolatedFn(x0, dx, log_g);

  std::vector<double> g(n);
  std::vector<double> fv0(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(log_g[i]);
    fv0[i] = 0.5 * std::exp(log_g[i] + log_g[n - 1 - i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(phi[i] > 0.0) || !std::isfinite(phi[i])) {
      throw AccuracyError("suite: non-positive phi at x = " + std::to_string(x0 + dx * double(i)));
    }
  }

  // Cumulative trapezoid with the Euler-Maclaurin end correction, anchored at 0.
  auto derivative = [&](std::size_t i) {
    if (i == 0) return (phi[1] - phi[0]) / dx;
    if (i == n - 1) return (phi[n - 1] - phi[n - 2]) / dx;
    return (phi[i + 1] - phi[i - 1]) / (2.0 * dx);
  };
  auto cell = [&](std::size_t i) {  // integral over [x_i, x_{i+1}]
    return 0.5 * dx * (phi[i] + phi[i + 1]) - dx * dx / 12.0 * (derivative(i + 1) - derivative(i));
  };
  const auto zero = static_cast<std::size_t>(std::llround(-x0 / dx));
  std::vector<double> Phi(n, 0.0);
  for (std::size_t i = zero; i + 1 < n; ++i) Phi[i + 1] = Phi[i] + cell(i);
  for (std::size_t i = zero; i > 0; --i) Phi[i - 1] = Phi[i] - cell(i - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (!(Phi[i] > Phi[i - 1])) throw AccuracyError("suite: Phi not strictly increasing");
  }

  g_table_ = InterpolatedFn(x0, dx, std::move(g));
  fv0_table_ = InterpolatedFn(x0, dx, std::move(fv0));
  phi_table_ = InterpolatedFn(x0, dx, std::move(phi));
  Phi_table_ = InterpolatedFn(x0, dx, std::move(Phi));
  left_cubic_coeff_ = phi_table_.values().front() / (2.0 * x0 * x0);
}

double CoreFnSuite::log_g(double x) const {
  if (x < log_g_table_.x0()) return std::log(g_fn_.g_series(x));
  const double end = log_g_table_.x_end();
  if (x > end) {
    return log_g_table_.values().back() + std::log(x / end) - 2.0 / 3.0 * (x * x * x - end * end * end);
  }
  return log_g_table_.cubic(x);
}

double CoreFnSuite::g(double x) const { return std::exp(log_g(x)); }

double CoreFnSuite::f_v0(double x) const { return 0.5 * std::exp(log_g(x) + log_g(-x)); }

double CoreFnSuite::phi(double x) const {
  if (phi_table_.contains(x)) return phi_table_(x);
  return phi_quadrature(x).value;
}

double CoreFnSuite::Phi(double x) const {
  const double lo = Phi_table_.x0();
  const double hi = Phi_table_.x_end();
  if (x < lo) {
    return Phi_table_.values().front() -
           2.0 * left_cubic_coeff_ / 3.0 * (std::fabs(x * x * x) - std::fabs(lo * lo * lo));
  }
  if (x > hi) {
    return Phi_table_.values().back() + hi * phi_table_.values().back() * std::log(x / hi);
  }
  return Phi_table_(x);
}

double CoreFnSuite::Phi_inverse(double value, bool* extended) const {
  const auto& v = Phi_table_.values();
  const double lo = Phi_table_.x0();
  const double hi = Phi_table_.x_end();
  if (extended) *extended = false;
  if (value < v.front()) {
    if (extended) *extended = true;
    const double cube = std::fabs(lo * lo * lo) + (v.front() - value) * 3.0 / (2.0 * left_cubic_coeff_);
    return -std::cbrt(cube);
  }
  if (value > v.back()) {
    if (extended) *extended = true;
    return hi * std::exp((value - v.back()) / (hi * phi_table_.values().back()));
  }
  const auto it = std::upper_bound(v.begin(), v.end(), value);
  if (it == v.end()) return hi;
  const auto i = static_cast<std::size_t>(std::distance(v.begin(), it));  // v[i-1] <= value < v[i]
  const double t = (value - v[i - 1]) / (v[i] - v[i - 1]);
  return Phi_table_.node(i - 1) + t * Phi_table_.dx();
}

double CoreFnSuite::h(double x) const { return 0.5 * g(x) * phi(x); }

quad::Result CoreFnSuite::phi_quadrature(double x) const {
  const double lg = log_g(x);
  auto apply = [&](const quad::PanelRule& rule, const std::vector<double>& kernel) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double u = rule.nodes[i] * rule.nodes[i];
      s += rule.weights[i] * kernel[i] * std::exp(log_g(x + u) - lg);
    }
    return s;
  };
  if (x >= config_.x_min) {
    const double coarse = apply(phi_coarse_, phi_coarse_kernel_);
    const double fine = apply(phi_fine_, phi_fine_kernel_);
    return {fine, std::fabs(fine - coarse)};
  }
  // Off the left edge the support in s grows with |x|.
  const auto breaks = phi_breaks(std::sqrt(-x + 6.0));
  return quad::integrate_panels<double>(
      [&](double s) { return p_fn().sqrt_kernel(s) * std::exp(log_g(x + s * s) - lg); }, breaks, 16);
}

double CoreFnSuite::jump_density_s(double y, double s) const {
  return p_fn().sqrt_kernel(s) * std::exp(log_g(y + s * s) - log_g(y));
}

// ---------------------------------------------------------------------------
// Transforms

quad::ComplexResult charfn_v0(double t) {
  if (!(std::fabs(t) <= 20.0)) throw DomainError("charfn_v0: |t| must be <= 20");
  // E exp(itV) = (1/2pi) int du / (Ai(iu) Ai(i(u + 2^{-1/3} t)))
  const double shift = t / kCbrt2;
  const double cutoff = choose_inverse_ai_cutoff(1e-14);
  // Either factor is below the tail threshold once |u| or |u+shift| passes the cutoff.
  const double lo = std::max(-cutoff, -shift - cutoff);
  const double hi = std::min(cutoff, -shift + cutoff);
  const auto breaks = quad::uniform_breaks(lo, hi, 0.5);
  auto integrand = [shift](double u) {
    return 1.0 / (airy::airy_ai(Complex(0.0, u)) * airy::airy_ai(Complex(0.0, u + shift)));
  };
  auto r = quad::integrate_panels<Complex>(integrand, breaks, 20);
  const double prefactor = 1.0 / (2.0 * kPi);
  const double max_inv = 1.0 / std::abs(airy::airy_ai(Complex(0.0, 0.0)));
  const double tail = 2.0 * max_inv * inverse_ai_tail(cutoff);
  return {prefactor * r.value, prefactor * (r.error + tail)};
}

Complex p1_hat_closed(double u) {
  const Complex w(0.0, -u / kCbrt2);
  const auto a = airy::airy_pair(w);
  const Complex ratio = a.ai_prime / a.ai;
  return Complex(0.0, u) + kCbrt2 * ratio * ratio;
}

Complex h_hat_closed(double u) {
  const Complex w(0.0, u / kCbrt2);
  const auto a = airy::airy_pair(w);
  return -kCbrt2 * Complex(0.0, u) / a.ai +
         std::cbrt(4.0) * a.ai_prime * a.ai_prime / (a.ai * a.ai * a.ai);
}

FourierCheckReport fourier_checks(const CoreFnSuite& suite, std::span<const double> u_grid) {
  FourierCheckReport report;
  const auto& p = suite.p_fn();
  // Support of s^3 p(s^2) in s: the kernel decays like exp(2^{1/3} a_1 s^2).
  const double s_upper = std::sqrt(42.0 / (-kCbrt2 * suite.zeros().zero(1)));
  const auto& lg = suite.log_g_table().values();
  const auto& phi = suite.phi_table().values();
  const double x0 = suite.log_g_table().x0();
  const double dx = suite.log_g_table().dx();
  const std::size_t n = lg.size();
  const double decay = -kCbrt2 * suite.zeros().zero(1);

  for (double u : u_grid) {
    if (!(std::fabs(u) <= 10.0)) throw DomainError("fourier_checks: |u| must be <= 10");
    FourierCheckRow row;
    row.u = u;
    // int_0^inf e^{iux} x p(x) dx with x = s^2: integrand e^{ius^2} sqrt_kernel(s)/2
    auto f = [&](double s) { return std::polar(0.5 * p.sqrt_kernel(s), u * s * s); };
    row.p1_direct = quad::integrate_adaptive<Complex>(f, 0.0, s_upper, 1e-13, 1e-13).value;
    row.p1_closed = p1_hat_closed(u);

    // Composite Simpson over the table nodes of h = g phi / 2 (n - 1 is even).
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = x0 + dx * static_cast<double>(i);
      const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      acc += w * std::polar(0.5 * std::exp(lg[i]) * phi[i], u * x);
    }
    acc *= dx / 3.0;
    // Left tail beyond the grid: h decays like exp(decay * x).
    const double h0 = 0.5 * std::exp(lg.front()) * phi.front();
    acc += h0 * std::polar(1.0, u * x0) / Complex(decay, u);
    row.h_direct = acc;
    row.h_closed = h_hat_closed(u);

    report.max_p1_deviation = std::max(report.max_p1_deviation, std::abs(row.p1_direct - row.p1_closed));
    report.max_h_deviation = std::max(report.max_h_deviation, std::abs(row.h_direct - row.h_closed));
    report.rows.push_back(row);
  }
  return report;
}

void write_table_csv(std::ostream& out, std::span<const double> xs, std::span<const double> values) {
  out << "x,value\n";
  char buf[64];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", xs[i], values[i]);
    out << buf;
  }
}

}  // namespace vertexlab
