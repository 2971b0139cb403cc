#include "vertexlab/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vertexlab/errors.hpp"

namespace vertexlab::constants {
namespace {

constexpr double kPi = std::numbers::pi;
const double kCbrt2 = std::cbrt(2.0);

// Bound on int_V^inf v |Ai(iv)|^{-2} dv; the log-derivative of the integrand
// is at most -sqrt(2) sqrt(v) + 1/(2v) + 1/v beyond V.
double squared_tail(double v) {
  const double inv = 1.0 / std::abs(airy::airy_ai(Complex(0.0, v)));
  return v * inv * inv / (std::sqrt(2.0) * std::sqrt(v) - 1.5 / v);
}

double squared_cutoff() {
  double v = 6.0;
  while (squared_tail(v) > 1e-15) v += 0.5;
  return v;
}

// int_{-U}^{U} iu / Ai(c iu)^2 du on uniform panels.
quad::ComplexResult airy_moment(double scale, double upper, double width) {
  const auto breaks = quad::uniform_breaks(-upper, upper, width);
  auto f = [scale](double u) {
    const Complex ai = airy::airy_ai(Complex(0.0, scale * u));
    return Complex(0.0, u) / (ai * ai);
  };
  const auto r = quad::integrate_panels<Complex>(f, breaks, 20);
  return {r.value, r.error};
}

std::size_t steps_in(double length, double step, const char* what) {
  const double n = length / step;
  if (std::fabs(n - std::round(n)) > 1e-6) {
    throw ConfigError(std::string("covariance_kernel: ") + what + " is not a multiple of the step");
  }
  return static_cast<std::size_t>(std::llround(n));
}

struct Cov {
  std::vector<double> b;
  std::vector<double> cov;
  double two_int = 0.0;
};

Cov covariance_from(const CoreFnSuite& suite, const KernelGrid& k) {
  const double h = k.step;
  const std::size_t n_x = k.n_t + k.n_a;
  std::vector<double> f(n_x, 0.0);
  std::vector<double> phi_neg(n_x, 0.0);
  for (std::size_t m = 0; m < n_x; ++m) {
    const double x = k.t0 + h * static_cast<double>(m);  // x = t - b
    if (std::fabs(x) > 6.0) continue;
    f[m] = suite.f_v0(x);
    phi_neg[m] = suite.phi(-x);
  }
  Cov out;
  for (std::size_t j = 0; j < k.n_a; ++j) {
    double mass = 0.0, ea = 0.0, eb = 0.0, eab = 0.0;
    for (std::size_t i = 0; i < k.n_t; ++i) {
      const double w = f[i + j];
      if (w == 0.0) continue;
      mass += w;
      ea += w * phi_neg[i + j];
      eb += w * k.at(j, i);
      eab += w * phi_neg[i + j] * k.at(j, i);
    }
    out.b.push_back(k.a(j));
    out.cov.push_back(eab / mass - (ea / mass) * (eb / mass));
  }
  double integral = 0.0;
  for (std::size_t j = 0; j + 1 < out.cov.size(); ++j) integral += 0.5 * h * (out.cov[j] + out.cov[j + 1]);
  out.two_int = 2.0 * integral;
  return out;
}

}  // namespace

Value k1_airy() {
  const double v_upper = squared_cutoff();
  const auto r = airy_moment(1.0 / kCbrt2, kCbrt2 * v_upper, 0.5);
  const double prefactor = -std::pow(2.0, 5.0 / 3.0) / (6.0 * kPi);
  // In v = 2^{-1/3} u the integrand is 2^{2/3} iv/Ai(iv)^2 dv; both tails count.
  const double tail = 2.0 * std::fabs(prefactor) * std::pow(2.0, 2.0 / 3.0) * squared_tail(v_upper);
  return {prefactor * r.value.real(), std::fabs(prefactor) * r.error + tail,
          std::fabs(prefactor * r.value.imag())};
}

Value ev0_sq() {
  const double upper = squared_cutoff();
  const auto r = airy_moment(1.0, upper, 0.5);
  const double prefactor = -std::pow(2.0, -2.0 / 3.0) / (6.0 * kPi);
  const double tail = 2.0 * std::fabs(prefactor) * squared_tail(upper);
  return {prefactor * r.value.real(), std::fabs(prefactor) * r.error + tail,
          std::fabs(prefactor * r.value.imag())};
}

Value e_max() {
  const Value k = k1_airy();
  return {3.0 / 8.0 * k.value, 3.0 / 8.0 * k.error, 3.0 / 8.0 * k.imag_residue};
}

Value k1_double_integral(const CoreFnSuite& suite, double* min_integrand) {
  const auto& p = suite.p_fn();
  // Inner variable s = sqrt(y - x) on (0, sqrt(12)]; the kernel 4 s^3 p(s^2)
  // carries the Jacobian, so (y-x) p(y-x) dy = sqrt_kernel(s) ds / 2.
  std::vector<double> inner_breaks{0.0, 0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0};
  for (double s = 1.25; s < std::sqrt(12.0); s += 0.25) inner_breaks.push_back(s);
  inner_breaks.push_back(std::sqrt(12.0));
  const auto outer_breaks = quad::uniform_breaks(-8.0, 8.0, 0.25);

  auto run = [&](const quad::PanelRule& outer, const quad::PanelRule& inner) {
    std::vector<double> kernel(inner.size());
    for (std::size_t m = 0; m < inner.size(); ++m) kernel[m] = 0.5 * p.sqrt_kernel(inner.nodes[m]);
    double total = 0.0;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < outer.size(); ++i) {
      const double x = outer.nodes[i];
      const double lg_neg = suite.log_g(-x);
      double s_sum = 0.0;
      for (std::size_t m = 0; m < inner.size(); ++m) {
        const double s = inner.nodes[m];
        const double value = std::exp(lg_neg + suite.log_g(x + s * s)) * kernel[m];
        lowest = std::min(lowest, value);
        s_sum += inner.weights[m] * value;
      }
      total += outer.weights[i] * s_sum;
    }
    return std::pair{total, lowest};
  };
  const auto coarse = run(quad::make_panel_rule(outer_breaks, 16), quad::make_panel_rule(inner_breaks, 16));
  const auto fine = run(quad::make_bisected_rule(outer_breaks, 16), quad::make_bisected_rule(inner_breaks, 16));
  if (min_integrand) *min_integrand = std::min(coarse.second, fine.second);
  return {fine.first, std::fabs(fine.first - coarse.first), 0.0};
}

double k_scaled(double c, Which which, double k2_base) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("k_scaled: c must be positive");
  const double base = which == Which::k1 ? k1_airy().value : k2_base;
  return std::cbrt(c * c) * base;
}

KernelGrid solve_kernel(const CoreFnSuite& suite, double grid_bound, double step) {
  if (!(grid_bound > 0.0) || grid_bound > 10.0) throw ConfigError("covariance_kernel: bound must lie in (0, 10]");
  if (!(step >= 1e-3) || step > 0.25) throw ConfigError("covariance_kernel: step must lie in [1e-3, 0.25]");
  KernelGrid k;
  k.bound = grid_bound;
  k.step = step;
  k.t0 = -(grid_bound + 4.0);
  k.n_t = steps_in(2.0 * grid_bound + 4.0, step, "t range") + 1;
  k.n_a = steps_in(grid_bound, step, "a range") + 1;
  const double h = step;
  // Jumps may overshoot the top of the grid by up to `overshoot`; k is held
  // constant above the top.
  const std::size_t overshoot = steps_in(4.0, step, "overshoot");
  const std::size_t m_max = k.n_t - 1 + overshoot;

  // log g at y = t - a = t0 + (i + j) h and beyond.
  const std::size_t n_y = k.n_t + k.n_a + m_max;
  std::vector<double> lg(n_y);
  std::vector<double> gy(n_y);
  for (std::size_t q = 0; q < n_y; ++q) {
    lg[q] = suite.log_g(k.t0 + h * static_cast<double>(q));
    gy[q] = std::exp(lg[q]);
  }
  // Riemann weights of 2 u p(u) on u = m h, m >= 1.
  const auto& p = suite.p_fn();
  std::vector<double> w(m_max + 1, 0.0);
  for (std::size_t m = 1; m <= m_max; ++m) {
    const double u = h * static_cast<double>(m);
    w[m] = 2.0 * u * p.p(u) * h;
  }

  k.values.assign(k.n_a * k.n_t, 0.0);
  for (std::size_t i = 0; i < k.n_t; ++i) k.values[i] = suite.phi(k.t(i));

  for (std::size_t j = 1; j < k.n_a; ++j) {
    const double* old_row = &k.values[(j - 1) * k.n_t];
    double* row = &k.values[j * k.n_t];
    const std::size_t top = k.n_t - 1;
    row[top] = old_row[top];
    for (std::size_t i = top; i-- > 0;) {
      const std::size_t y = i + j;
      const std::size_t m_end = top - i + overshoot;
      double lambda = 0.0;
      double s = 0.0;
      if (lg[y] > -600.0) {
        for (std::size_t m = 1; m <= m_end; ++m) {
          const double jm = w[m] * gy[y + m];
          lambda += jm;
          s += jm * (i + m < top ? row[i + m] : row[top]);
        }
        lambda /= gy[y];
        s /= gy[y];
      } else {
        // Far right tail: g(y) underflows, but g(y+u)/g(y) is tiny past a short range.
        for (std::size_t m = 1; m <= m_end; ++m) {
          const double d = lg[y + m] - lg[y];
          if (d < -60.0) break;
          const double jm = w[m] * std::exp(d);
          lambda += jm;
          s += jm * (i + m < top ? row[i + m] : row[top]);
        }
      }
      row[i] = (old_row[i] + h * s) / (1.0 + h * lambda);
      if (!std::isfinite(row[i])) {
        throw NumericalError("covariance_kernel: non-finite value at a = " + std::to_string(k.a(j)));
      }
    }
  }
  return k;
}

CovarianceResult covariance_kernel(const CoreFnSuite& suite, double grid_bound, double step) {
  const KernelGrid fine = solve_kernel(suite, grid_bound, step);
  const Cov fine_cov = covariance_from(suite, fine);
  const KernelGrid coarse = solve_kernel(suite, grid_bound, 2.0 * step);
  const Cov coarse_cov = covariance_from(suite, coarse);

  CovarianceResult r;
  r.two_int_cov = fine_cov.two_int;
  r.two_int_cov_coarse = coarse_cov.two_int;
  r.k1_used = k1_airy().value;
  r.k2_analytic = r.k1_used + r.two_int_cov;
  r.relative_change = std::fabs(r.two_int_cov - r.two_int_cov_coarse) / std::fabs(r.two_int_cov);
  if (r.relative_change > 0.05) {
    r.warning = "unstable: step " + std::to_string(step) + " and " + std::to_string(2.0 * step) +
                " disagree by " + std::to_string(100.0 * r.relative_change) + "%";
  }
  r.b = fine_cov.b;
  r.cov = fine_cov.cov;
  return r;
}

}  // namespace vertexlab::constants
