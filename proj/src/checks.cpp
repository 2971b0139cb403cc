#include "vertexlab/checks.hpp"

#include <algorithm>
#include <cmath>

#include "vertexlab/constants.hpp"
#include "vertexlab/grenander.hpp"
#include "vertexlab/hull_oracle.hpp"
#include "vertexlab/rng.hpp"

namespace vertexlab::checks {

double airy_ode_residual(Complex z) {
  const double h = 1e-3;
  auto d = [](Complex w) { return airy::airy_ai_prime(w); };
  const Complex second =
      (-d(z + 2.0 * h) + 8.0 * d(z + h) - 8.0 * d(z - h) + d(z - 2.0 * h)) / (12.0 * h);
  const auto pair = airy::airy_pair(z);
  const double scale = std::abs(z * pair.ai) + std::abs(pair.ai) + std::abs(pair.ai_prime);
  return std::abs(second - z * pair.ai) / scale;
}

double table_integral(const InterpolatedFn& table, const std::function<double(double, double)>& w) {
  const auto& v = table.values();
  const std::size_t n = v.size();
  const double dx = table.dx();
  if (n < 2) return 0.0;
  double sum = 0.0;
  if (n % 2 == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const double c = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      sum += c * w(table.node(i), v[i]);
    }
    return sum * dx / 3.0;
  }
  for (std::size_t i = 0; i < n; ++i) sum += ((i == 0 || i == n - 1) ? 0.5 : 1.0) * w(table.node(i), v[i]);
  return sum * dx;
}

Check near(std::string name, double value, double target, double tolerance) {
  return {std::move(name), value, target, tolerance, std::fabs(value - target) <= tolerance};
}

std::vector<Check> invariant_suite(const CoreFnSuite& suite, bool quick) {
  std::vector<Check> out;

  // Airy engine against 25-digit reference values.
  out.push_back(near("airy.ai0", airy::airy_ai(0.0).real(), 0.3550280538878172, 1e-10));
  out.push_back(near("airy.ai_prime0", airy::airy_ai_prime(0.0).real(), -0.2588194037928068, 1e-10));
  out.push_back(near("airy.zero1", suite.zeros().zero(1), -2.338107410459767, 1e-10));
  out.push_back(near("airy.zero2", suite.zeros().zero(2), -4.087949444130971, 1e-10));
  double ode = 0.0;
  for (double r : {0.5, 1.0, 2.0, 4.0, 6.0, 7.9, 8.1, 10.0, 15.0}) {
    for (int k = 0; k < 16; ++k) ode = std::max(ode, airy_ode_residual(std::polar(r, 2.0 * M_PI * k / 16.0)));
  }
  out.push_back(near("airy.ode_residual", ode, 0.0, 1e-9));

  // Two representations of p across the switch point.
  const auto& p = suite.p_fn();
  const double series = p.p_from_series(1.0);
  const double zero_sum = p.p_from_zero_sum(1.0);
  out.push_back(near("p.seam_relative", std::fabs(series - zero_sum) / zero_sum, 0.0, 1e-8));

  // u2(x) exp(-(2/3)x^3) = g(x) on 41 points of [-2, 2].
  const auto& gf = suite.g_fn();
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double x = -2.0 + 0.1 * i;
    const double g = x <= -1.0 ? gf.g_series(x) : gf.g_fourier(x).value;
    const double lhs = gf.u2(x) * std::exp(-2.0 / 3.0 * x * x * x);
    worst = std::max(worst, std::fabs(lhs - g) / g);
  }
  out.push_back(near("identity.u2_vs_g", worst, 0.0, 1e-6));

  // Normalizations of the Chernoff density.
  const auto& fv0 = suite.fv0_table();
  const double mass = table_integral(fv0, [](double, double v) { return v; });
  const double first = table_integral(fv0, [](double x, double v) { return x * v; });
  const double second = table_integral(fv0, [](double x, double v) { return x * x * v; });
  out.push_back(near("fv0.mass", mass, 1.0, 1e-4));
  out.push_back(near("fv0.first_moment", first, 0.0, 1e-6));
  const auto ev0 = constants::ev0_sq();
  out.push_back(near("fv0.second_moment_vs_ev0_sq", second, ev0.value, 1e-4));
  out.push_back(near("charfn_v0.at_zero", charfn_v0(0.0).value.real(), 1.0, 1e-6));

  // k1 by independent routes.
  const auto k1 = constants::k1_airy();
  const auto k1d = constants::k1_double_integral(suite);
  out.push_back(near("k1.airy", k1.value, 2.10848, 2e-3));
  out.push_back(near("k1.imag_residue", k1.imag_residue, 0.0, 1e-8));
  out.push_back(near("k1.double_vs_airy", k1d.value, k1.value, 5e-3));
  out.push_back(near("k1.eight_ev0_vs_airy", 8.0 * ev0.value, k1.value, 1e-4));

  // Fourier transforms against closed forms.
  const double grid[] = {0.0, 1.0};
  const auto report = fourier_checks(suite, grid);
  out.push_back(near("fourier.p1_at_1", std::abs(report.rows[1].p1_direct - report.rows[1].p1_closed), 0.0, 1e-5));
  out.push_back(near("fourier.h_at_1", std::abs(report.rows[1].h_direct - report.rows[1].h_closed), 0.0, 1e-5));
  const double int_g = table_integral(suite.g_table(), [](double, double v) { return v; });
  out.push_back(near("fourier.h_at_0_vs_product", report.rows[0].h_closed.real(),
                     int_g * p1_hat_closed(0.0).real(), 1e-5));

  out.push_back(near("Phi.at_zero", suite.Phi(0.0), 0.0, 0.0));

  // Hull against the exhaustive oracle.
  const int samples = quick ? 200 : 1000;
  int mismatches = 0;
  for (int k = 0; k < samples; ++k) {
    Rng rng(12345, static_cast<std::uint64_t>(k));
    const int n = 1 + static_cast<int>(rng.bits() % 12);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (auto& x : xs) x = rng.uniform();
    std::sort(xs.begin(), xs.end());
    const auto fast = grenander::lcm_empirical(xs).vertices;
    const auto slow = grenander::brute_force_upper_hull(xs);
    bool same = fast.size() == slow.size();
    for (std::size_t i = 0; same && i < fast.size(); ++i) same = fast[i].x == slow[i].x && fast[i].y == slow[i].y;
    if (!same) ++mismatches;
  }
  out.push_back(near("hull.oracle_mismatches", mismatches, 0.0, 0.0));

  out.push_back(near("grenander.theory_triangular", grenander::theory_coefficient(grenander::triangular()),
                     1.19055, 1e-5));
  out.push_back(near("grenander.theory_exponential", grenander::theory_coefficient(grenander::exponential()),
                     1.88988, 1e-5));
  return out;
}

}  // namespace vertexlab::checks
