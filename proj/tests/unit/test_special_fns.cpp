#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "support.hpp"
#include "vertexlab/checks.hpp"
#include "vertexlab/errors.hpp"

using namespace vertexlab;
using vertexlab::testing::default_suite;
using vertexlab::testing::rel;

namespace {
// 30-digit values from tests/oracles/reference_values.py.
struct Ref {
  double x;
  double value;
};
constexpr Ref kG[] = {{-3.0, 3.28289551007481700905193716888e-4}, {-2.0, 6.18867644367206455829040675187e-3},
                      {-1.0, 0.108997156796436719485924897575},   {0.0, 1.23153932787689187692375015387},
                      {1.0, 2.21804247547698709718287150608},     {2.0, 0.0391688884708092410882040813936}};
constexpr Ref kU2[] = {{-1.0, 0.055961006225170248247554305445},
                       {0.0, 1.23153932787689187692375015387},
                       {1.0, 4.32015683399170885370929349428},
                       {2.0, 8.11294411103147771057694685018}};
constexpr Ref kP[] = {{0.5, 0.72870289214892659963672367861},
                      {1.0, 0.119125771094196021785150239547},
                      {2.0, 0.00559386337953301443247063342159}};
const double kSqrt2Pi = std::sqrt(2.0 * M_PI);
}  // namespace

TEST_CASE("p-tilde coefficients") {
  const auto c = tilde_p_coeffs(40);
  REQUIRE(c.order() == 40);
  CHECK(c.c[0] == 1.0);
  CHECK(c.a[0] == 1.0);
  CHECK(c.b[1] == 2.0 / 3.0);
  CHECK(c.c[1] == doctest::Approx(3.0 / 16.0).epsilon(1e-15));
  CHECK(c.a[1] == doctest::Approx(7.0 / 48.0).epsilon(1e-14));
  CHECK(c.b[2] == doctest::Approx(4.0 / 189.0).epsilon(1e-14));
  for (int n = 0; n <= 40; ++n) {
    CHECK(std::isfinite(c.a[n]));
    CHECK(std::isfinite(c.b[n]));
  }
  CHECK(std::fabs(c.a[40]) < 1e-20);
  CHECK_THROWS_AS(tilde_p_coeffs(0), ConfigError);
}

TEST_CASE("p against reference values") {
  const auto& p = default_suite().p_fn();
  for (const auto& r : kP) CHECK(rel(p.p(r.x), r.value) < 1e-13);
}

TEST_CASE("p small-argument and large-argument behaviour") {
  const auto& p = default_suite().p_fn();
  CHECK(p.tilde_p(1e-4) == doctest::Approx(-std::sqrt(M_PI / 2.0)).epsilon(1e-5));
  CHECK(std::isfinite(p.tilde_p(0.5)));
  CHECK(std::pow(1e-6, 1.5) * p.p(1e-6) == doctest::Approx(1.0 / kSqrt2Pi).epsilon(1e-8));
  CHECK(std::pow(1e-3, 1.5) * p.p(1e-3) == doctest::Approx(1.0 / kSqrt2Pi).epsilon(1e-4));
  // Relative correction at small u is u^{3/2} p~(u) ~ -sqrt(pi/2) u^{3/2}.
  CHECK(std::pow(1e-3, 1.5) * p.p(1e-3) * kSqrt2Pi - 1.0 ==
        doctest::Approx(-std::sqrt(M_PI / 2.0) * std::pow(1e-3, 1.5)).epsilon(1e-3));
  // p0 removes the leading singularity exactly.
  CHECK(p.p0(0.3) == doctest::Approx(p.p(0.3) - 1.0 / std::sqrt(2.0 * M_PI * 0.027)).epsilon(1e-14));
}

TEST_CASE("p leading exponential at u = 6") {
  const auto& s = default_suite();
  const double c = std::cbrt(2.0);
  const double lead = 2.0 * std::exp(c * s.zeros().zero(1) * 6.0);
  const double ratio = s.p_fn().p(6.0) / lead;
  INFO("ratio - 1 = " << ratio - 1.0);
  CHECK(std::fabs(ratio - 1.0) < 1e-6);
}

TEST_CASE("p at u = 6 minus its leading exponential is the second zero term") {
  const auto& s = default_suite();
  const double c = std::cbrt(2.0);
  const double a1 = s.zeros().zero(1);
  const double a2 = s.zeros().zero(2);
  const double ratio = s.p_fn().p(6.0) / (2.0 * std::exp(c * a1 * 6.0));
  CHECK(ratio - 1.0 == doctest::Approx(std::exp(c * (a2 - a1) * 6.0)).epsilon(1e-4));
}

TEST_CASE("p across the seam at distance 1e-6") {
  const auto& p = default_suite().p_fn();
  const double t = p.t_switch();
  const double jump = std::fabs(p.p(t - 1e-6) - p.p(t + 1e-6)) / p.p(t);
  INFO("relative difference = " << jump);
  CHECK(jump < 1e-8);
}

TEST_CASE("p is continuous across the representation seam") {
  const auto& p = default_suite().p_fn();
  const double t = p.t_switch();
  // One-sided linear extrapolations to the seam from each representation.
  const double e = 1e-4;
  const double left = 2.0 * p.p(t - e) - p.p(t - 2.0 * e);
  const double right = 2.0 * p.p(t + e) - p.p(t + 2.0 * e);
  CHECK(std::fabs(left - right) / p.p(t) < 1e-7);
  CHECK(std::fabs(p.p_from_series(t) - p.p_from_zero_sum(t)) / p.p(t) < 1e-8);
  // Identity p(t) = e^{t^3/6}(p~(t) + t^{-3/2}) / sqrt(2 pi) at t = 1.
  CHECK(std::exp(1.0 / 6.0) * (p.tilde_p(1.0) + 1.0) / kSqrt2Pi == doctest::Approx(p.p_from_zero_sum(1.0)).epsilon(1e-9));
  CHECK_THROWS_AS(p.p(0.0), DomainError);
}

TEST_CASE("g against reference values") {
  const auto& s = default_suite();
  for (const auto& r : kG) {
    INFO("x = " << r.x);
    CHECK(rel(s.g(r.x), r.value) < 1e-12);
  }
  CHECK(rel(s.g_fn().g_series(-3.0), s.g_fn().g_fourier(-3.0).value) < 1e-8);
  CHECK(s.g_fn().g_fourier(0.5).error < 1e-10);
  CHECK(s.g_fn().fourier_tail_bound() < 1e-10);
}

TEST_CASE("g integrates to 2^{1/3} / Ai(0)") {
  const double total = checks::table_integral(default_suite().g_table(), [](double, double v) { return v; });
  CHECK(total == doctest::Approx(std::cbrt(2.0) / 0.3550280538878172).epsilon(1e-6));
}

TEST_CASE("g is positive on the table") {
  for (double v : default_suite().g_table().values()) REQUIRE(v > 0.0);
}

TEST_CASE("u2 against reference values and the g identity") {
  const auto& s = default_suite();
  for (const auto& r : kU2) CHECK(rel(s.g_fn().u2(r.x), r.value) < 1e-10);
  for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
    CHECK(rel(s.g_fn().u2(x) * std::exp(-2.0 / 3.0 * x * x * x), s.g(x)) < 1e-6);
  }
  CHECK(rel(s.g_fn().u2_series(-1.0), s.g_fn().u2_integral(-1.0).value) < 1e-6);
  for (double x = -8.0; x <= 8.0; x += 0.25) CHECK(s.g_fn().u2(x) > 0.0);
}

TEST_CASE("f_v0 symmetry and normalization") {
  const auto& s = default_suite();
  for (double x : {0.1, 0.7, 1.3, 2.9}) CHECK(s.f_v0(x) == doctest::Approx(s.f_v0(-x)).epsilon(1e-12));
  const auto& t = s.fv0_table();
  CHECK(checks::table_integral(t, [](double, double v) { return v; }) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::fabs(checks::table_integral(t, [](double x, double v) { return x * v; })) < 1e-6);
  CHECK(std::fabs(checks::table_integral(t, [](double x, double v) { return x * x * v; }) - 0.26355964) < 1e-4);
}

TEST_CASE("phi asymptotics") {
  const auto& s = default_suite();
  const double left6 = s.phi(-6.0) / 72.0;
  const double left8 = s.phi(-8.0) / 128.0;
  CHECK(std::fabs(left6 - 1.0) < 0.1);
  CHECK(std::fabs(left8 - 1.0) < std::fabs(left6 - 1.0));
  const double right6 = 6.0 * s.phi(6.0);
  CHECK(std::fabs(right6 - 1.0) < 0.1);
  CHECK(std::fabs(8.0 * s.phi(8.0) - 1.0) < std::fabs(right6 - 1.0));
}

TEST_CASE("phi table against direct quadrature") {
  const auto& s = default_suite();
  for (double x : {-5.0, -1.234, 0.0, 0.5, 3.3, 7.0}) {
    const auto q = s.phi_quadrature(x);
    CHECK(rel(s.phi(x), q.value) < 1e-8);
  }
  CHECK(s.phi_error_estimate() < 1e-8);
}

TEST_CASE("Phi is zero at the origin and strictly increasing") {
  const auto& s = default_suite();
  CHECK(s.Phi(0.0) == 0.0);
  const auto& v = s.Phi_table().values();
  for (std::size_t i = 1; i < v.size(); ++i) REQUIRE(v[i] > v[i - 1]);
  for (double x : {-12.0, -9.0, 9.0, 14.0}) CHECK(s.Phi(x) < s.Phi(x + 0.5));
}

TEST_CASE("Phi inverse round trip") {
  const auto& s = default_suite();
  for (double x : {-7.5, -2.0, 0.0, 0.3, 4.0, 7.9}) CHECK(s.Phi_inverse(s.Phi(x)) == doctest::Approx(x).epsilon(1e-9));
  bool extended = false;
  const double far = s.Phi_inverse(s.Phi(10.0), &extended);
  CHECK(extended);
  CHECK(far == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("tail law of the cumulative intensity at a = 6") {
  // Phi(0) - Phi(-a) over (2/3) a^3 should be within 10% of one.
  const auto& s = default_suite();
  const double ratio = (s.Phi(0.0) - s.Phi(-6.0)) / (2.0 / 3.0 * 216.0);
  INFO("ratio = " << ratio);
  CHECK(std::fabs(ratio - 1.0) < 0.1);
}

TEST_CASE("tail law ratio approaches one") {
  const auto& s = default_suite();
  auto ratio = [&](double a) { return (s.Phi(0.0) - s.Phi(-a)) / (2.0 / 3.0 * a * a * a); };
  CHECK(std::fabs(ratio(8.0) - 1.0) < std::fabs(ratio(6.0) - 1.0));
  CHECK(std::fabs(ratio(20.0) - 1.0) < 0.03);
  // The derivative of the tail is exactly phi(-a) ~ 2a^2.
  CHECK(std::fabs(s.phi(-6.0) / 72.0 - 1.0) < 0.1);
}

TEST_CASE("h is half of g times phi") {
  const auto& s = default_suite();
  for (double x : {-2.0, 0.0, 1.5}) CHECK(s.h(x) == doctest::Approx(0.5 * s.g(x) * s.phi(x)).epsilon(1e-14));
}

TEST_CASE("jump density integrates to phi") {
  const auto& s = default_suite();
  for (double y : {-2.0, 0.0, 2.0}) {
    const auto r = quad::integrate_adaptive<double>([&](double t) { return s.jump_density_s(y, t); }, 0.0, 12.0, 1e-13);
    CHECK(std::fabs(r.value / s.phi(y) - 1.0) < 1e-5);
  }
}

TEST_CASE("characteristic function of V(0)") {
  const auto c0 = charfn_v0(0.0);
  CHECK(std::fabs(c0.value.real() - 1.0) < 1e-6);
  CHECK(std::fabs(c0.value.imag()) < 1e-6);
  const double h = 1e-2;
  const double second = (charfn_v0(h).value.real() - 2.0 * c0.value.real() + charfn_v0(-h).value.real()) / (h * h);
  CHECK(std::fabs(-second - 0.26355964) < 1e-3);
  for (double t : {0.4, 2.5, 7.0}) {
    const Complex a = charfn_v0(t).value;
    const Complex b = charfn_v0(-t).value;
    CHECK(std::abs(std::conj(a) - b) < 1e-9);
  }
  CHECK_THROWS_AS(charfn_v0(21.0), DomainError);
}

TEST_CASE("Fourier transforms against closed forms") {
  const auto& s = default_suite();
  const double grid[] = {0.0, 1.0, -2.5};
  const auto r = fourier_checks(s, grid);
  REQUIRE(r.rows.size() == 3);
  CHECK(std::abs(r.rows[0].p1_direct - r.rows[0].p1_closed) < 1e-6);
  CHECK(std::abs(r.rows[1].p1_direct - r.rows[1].p1_closed) < 1e-5);
  CHECK(std::abs(r.rows[1].h_direct - r.rows[1].h_closed) < 1e-5);
  const double int_g = checks::table_integral(s.g_table(), [](double, double v) { return v; });
  CHECK(std::fabs(r.rows[0].h_closed.real() - int_g * r.rows[0].p1_closed.real()) < 1e-5);
  const double bad[] = {10.5};
  CHECK_THROWS_AS(fourier_checks(s, bad), DomainError);
}

TEST_CASE("suite configuration is validated") {
  SuiteConfig c;
  c.step = 0.5;
  CHECK_THROWS_AS(CoreFnSuite::build(c), ConfigError);
  c = SuiteConfig{};
  c.x_min = -7.0;
  CHECK_THROWS_AS(CoreFnSuite::build(c), ConfigError);
}

TEST_CASE("suite rebuilt from tables matches") {
  const auto& s = default_suite();
  const auto copy = CoreFnSuite::from_tables(s.config(), s.log_g_table().values(), s.phi_table().values());
  for (double x : {-3.21, 0.0, 2.5, 9.0}) {
    CHECK(copy.g(x) == s.g(x));
    CHECK(copy.Phi(x) == s.Phi(x));
  }
}

TEST_CASE("table export format") {
  const double xs[] = {0.0, 0.5};
  const double vs[] = {1.0 / 3.0, 2.0};
  std::ostringstream out;
  write_table_csv(out, xs, vs);
  CHECK(out.str() == "x,value\n0,0.33333333333333331\n0.5,2\n");
}
