#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vertexlab/constants.hpp"
#include "vertexlab/errors.hpp"
#include "vertexlab/grenander.hpp"
#include "vertexlab/hull_oracle.hpp"

using namespace vertexlab;
using namespace vertexlab::grenander;

namespace {

bool same_vertices(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].x != b[i].x || a[i].y != b[i].y) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("inverse cdfs") {
  const auto tri = triangular();
  CHECK(tri.inverse_cdf(0.0) == 0.0);
  CHECK(tri.inverse_cdf(0.75) == doctest::Approx(0.5).epsilon(1e-15));
  const auto ex = exponential();
  CHECK(ex.inverse_cdf(1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& m : {tri, ex}) {
    double prev = -1.0;
    for (double q = 0.0; q < 1.0; q += 0.01) {
      const double x = m.inverse_cdf(q);
      CHECK(x > prev);
      CHECK(m.pdf_deriv(x) < 0.0);
      prev = x;
    }
  }
  CHECK(model_by_name("triangular").name == "triangular");
  CHECK_THROWS_AS(model_by_name("uniform"), ConfigError);
}

TEST_CASE("sorted samples stay in the support") {
  Rng rng(11, 0);
  const auto x = sample_sorted(triangular(), 500, rng);
  REQUIRE(x.size() == 500);
  CHECK(std::is_sorted(x.begin(), x.end()));
  CHECK(x.front() >= 0.0);
  CHECK(x.back() < 1.0);
}

TEST_CASE("hull of three points matches the oracle") {
  const std::vector<double> x{0.2, 0.5, 0.9};
  const auto hull = lcm_empirical(x);
  CHECK(same_vertices(hull.vertices, brute_force_upper_hull(x)));
  CHECK(grenander_jump_count(x) == int(brute_force_upper_hull(x).size()) - 1);
  CHECK(hull.vertices.front().x == 0.0);
  CHECK(hull.vertices.back().x == 0.9);
  CHECK(hull.vertices.back().y == 1.0);
}

TEST_CASE("single point") {
  const std::vector<double> x{0.37};
  const auto hull = lcm_empirical(x);
  REQUIRE(hull.vertices.size() == 2);
  CHECK(hull.vertices[1].x == 0.37);
  CHECK(hull.vertices[1].y == 1.0);
  CHECK(hull.segments() == 1);
}

TEST_CASE("collinear sample has one segment") {
  for (int n : {2, 7, 10, 100, 1000}) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[std::size_t(i)] = double(i + 1) / n;
    INFO("n = " << n);
    CHECK(lcm_empirical(x).vertices.size() == 2);
    CHECK(grenander_jump_count(x) == 1);
  }
}

TEST_CASE("duplicate abscissas keep the highest ordinate") {
  const std::vector<double> x{0.1, 0.4, 0.4, 0.4, 0.8};
  const auto hull = lcm_empirical(x);
  for (std::size_t i = 1; i < hull.vertices.size(); ++i) CHECK(hull.vertices[i].x > hull.vertices[i - 1].x);
  const auto at = std::find_if(hull.vertices.begin(), hull.vertices.end(), [](const Vertex& v) { return v.x == 0.4; });
  REQUIRE(at != hull.vertices.end());
  CHECK(at->y == 0.8);
  CHECK(same_vertices(hull.vertices, brute_force_upper_hull(x)));
}

TEST_CASE("hull agrees with the exhaustive oracle") {
  int mismatches = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    Rng rng(2024, k);
    const int n = 1 + int(rng.bits() % 12);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.uniform();
    std::sort(x.begin(), x.end());
    if (!same_vertices(lcm_empirical(x).vertices, brute_force_upper_hull(x))) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("majorant property and concavity") {
  Rng rng(33, 0);
  const auto x = sample_sorted(exponential(), 2000, rng);
  const auto hull = lcm_empirical(x);
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(hull(x[i]) >= double(i + 1) / n - 1e-12);
  for (const auto& v : hull.vertices) {
    if (v.x == 0.0) continue;
    const auto it = std::upper_bound(x.begin(), x.end(), v.x);
    CHECK(v.y == double(it - x.begin()) / n);
  }
  double slope = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < hull.vertices.size(); ++i) {
    const double s = (hull.vertices[i].y - hull.vertices[i - 1].y) / (hull.vertices[i].x - hull.vertices[i - 1].x);
    REQUIRE(s < slope);
    slope = s;
  }
  CHECK(grenander_jump_count(x) <= int(x.size()));
}

TEST_CASE("expected segments of a uniform sample are harmonic numbers") {
  // For uniform samples the majorant of the empirical df has H_n segments on average.
  const int n = 100;
  const int reps = 5000;
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    Rng rng(44, std::uint64_t(r));
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform();
    std::sort(x.begin(), x.end());
    const double c = grenander_jump_count(x);
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  CHECK(std::fabs(mean - h) < 3.0 * se);
}

TEST_CASE("orientation predicate") {
  CHECK(orientation(0, 0, 1, 1, 2, 3) > 0);
  CHECK(orientation(0, 0, 1, 1, 2, 1) < 0);
  CHECK(orientation(0, 0, 0.1, 1, 0.3, 3) == 0);
  CHECK(orientation(0, 0, 1.0 / 3.0, 1, 2.0 / 3.0, 2) == 0);
}

TEST_CASE("theory coefficients") {
  CHECK(std::fabs(theory_coefficient(triangular()) - 3.0 * std::pow(4.0, -2.0 / 3.0)) < 1e-9);
  CHECK(std::fabs(theory_coefficient(exponential()) - 3.0 * std::pow(2.0, -2.0 / 3.0)) < 1e-9);
  CHECK(std::fabs(theory_coefficient(triangular()) - 1.19055) < 1e-5);
  CHECK(std::fabs(theory_coefficient(exponential()) - 1.88988) < 1e-5);
  const double k1 = constants::kK1Reference;
  CHECK(std::fabs(k1 * theory_coefficient(triangular()) - 2.51) < 5e-4);
  CHECK(std::fabs(k1 * theory_coefficient(exponential()) - 3.98477) < 5e-4);

  DecreasingDensity flat = triangular();
  flat.name = "flat";
  flat.pdf = [](double) { return 1.0; };
  flat.pdf_deriv = [](double) { return 0.0; };
  CHECK_THROWS_AS(theory_coefficient(flat), DomainError);
}

TEST_CASE("local scaling constants") {
  // Triangular: g(a) = 1 - a/2, f' = -2, so c1 = (8a)^{1/3}, c2 = (1/a)^{1/3}.
  const auto tri = triangular();
  CHECK(local_scale_c1(tri, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(local_scale_c2(tri, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  // c1 c2 = |f'(g(a))| at every level.
  CHECK(local_scale_c1(tri, 0.5) * local_scale_c2(tri, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  const auto ex = exponential();
  CHECK(local_scale_c1(ex, 0.3) * local_scale_c2(ex, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("Monte Carlo study bookkeeping") {
  const auto r = mc_jump_study(triangular(), 200, 50, 9, 2);
  REQUIRE(r.counts.size() == 50);
  double mean = 0.0;
  for (int c : r.counts) mean += c;
  mean /= 50.0;
  CHECK(r.mean_coeff == doctest::Approx(mean / std::cbrt(200.0)).epsilon(1e-14));
  CHECK(r.mean_coeff > 0.0);
  CHECK(r.var_coeff > 0.0);
  const auto again = mc_jump_study(triangular(), 200, 50, 9, 1);
  CHECK(again.counts == r.counts);
  CHECK_THROWS(mc_jump_study(triangular(), 0, 50, 9));
}

TEST_CASE("triangular mean coefficient at n = 1000 lies in (2.4, 2.51)") {
  const auto r = mc_jump_study(triangular(), 1000, 1000, 20240601);
  INFO("mean_coeff = " << r.mean_coeff << " +- " << r.mean_se);
  CHECK(r.mean_coeff > 2.4);
  CHECK(r.mean_coeff < 2.51);
}

TEST_CASE("triangular mean coefficient increases toward the asymptote") {
  const auto small = mc_jump_study(triangular(), 100, 2000, 5);
  const auto large = mc_jump_study(triangular(), 10000, 300, 5);
  CHECK(small.mean_coeff < large.mean_coeff);
  CHECK(large.mean_coeff < constants::kK1Reference * theory_coefficient(triangular()));
}
