#include "vertexlab/airy.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "vertexlab/double_double.hpp"
#include "vertexlab/errors.hpp"

namespace vertexlab::airy {
namespace {

constexpr double kPi = std::numbers::pi;

// Ai(0) and -Ai'(0) to double-double precision.
const dd::Real kAi0{0.3550280538878172, 2.05233632436212e-17};
const dd::Real kMinusAiPrime0{0.2588194037928068, -2.522243111610832e-17};

constexpr int kMaxAsymptoticTerms = 48;

struct AsymptoticCoefficients {
  std::array<double, kMaxAsymptoticTerms> u{};
  std::array<double, kMaxAsymptoticTerms> v{};
};

// u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!),  v_k = -(6k+1)/(6k-1) u_k.
AsymptoticCoefficients make_coefficients() {
  AsymptoticCoefficients c;
  c.u[0] = 1.0;
  c.v[0] = 1.0;
  for (int k = 1; k < kMaxAsymptoticTerms; ++k) {
    // u_k / u_{k-1} = (6k-5)(6k-3)(6k-1) / (216 k (2k-1))
    c.u[k] = c.u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             (216.0 * k * (2.0 * k - 1.0));
    c.v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * c.u[k];
  }
  return c;
}

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients c = make_coefficients();
  return c;
}

// Sum of (-1)^k c_k zeta^-k with the parity filter used by the oscillatory
// form, truncated at the smallest term.
struct SeriesPair {
  Complex even;  // sum (-1)^k c_{2k} zeta^{-2k}
  Complex odd;   // sum (-1)^k c_{2k+1} zeta^{-2k-1}
};

SeriesPair split_series(const std::array<double, kMaxAsymptoticTerms>& c, Complex zeta) {
  const Complex inv = 1.0 / zeta;
  Complex power = 1.0;
  SeriesPair s{0.0, 0.0};
  double previous = INFINITY;
  for (int k = 0; k < kMaxAsymptoticTerms; ++k) {
    const Complex term = c[k] * power;
    const double mag = std::abs(term);
    if (k > 1 && mag > previous) break;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      s.even += sign * term;
    } else {
      s.odd += sign * term;
    }
    if (mag < 1e-18 * (std::abs(s.even) + std::abs(s.odd))) break;
    previous = mag;
    power *= inv;
  }
  return s;
}

Complex alternating_series(const std::array<double, kMaxAsymptoticTerms>& c, Complex zeta) {
  const Complex inv = -1.0 / zeta;
  Complex power = 1.0;
  Complex sum = 0.0;
  double previous = INFINITY;
  for (int k = 0; k < kMaxAsymptoticTerms; ++k) {
    const Complex term = c[k] * power;
    const double mag = std::abs(term);
    if (k > 1 && mag > previous) break;
    sum += term;
    if (mag < 1e-18 * std::abs(sum)) break;
    previous = mag;
    power *= inv;
  }
  return sum;
}

}  // namespace

AiryPair airy_series(Complex z) {
  // Ai = Ai(0) f - (-Ai'(0)) g with f, g the two Maclaurin solutions; all
  // terms carried in double-double so the cancellation on the positive real
  // axis does not eat the result.
  const dd::Complex zc(z);
  const dd::Complex z3 = zc * zc * zc;

  dd::Complex f_term(dd::Real(1.0), dd::Real(0.0));
  dd::Complex g_term = zc;
  dd::Complex fp_term = zc * zc / 2.0;  // derivative series of f starts at z^2/2
  dd::Complex gp_term(dd::Real(1.0), dd::Real(0.0));

  dd::Complex f = f_term;
  dd::Complex g = g_term;
  dd::Complex fp = fp_term;
  dd::Complex gp = gp_term;

  double largest = 1.0 + std::abs(z);
  for (int k = 1; k < 400; ++k) {
    f_term = z3 * f_term / ((3.0 * k - 1.0) * (3.0 * k));
    g_term = z3 * g_term / ((3.0 * k) * (3.0 * k + 1.0));
    if (k >= 2) fp_term = z3 * fp_term / ((3.0 * k - 3.0) * (3.0 * k - 1.0));
    gp_term = z3 * gp_term / ((3.0 * k - 2.0) * (3.0 * k));
    f = f + f_term;
    g = g + g_term;
    if (k >= 2) fp = fp + fp_term;
    gp = gp + gp_term;
    const double mag = dd::abs_approx(f_term) + dd::abs_approx(g_term) +
                       dd::abs_approx(fp_term) + dd::abs_approx(gp_term);
    largest = std::max(largest, mag);
    if (mag < 1e-34 * largest) break;
  }

  const dd::Complex ai = f * kAi0 - g * kMinusAiPrime0;
  const dd::Complex aip = fp * kAi0 - gp * kMinusAiPrime0;
  return {ai.to_complex(), aip.to_complex()};
}

AiryPair airy_asymptotic(Complex z) {
  const auto& c = coefficients();
  const double sqrt_pi = std::sqrt(kPi);
  if (std::abs(std::arg(z)) <= 2.0 * kPi / 3.0) {
    const Complex root = std::sqrt(z);
    const Complex zeta = (2.0 / 3.0) * z * root;
    const Complex quarter = std::sqrt(root);
    const Complex e = std::exp(-zeta);
    const Complex ai = e / (2.0 * sqrt_pi * quarter) * alternating_series(c.u, zeta);
    const Complex aip = -quarter * e / (2.0 * sqrt_pi) * alternating_series(c.v, zeta);
    return {ai, aip};
  }
  // Oscillatory form for Ai(-w), |arg w| < pi/3.
  const Complex w = -z;
  const Complex root = std::sqrt(w);
  const Complex zeta = (2.0 / 3.0) * w * root;
  const Complex quarter = std::sqrt(root);
  const Complex phase = zeta - kPi / 4.0;
  const Complex cs = std::cos(phase);
  const Complex sn = std::sin(phase);
  const SeriesPair su = split_series(c.u, zeta);
  const SeriesPair sv = split_series(c.v, zeta);
  const Complex ai = (cs * su.even + sn * su.odd) / (sqrt_pi * quarter);
  const Complex aip = quarter / sqrt_pi * (sn * sv.even - cs * sv.odd);
  return {ai, aip};
}

namespace {
AiryPair airy_unchecked(Complex z) {
  return std::abs(z) < kSwitchRadius ? airy_series(z) : airy_asymptotic(z);
}
}  // namespace

AiryPair airy_pair(Complex z) {
  if (!(std::abs(z) <= kMaxModulus)) {
    throw DomainError("airy: |z| = " + std::to_string(std::abs(z)) +
                      " outside the evaluation domain |z| <= 50");
  }
  return airy_unchecked(z);
}

Complex airy_ai(Complex z) { return airy_pair(z).ai; }
Complex airy_ai_prime(Complex z) { return airy_pair(z).ai_prime; }

AiryZeroTable::AiryZeroTable(std::vector<double> zeros, std::vector<double> derivs)
    : zeros_(std::move(zeros)), derivs_(std::move(derivs)) {}

double zero_seed(int n) {
  const double t = 3.0 * kPi * (4.0 * n - 1.0) / 8.0;
  return -std::pow(t, 2.0 / 3.0);
}

AiryZeroTable airy_zeros(int n_max) {
  if (n_max < 1 || n_max > 200) {
    throw DomainError("airy_zeros: n_max must lie in [1, 200]");
  }
  // Zeros beyond |z| = 50 (n > ~75) are evaluated with the unchecked
  // oscillatory expansion, which only improves with modulus.
  auto ai_real = [](double x) { return airy_unchecked(Complex(x, 0.0)); };

  std::vector<double> zeros;
  std::vector<double> derivs;
  zeros.reserve(n_max);
  derivs.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double seed = zero_seed(n);
    const double spacing = kPi / std::sqrt(std::fabs(seed));
    double lo = seed - 0.3 * spacing;
    double hi = seed + 0.3 * spacing;
    double f_lo = ai_real(lo).ai.real();
    double f_hi = ai_real(hi).ai.real();
    if (f_lo * f_hi > 0.0) {
      throw ConvergenceError("airy_zeros: no sign change around seed for zero " +
                                 std::to_string(n), n);
    }
    double x = seed;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      const AiryPair v = ai_real(x);
      const double f = v.ai.real();
      const double fp = v.ai_prime.real();
      if ((f < 0.0) == (f_lo < 0.0)) {
        lo = x;
      } else {
        hi = x;
      }
      double next = x - f / fp;
      // Newton leaving the bracket falls back to bisection.
      if (!(next > std::min(lo, hi) && next < std::max(lo, hi))) {
        next = 0.5 * (lo + hi);
      }
      const double step = std::fabs(next - x);
      x = next;
      if (step <= 4e-16 * std::fabs(x)) {
        converged = true;
        break;
      }
    }
    const AiryPair at = ai_real(x);
    if (!converged && std::fabs(at.ai.real()) >= 1e-12) {
      throw ConvergenceError("airy_zeros: Newton refinement failed for zero " +
                                 std::to_string(n), n);
    }
    if (std::fabs(at.ai.real()) >= 1e-12) {
      throw ConvergenceError("airy_zeros: residual above 1e-12 for zero " +
                                 std::to_string(n), n);
    }
    zeros.push_back(x);
    derivs.push_back(at.ai_prime.real());
  }
  return AiryZeroTable(std::move(zeros), std::move(derivs));
}

}  // namespace vertexlab::airy
