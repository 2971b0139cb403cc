#pragma once

#include <complex>
#include <vector>

namespace vertexlab {

using Complex = std::complex<double>;

namespace airy {

/// Largest modulus accepted by the public evaluators.
inline constexpr double kMaxModulus = 50.0;
/// Below this modulus the Maclaurin series is used, above it the asymptotic expansions.
inline constexpr double kSwitchRadius = 8.0;

struct AiryPair {
  Complex ai;
  Complex ai_prime;
};

/// Ai(z) and Ai'(z) together. Throws DomainError for |z| > kMaxModulus.
AiryPair airy_pair(Complex z);

Complex airy_ai(Complex z);
Complex airy_ai_prime(Complex z);

/// Branch-specific evaluators, exposed so the two branches can be compared
/// on their overlap. Neither checks the domain.
AiryPair airy_series(Complex z);
AiryPair airy_asymptotic(Complex z);

/// Zeros of Ai on the negative half line together with Ai' there.
class AiryZeroTable {
 public:
  AiryZeroTable() = default;
  AiryZeroTable(std::vector<double> zeros, std::vector<double> derivs);

  std::size_t size() const { return zeros_.size(); }
  /// n-th zero, 1-based as in the usual numbering a_1 > a_2 > ...
  double zero(std::size_t n) const { return zeros_.at(n - 1); }
  double deriv(std::size_t n) const { return derivs_.at(n - 1); }
  const std::vector<double>& zeros() const { return zeros_; }
  const std::vector<double>& derivs() const { return derivs_; }

 private:
  std::vector<double> zeros_;
  std::vector<double> derivs_;
};

/// The asymptotic seed -(3*pi*(4n-1)/8)^(2/3) for the n-th zero.
double zero_seed(int n);

/// First n_max zeros (n_max <= 200), refined by safeguarded Newton iteration to
/// |Ai| < 1e-12. Throws ConvergenceError carrying the failing index.
AiryZeroTable airy_zeros(int n_max);

}  // namespace airy
}  // namespace vertexlab
