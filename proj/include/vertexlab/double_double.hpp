#pragma once

// Unevaluated-sum ("double-double") arithmetic, roughly 32 significant digits.
// Used where a power series cancels heavily in plain double precision.

#include <cmath>
#include <complex>

namespace vertexlab::dd {

struct Real {
  double hi = 0.0;
  double lo = 0.0;

  constexpr Real() = default;
  constexpr Real(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  constexpr Real(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

inline Real two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline Real quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Real two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Real operator+(Real a, Real b) {
  Real s = two_sum(a.hi, b.hi);
  Real t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline Real operator-(Real a) { return {-a.hi, -a.lo}; }
inline Real operator-(Real a, Real b) { return a + (-b); }

inline Real operator*(Real a, Real b) {
  Real p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline Real operator*(Real a, double b) {
  Real p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

inline Real operator/(Real a, double b) {
  const double q1 = a.hi / b;
  Real r = a - two_prod(q1, b);
  const double q2 = r.hi / b;
  r = r - two_prod(q2, b);
  const double q3 = r.hi / b;
  return Real(quick_two_sum(q1, q2)) + Real(q3);
}

inline double abs_approx(Real a) { return std::fabs(a.hi); }

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r, Real i) : re(r), im(i) {}
  explicit Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Complex& a, Real s) { return {a.re * s, a.im * s}; }
inline Complex operator/(const Complex& a, double s) { return {a.re / s, a.im / s}; }

inline double abs_approx(const Complex& a) { return std::hypot(a.re.hi, a.im.hi); }

}  // namespace vertexlab::dd
