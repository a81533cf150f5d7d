#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "kakutani/core.hpp"

namespace kakutani {

/// Dense polynomial with arbitrary-precision integer coefficients, constant
/// term first. The zero polynomial has no coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);
  IntPolynomial(std::initializer_list<long long> coefficients);

  /// c * x^k
  static IntPolynomial monomial(std::size_t k, const BigInt& c = 1);
  /// Sum of signed monomials {(power, coefficient), ...}.
  static IntPolynomial from_terms(std::initializer_list<std::pair<std::size_t, long long>> terms);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  BigInt coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }
  const BigInt& leading() const;

  /// Number of nonzero coefficients.
  std::size_t term_count() const;

  /// Largest k with x^k dividing the polynomial.
  std::size_t x_valuation() const;
  IntPolynomial without_x_power() const;

  IntPolynomial& operator+=(const IntPolynomial& rhs);
  IntPolynomial& operator-=(const IntPolynomial& rhs);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  IntPolynomial shifted(std::size_t k) const;  // multiply by x^k

  /// Long division by a divisor whose leading coefficient is +1 or -1, so the
  /// quotient and remainder stay integral. Returns {quotient, remainder}.
  std::pair<IntPolynomial, IntPolynomial> divmod(const IntPolynomial& divisor) const;
  IntPolynomial mod(const IntPolynomial& divisor) const { return divmod(divisor).second; }
  bool divisible_by(const IntPolynomial& divisor) const { return mod(divisor).is_zero(); }

  IntPolynomial derivative() const;

  std::complex<long double> evaluate(std::complex<long double> z) const;
  long double evaluate(long double x) const;

  /// True iff the polynomial is exactly x^a - x^b - 1 for some a > b > 0.
  bool is_kakutani_trinomial() const;

  /// "x^4 - x^2 - x" style rendering.
  std::string to_string(char var = 'x') const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// The j-th cyclotomic polynomial, j >= 1.
IntPolynomial cyclotomic(int j);

}  // namespace kakutani
