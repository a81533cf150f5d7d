#pragma once

// Shared value types for alpha-Kakutani substitution tilings of the line.
//
// A tile length is always of the form alpha^a * (1 - alpha)^b relative to the
// unit prototile, so lengths are stored as integer exponent pairs and
// positions as integer combinations of such monomials. Reals only appear when
// a value is evaluated for output.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kakutani {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr const char* kVersion = "kakutani 1.0.0";

/// Invalid parameters (alpha out of range, non-coprime ratios, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap (tile count, scan points) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative numeric method failed to meet its tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The split parameter, normalized to min{alpha, 1 - alpha}.
class AlphaParam {
 public:
  static constexpr double kDefaultTolerance = 1e-14;

  /// Throws ParameterError unless 0 < value <= 1/2.
  explicit AlphaParam(double value, double tolerance = kDefaultTolerance);

  /// Accepts any value in (0, 1) and folds it onto (0, 1/2].
  static AlphaParam normalized(double value, double tolerance = kDefaultTolerance);

  double value() const noexcept { return value_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  double value_;
  double tolerance_;
};

/// r_alpha = n/m with gcd(n, m) = 1 and n >= m.
struct Commensurable {
  int n = 1;
  int m = 1;
  friend bool operator==(const Commensurable&, const Commensurable&) = default;
};

/// r_alpha matched no rational with denominator up to the search bound.
struct Incommensurable {
  double r = 0.0;
};

using RatioClass = std::variant<Commensurable, Incommensurable>;

/// Length alpha^a * (1 - alpha)^b. (0, 0) is the unit prototile.
struct LengthExponent {
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  LengthExponent left_child() const noexcept { return {a + 1, b}; }
  LengthExponent right_child() const noexcept { return {a, b + 1}; }
  std::uint32_t depth() const noexcept { return a + b; }

  friend auto operator<=>(const LengthExponent&, const LengthExponent&) = default;
};

/// A finite sum  sum_k c_k * alpha^{a_k} (1 - alpha)^{b_k}  with integer
/// coefficients. Terms are kept sorted by exponent with no zero coefficients.
///
/// Two positions can be structurally different and still denote the same
/// number, since alpha + (1 - alpha) = 1. `same_value` decides equality for
/// every alpha at once by expanding both sides in Z[alpha].
class ExactPosition {
 public:
  using Term = std::pair<LengthExponent, std::int64_t>;

  ExactPosition() = default;
  static ExactPosition monomial(LengthExponent e, std::int64_t coefficient = 1);

  ExactPosition& add(LengthExponent e, std::int64_t coefficient = 1);
  ExactPosition& operator+=(const ExactPosition& other);
  ExactPosition& operator-=(const ExactPosition& other);
  friend ExactPosition operator+(ExactPosition lhs, const ExactPosition& rhs) { return lhs += rhs; }
  friend ExactPosition operator-(ExactPosition lhs, const ExactPosition& rhs) { return lhs -= rhs; }

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  double evaluate(double alpha) const;

  /// Coefficients of the same quantity as a polynomial in alpha, constant
  /// term first, trailing zeros stripped.
  std::vector<BigInt> in_alpha_basis() const;

  /// Structural equality (identical term lists).
  friend bool operator==(const ExactPosition&, const ExactPosition&) = default;

 private:
  std::vector<Term> terms_;
};

/// True iff a and b are equal as polynomials in alpha.
bool same_value(const ExactPosition& a, const ExactPosition& b);

struct Tile {
  ExactPosition position;  // offset from the patch anchor, in units of the patch scale
  LengthExponent length;
  std::optional<int> label;
};

/// Contiguous tiles on [anchor, anchor + scale]. Tile positions and lengths
/// are exact and relative to `scale`; `anchor` and `scale` are the only reals.
struct Patch {
  double alpha = 0.5;
  double anchor = 0.0;
  double scale = 1.0;
  std::vector<Tile> tiles;

  double left() const noexcept { return anchor; }
  double right() const noexcept { return anchor + scale; }
  double tile_left(std::size_t i) const;
  double tile_length(std::size_t i) const;
};

// Parameter arithmetic

/// The unique alpha in (0, 1/2] with alpha^m = (1 - alpha)^n.
double solve_alpha(int n, int m);

/// log(alpha) / log(1 - alpha).
double r_of_alpha(double alpha);

/// Relative mismatch |1 - (1 - alpha)^n / alpha^m| of the relation alpha^m = (1 - alpha)^n.
double commensurability_residual(double alpha, int n, int m);

/// Bounded search over the continued-fraction convergents of r_alpha. This is
/// a heuristic: a double cannot certify that r_alpha is irrational. Callers
/// who know (n, m) should construct Commensurable directly.
RatioClass detect_commensurability(const AlphaParam& alpha, int max_denominator);

/// alpha^a (1 - alpha)^b.
double length_value(LengthExponent e, double alpha);

/// Validates a ratio: n >= m >= 1 and gcd(n, m) = 1.
void require_coprime_ratio(int n, int m);

std::string to_string(const RatioClass& cls);

}  // namespace kakutani
