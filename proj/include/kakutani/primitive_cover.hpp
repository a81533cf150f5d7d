#pragma once

// Fixed-scale primitive substitutions that cover commensurable Kakutani
// rules. For r_alpha = n/m the two loops of G_alpha are cut into n and m
// edges of equal length g = log(1/alpha)/n; every vertex of the refined graph
// becomes a labelled prototile and every edge a child in the substitution.
//
// All prototile lengths are powers of y = 1/xi = alpha^{1/n}, so positions
// are integer polynomials in y, reduced modulo the relation sum_i y^{L_i} = 1
// when an exact comparison is needed.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kakutani/core.hpp"
#include "kakutani/polynomial.hpp"

namespace kakutani {

struct ChildPlacement {
  int label = 1;         // 1-based prototile label
  IntPolynomial offset;  // left end inside the parent, polynomial in y, prototile units
};

/// Substitution on the vertices of a one-vertex graph whose loops are cut
/// into `loops[i]` equal edges. Vertex 1 is the unit prototile I; the new
/// vertices of loop 0 come next, then those of loop 1, and so on.
struct PrimitiveRule {
  std::vector<int> loops;
  double y = 0.5;   // contraction 1/xi
  double xi = 2.0;  // inflation constant
  std::vector<std::uint32_t> length_power;         // |T_j| = y^{length_power[j - 1]}
  std::vector<std::vector<ChildPlacement>> image;  // rho(T_j), left to right
  IntPolynomial relation;                          // sum_i y^{loops[i]} - 1

  int size() const noexcept { return static_cast<int>(length_power.size()); }
  double prototile_length(int label) const;
};

/// Square non-negative integer matrix; entry (i, j) counts copies of
/// xi^{-1} T_i in rho(T_j). Indices are 0-based here.
class SubstitutionMatrix {
 public:
  explicit SubstitutionMatrix(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * size_ + j]; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return entries_[i * size_ + j]; }
  const std::vector<std::int64_t>& row_major() const noexcept { return entries_; }

  /// 1^T M.
  std::vector<std::int64_t> column_sums() const;

  friend bool operator==(const SubstitutionMatrix&, const SubstitutionMatrix&) = default;

 private:
  std::size_t size_;
  std::vector<std::int64_t> entries_;
};

/// The cover rho_alpha for r_alpha = n/m, n > m >= 1 coprime.
PrimitiveRule build_rho(int n, int m);

/// The rule for an arbitrary loop list, e.g. {n, m, k} for three intervals.
PrimitiveRule build_loop_rule(std::vector<int> loops);

SubstitutionMatrix substitution_matrix(const PrimitiveRule& rule);

/// det(xI - M) in exact integer arithmetic (Faddeev-LeVerrier; every
/// division in the recurrence is exact).
IntPolynomial char_poly(const SubstitutionMatrix& matrix);

/// Smallest ell <= limit with M^ell entrywise positive.
std::optional<int> primitivity_index(const SubstitutionMatrix& matrix, int limit);

/// M^ell e_1: prototile counts in (xi rho)^ell(I), by repeated squaring.
std::vector<BigInt> tile_counts(const SubstitutionMatrix& matrix, std::uint32_t ell);

struct LabelledTile {
  IntPolynomial position;  // in y, relative to the support [0, xi^level] scaled to [0, 1]
  std::uint32_t power = 0;  // length is y^power in the same normalized units
  int label = 1;
};

/// The labelled patch (xi rho)^level(I) on [0, xi^level].
struct LabelledPatch {
  std::uint32_t level = 0;
  double y = 0.5;
  std::vector<LabelledTile> tiles;

  double right() const;
  double tile_left(std::size_t i) const;
  double tile_length(std::size_t i) const;
};

struct IterateOptions {
  std::uint64_t max_tiles = 100'000'000;
};

LabelledPatch iterate_primitive(const PrimitiveRule& rule, std::uint32_t ell, const IterateOptions& options = {});

struct CoverReport {
  bool agree = false;
  std::uint32_t ell = 0;
  std::size_t kakutani_tiles = 0;
  std::size_t primitive_tiles = 0;
  std::optional<std::size_t> first_mismatch;
  std::string detail;
};

/// Builds F_{ell g}(I) with the engine and (xi rho)^ell(I) by substitution
/// and compares tile lengths and boundaries exactly, labels forgotten.
CoverReport verify_cover(int n, int m, std::uint32_t ell, const IterateOptions& options = {});

/// Three-interval rule: loops of n >= m >= k edges, gcd(n, m, k) = 1.
struct ThreeIntervalRule {
  PrimitiveRule rule;
  SubstitutionMatrix matrix{1};
  IntPolynomial f;                       // x^n - x^{n-m} - x^{n-k} - 1
  std::array<int, 3> length_exponents;   // interval i has length xi^{-length_exponents[i]}
  std::array<double, 3> lengths{};       // left to right
};

ThreeIntervalRule build_three_interval_rule(int n, int m, int k);

}  // namespace kakutani
