#pragma once

// Spectral side of the spreadness decision: roots of integer polynomials,
// exact detection of roots on the unit circle, Perron/second-eigenvalue data
// of substitution matrices and the resulting verdicts.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "kakutani/core.hpp"
#include "kakutani/polynomial.hpp"
#include "kakutani/primitive_cover.hpp"

namespace kakutani {

/// x^n - x^{n-m} - 1.
IntPolynomial f_alpha_poly(int n, int m);

struct Root {
  std::complex<double> value;
  double residual = 0.0;  // |p(value)|

  double modulus() const { return std::abs(value); }
};

/// All complex roots of p (degree >= 1), by Aberth-Ehrlich iteration from
/// equally spaced points on the Cauchy-bound circle, then per-root Newton
/// polishing. Sorted by decreasing modulus. Throws NumericError when some
/// root misses |p(z)| < 1e-12 (1 + |z|)^deg.
std::vector<Root> find_roots(const IntPolynomial& p);

struct UnitCircleFactors {
  std::vector<int> cyclotomic_indices;  // j with Phi_j | p (with multiplicity)
  IntPolynomial cofactor;               // p / prod Phi_j

  bool found() const noexcept { return !cyclotomic_indices.empty(); }
};

/// For x^a - x^b - 1 only Phi_6 = x^2 - x + 1 can contribute unit-modulus
/// roots; every other polynomial is tested against Phi_j for j <= bound.
UnitCircleFactors unit_circle_factors(const IntPolynomial& p, int cyclotomic_bound = 60);

inline bool has_unit_circle_factor(const IntPolynomial& p, int cyclotomic_bound = 60) {
  return unit_circle_factors(p, cyclotomic_bound).found();
}

/// x^n - x^{n-m} - 1 is one of the four PV trinomials.
bool is_pv_trinomial(int n, int m);

/// Whether the eigenspace of lambda has a vector with nonzero coordinate
/// sum, |1^T v| > 1e-9 |v|. Throws ParameterError if lambda is not an
/// eigenvalue of M to within tolerance.
bool eigenspace_not_perp(const SubstitutionMatrix& matrix, std::complex<double> lambda);

enum class Solomon { Spread, NotSpread, Boundary };

std::string to_string(Solomon s);

struct SpectralOptions {
  double delta = 1e-9;  // band around |z| = 1 handed to the exact test
  int cyclotomic_bound = 60;
};

struct SpectralReport {
  IntPolynomial char_poly;
  IntPolynomial reduced;  // char_poly with its x-power removed
  std::vector<Root> roots;  // nonzero eigenvalues, decreasing modulus
  double lambda1 = 0.0;
  double lambda2_modulus = 0.0;
  int ell = 0;  // 1-based index of the first lambda_l (l >= 2) not orthogonal to 1; 0 if none
  double lambda_ell_modulus = 0.0;
  bool has_unit_modulus_eigenvalue = false;  // exact
  UnitCircleFactors unit_factors;
  Solomon solomon = Solomon::Boundary;
  bool unresolved = false;  // |lambda_ell| within delta of 1 but no exact factor found
};

SpectralReport solomon_verdict(const SubstitutionMatrix& matrix, const SpectralOptions& options = {});

enum class Reason {
  Lattice,
  Incommensurable,
  PvPolynomial,
  SecondEigenvalueOutside,
  UnitCircleBoundary,
  Unresolved,
};

std::string to_string(Reason r);

struct SpreadVerdict {
  RatioClass ratio;
  bool theorem_verdict = false;  // r in {1, 3/2, 2, 3, 4}
  std::optional<SpectralReport> spectral;
  Reason reason = Reason::Incommensurable;
  /// False when the spectral verdict is Boundary or disagrees with the theorem verdict.
  bool consistent = true;
  std::string note;
};

/// True iff n/m is one of 1, 3/2, 2, 3, 4.
bool in_spread_set(int n, int m);

SpreadVerdict classify_spreadness(const RatioClass& cls, const SpectralOptions& options = {});

enum class PvFamily {
  Sporadic,        // x^5 - x^4 - x^2 - 1
  TwoLeading,      // x^d - 2x^{d-1} - 1, d >= 1
  OddTribonacci,   // x^d - x^{d-1} - x^{d-2} - 1, odd d >= 3
};

std::string to_string(PvFamily f);

/// Exact coefficient match against the three-interval PV list.
std::optional<PvFamily> match_pv_family(const IntPolynomial& f);

struct ThreeIntervalVerdict {
  ThreeIntervalRule rule;
  std::optional<PvFamily> pv_family;
  bool listed_spread = false;
  SpectralReport spectral;
  bool agree = false;  // list membership agrees with solomon == Spread
};

ThreeIntervalVerdict classify_three_interval(int n, int m, int k, const SpectralOptions& options = {});

}  // namespace kakutani
