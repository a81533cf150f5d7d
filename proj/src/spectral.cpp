#include "kakutani/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

namespace kakutani {

namespace {

using cld = std::complex<long double>;

constexpr double kPerpTolerance = 1e-9;
constexpr double kEigenTolerance = 1e-8;

}  // namespace

IntPolynomial f_alpha_poly(int n, int m) {
  require_coprime_ratio(n, m);
  if (n == m) throw ParameterError("f_alpha needs n > m");
  return IntPolynomial::monomial(static_cast<std::size_t>(n)) -
         IntPolynomial::monomial(static_cast<std::size_t>(n - m)) - IntPolynomial{1};
}

std::vector<Root> find_roots(const IntPolynomial& p) {
  const int deg = p.degree();
  if (deg < 1) throw ParameterError("find_roots needs a polynomial of degree >= 1");
  const IntPolynomial dp = p.derivative();
  const long double lead = p.leading().convert_to<long double>();

  long double bound = 0.0L;
  for (int i = 0; i < deg; ++i) {
    bound = std::max(bound, std::abs(p.coefficient(static_cast<std::size_t>(i)).convert_to<long double>() / lead));
  }
  const long double radius = 1.0L + bound;

  // Fixed rotation keeps the start points off the real axis and off any
  // symmetry line of the polynomial, and makes runs reproducible.
  constexpr long double kRotation = 0.4L;
  std::vector<cld> z(static_cast<std::size_t>(deg));
  for (int k = 0; k < deg; ++k) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * k / deg + kRotation;
    z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }

  bool converged = false;
  for (int iter = 0; iter < 2000 && !converged; ++iter) {
    long double max_step = 0.0L;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const cld pz = p.evaluate(z[k]);
      if (pz == cld(0)) continue;
      const cld dpz = dp.evaluate(z[k]);
      cld repulsion = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != k) repulsion += 1.0L / (z[k] - z[j]);
      }
      const cld ratio = dpz == cld(0) ? cld(1e-3L) : pz / dpz;
      const cld step = ratio / (1.0L - ratio * repulsion);
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0L + std::abs(z[k])));
    }
    converged = max_step < 1e-17L;
  }

  std::vector<Root> roots;
  roots.reserve(z.size());
  for (cld root : z) {
    long double res = std::abs(p.evaluate(root));
    for (int polish = 0; polish < 5 && res > 0.0L; ++polish) {
      const cld dpz = dp.evaluate(root);
      if (dpz == cld(0)) break;
      const cld candidate = root - p.evaluate(root) / dpz;
      const long double cand_res = std::abs(p.evaluate(candidate));
      if (!(cand_res < res)) break;
      root = candidate;
      res = cand_res;
    }
    const double limit = 1e-12 * std::pow(1.0 + static_cast<double>(std::abs(root)), deg);
    if (!(static_cast<double>(res) < limit)) {
      std::ostringstream os;
      os << "find_roots: no convergence for " << p.to_string() << " (residual " << static_cast<double>(res)
         << " at z = " << static_cast<double>(root.real()) << (root.imag() < 0 ? " - " : " + ")
         << static_cast<double>(std::abs(root.imag())) << "i)";
      throw NumericError(os.str());
    }
    roots.push_back(Root{{static_cast<double>(root.real()), static_cast<double>(root.imag())}, static_cast<double>(res)});
  }
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
    const double ma = a.modulus();
    const double mb = b.modulus();
    if (std::abs(ma - mb) > 1e-12 * std::max(1.0, ma)) return ma > mb;
    return a.value.imag() > b.value.imag();
  });
  return roots;
}

UnitCircleFactors unit_circle_factors(const IntPolynomial& p, int cyclotomic_bound) {
  UnitCircleFactors out;
  out.cofactor = p;
  if (p.degree() < 1) return out;
  std::vector<int> candidates;
  if (p.is_kakutani_trinomial()) {
    candidates = {6};
  } else {
    for (int j = 1; j <= cyclotomic_bound; ++j) candidates.push_back(j);
  }
  for (int j : candidates) {
    const IntPolynomial phi = cyclotomic(j);
    while (out.cofactor.degree() >= phi.degree()) {
      auto [q, r] = out.cofactor.divmod(phi);
      if (!r.is_zero()) break;
      out.cofactor = std::move(q);
      out.cyclotomic_indices.push_back(j);
    }
  }
  return out;
}

bool is_pv_trinomial(int n, int m) {
  require_coprime_ratio(n, m);
  const IntPolynomial f = f_alpha_poly(n, m);
  static const IntPolynomial kPv[] = {
      IntPolynomial::from_terms({{2, 1}, {1, -1}, {0, -1}}),
      IntPolynomial::from_terms({{3, 1}, {1, -1}, {0, -1}}),
      IntPolynomial::from_terms({{3, 1}, {2, -1}, {0, -1}}),
      IntPolynomial::from_terms({{4, 1}, {3, -1}, {0, -1}}),
  };
  return std::find(std::begin(kPv), std::end(kPv), f) != std::end(kPv);
}

bool eigenspace_not_perp(const SubstitutionMatrix& matrix, std::complex<double> lambda) {
  const auto k = static_cast<Eigen::Index>(matrix.size());
  Eigen::MatrixXcd shifted(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      shifted(i, j) = static_cast<double>(matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    }
    shifted(i, i) -= lambda;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double scale = std::max(1.0, sigma(0));
  if (!(sigma(k - 1) < kEigenTolerance * scale)) {
    std::ostringstream os;
    os << "eigenspace_not_perp: " << lambda << " is not an eigenvalue (smallest singular value " << sigma(k - 1)
       << ")";
    throw ParameterError(os.str());
  }
  for (Eigen::Index c = k - 1; c >= 0 && sigma(c) < kEigenTolerance * scale; --c) {
    const Eigen::VectorXcd v = svd.matrixV().col(c);
    if (std::abs(v.sum()) > kPerpTolerance * v.norm()) return true;
  }
  return false;
}

std::string to_string(Solomon s) {
  switch (s) {
    case Solomon::Spread: return "spread";
    case Solomon::NotSpread: return "not_spread";
    case Solomon::Boundary: return "boundary";
  }
  return "?";
}

SpectralReport solomon_verdict(const SubstitutionMatrix& matrix, const SpectralOptions& options) {
  SpectralReport report;
  report.char_poly = char_poly(matrix);
  report.reduced = report.char_poly.without_x_power();
  if (report.reduced.degree() < 1) throw ParameterError("solomon_verdict: matrix is nilpotent");
  report.roots = find_roots(report.reduced);

  const Root& perron = report.roots.front();
  if (std::abs(perron.value.imag()) > 1e-9 || perron.value.real() <= 1.0) {
    throw NumericError("solomon_verdict: leading eigenvalue is not a real root above 1");
  }
  report.lambda1 = perron.value.real();
  report.lambda2_modulus = report.roots.size() > 1 ? report.roots[1].modulus() : 0.0;

  for (std::size_t i = 1; i < report.roots.size(); ++i) {
    if (eigenspace_not_perp(matrix, report.roots[i].value)) {
      report.ell = static_cast<int>(i) + 1;
      report.lambda_ell_modulus = report.roots[i].modulus();
      break;
    }
  }

  report.unit_factors = unit_circle_factors(report.reduced, options.cyclotomic_bound);
  report.has_unit_modulus_eigenvalue = report.unit_factors.found();

  if (report.ell == 0) {
    // Every non-leading eigenvalue is invisible to 1: the counts are exact.
    report.solomon = report.has_unit_modulus_eigenvalue ? Solomon::Boundary : Solomon::Spread;
    return report;
  }
  const double mu = report.lambda_ell_modulus;
  if (mu > 1.0 + options.delta) {
    report.solomon = Solomon::NotSpread;
  } else if (mu < 1.0 - options.delta && !report.has_unit_modulus_eigenvalue) {
    report.solomon = Solomon::Spread;
  } else {
    report.solomon = Solomon::Boundary;
    report.unresolved = !report.has_unit_modulus_eigenvalue;
  }
  return report;
}

std::string to_string(Reason r) {
  switch (r) {
    case Reason::Lattice: return "lattice";
    case Reason::Incommensurable: return "incommensurable";
    case Reason::PvPolynomial: return "pv_polynomial";
    case Reason::SecondEigenvalueOutside: return "second_eigenvalue_outside_unit_disk";
    case Reason::UnitCircleBoundary: return "unit_circle_eigenvalue";
    case Reason::Unresolved: return "unresolved_near_unit_circle";
  }
  return "?";
}

bool in_spread_set(int n, int m) {
  require_coprime_ratio(n, m);
  return (n == 1 && m == 1) || (n == 3 && m == 2) || (n == 2 && m == 1) || (n == 3 && m == 1) ||
         (n == 4 && m == 1);
}

SpreadVerdict classify_spreadness(const RatioClass& cls, const SpectralOptions& options) {
  SpreadVerdict verdict;
  verdict.ratio = cls;
  if (std::holds_alternative<Incommensurable>(cls)) {
    verdict.theorem_verdict = false;
    verdict.reason = Reason::Incommensurable;
    verdict.note = "no primitive cover; discrepancy grows without bound";
    return verdict;
  }
  const auto [n, m] = std::get<Commensurable>(cls);
  verdict.theorem_verdict = in_spread_set(n, m);
  if (n == m) {
    // alpha = 1/2: every tile has the same length, the points form a lattice.
    verdict.reason = Reason::Lattice;
    verdict.spectral = solomon_verdict(substitution_matrix(build_loop_rule({1, 1})), options);
    verdict.consistent = verdict.spectral->solomon == Solomon::Spread;
    return verdict;
  }
  verdict.spectral = solomon_verdict(substitution_matrix(build_rho(n, m)), options);
  const Solomon s = verdict.spectral->solomon;
  if (s == Solomon::Spread) {
    verdict.reason = Reason::PvPolynomial;
  } else if (s == Solomon::NotSpread) {
    verdict.reason = Reason::SecondEigenvalueOutside;
  } else {
    verdict.reason = verdict.spectral->unresolved ? Reason::Unresolved : Reason::UnitCircleBoundary;
  }
  verdict.consistent = s != Solomon::Boundary && (s == Solomon::Spread) == verdict.theorem_verdict;
  if (s == Solomon::Boundary) {
    std::ostringstream os;
    os << "eigenvalues on the unit circle: f_alpha = " << f_alpha_poly(n, m).to_string() << " has cyclotomic factor(s)";
    for (int j : verdict.spectral->unit_factors.cyclotomic_indices) os << " Phi_" << j;
    os << ", cofactor " << verdict.spectral->unit_factors.cofactor.to_string()
       << "; the substitution criterion is inconclusive";
    verdict.note = os.str();
  } else if (!verdict.consistent) {
    verdict.note = "spectral verdict disagrees with the five-value classification";
  }
  return verdict;
}

std::string to_string(PvFamily f) {
  switch (f) {
    case PvFamily::Sporadic: return "x^5 - x^4 - x^2 - 1";
    case PvFamily::TwoLeading: return "x^d - 2x^(d-1) - 1";
    case PvFamily::OddTribonacci: return "x^d - x^(d-1) - x^(d-2) - 1, d odd";
  }
  return "?";
}

std::optional<PvFamily> match_pv_family(const IntPolynomial& f) {
  const int d = f.degree();
  if (f == IntPolynomial::from_terms({{5, 1}, {4, -1}, {2, -1}, {0, -1}})) return PvFamily::Sporadic;
  if (d >= 1) {
    const auto dd = static_cast<std::size_t>(d);
    if (f == IntPolynomial::monomial(dd) - IntPolynomial::monomial(dd - 1, 2) - IntPolynomial{1}) {
      return PvFamily::TwoLeading;
    }
    if (d >= 3 && d % 2 == 1 &&
        f == IntPolynomial::from_terms({{dd, 1}, {dd - 1, -1}, {dd - 2, -1}, {0, -1}})) {
      return PvFamily::OddTribonacci;
    }
  }
  return std::nullopt;
}

ThreeIntervalVerdict classify_three_interval(int n, int m, int k, const SpectralOptions& options) {
  ThreeIntervalVerdict out{build_three_interval_rule(n, m, k), std::nullopt, false, {}, false};
  out.pv_family = match_pv_family(out.rule.f);
  out.listed_spread = out.pv_family.has_value();
  out.spectral = solomon_verdict(out.rule.matrix, options);
  out.agree = out.listed_spread == (out.spectral.solomon == Solomon::Spread);
  return out;
}

}  // namespace kakutani
