#include "kakutani/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace kakutani {

AlphaParam::AlphaParam(double value, double tolerance) : value_(value), tolerance_(tolerance) {
  if (!(value > 0.0 && value <= 0.5)) {
    std::ostringstream os;
    os << "alpha must lie in (0, 1/2], got " << value;
    throw ParameterError(os.str());
  }
  if (!(tolerance > 0.0)) throw ParameterError("alpha tolerance must be positive");
}

AlphaParam AlphaParam::normalized(double value, double tolerance) {
  if (!(value > 0.0 && value < 1.0)) {
    std::ostringstream os;
    os << "alpha must lie in (0, 1), got " << value;
    throw ParameterError(os.str());
  }
  return AlphaParam(std::min(value, 1.0 - value), tolerance);
}

ExactPosition ExactPosition::monomial(LengthExponent e, std::int64_t coefficient) {
  ExactPosition p;
  p.add(e, coefficient);
  return p;
}

ExactPosition& ExactPosition::add(LengthExponent e, std::int64_t coefficient) {
  if (coefficient == 0) return *this;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const LengthExponent& key) { return t.first < key; });
  if (it != terms_.end() && it->first == e) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  } else {
    terms_.insert(it, Term{e, coefficient});
  }
  return *this;
}

ExactPosition& ExactPosition::operator+=(const ExactPosition& other) {
  for (const auto& [e, c] : other.terms_) add(e, c);
  return *this;
}

ExactPosition& ExactPosition::operator-=(const ExactPosition& other) {
  for (const auto& [e, c] : other.terms_) add(e, -c);
  return *this;
}

double ExactPosition::evaluate(double alpha) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) sum += static_cast<double>(c) * length_value(e, alpha);
  return sum;
}

std::vector<BigInt> ExactPosition::in_alpha_basis() const {
  std::uint32_t max_degree = 0;
  for (const auto& [e, c] : terms_) max_degree = std::max(max_degree, e.a + e.b);
  std::vector<BigInt> coeffs(max_degree + 1);
  for (const auto& [e, c] : terms_) {
    // alpha^a (1 - alpha)^b = sum_i C(b, i) (-1)^i alpha^{a + i}
    BigInt binom = 1;
    for (std::uint32_t i = 0; i <= e.b; ++i) {
      BigInt term = binom * c;
      if (i % 2 == 1) term = -term;
      coeffs[e.a + i] += term;
      binom = binom * (e.b - i) / (i + 1);
    }
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

bool same_value(const ExactPosition& a, const ExactPosition& b) {
  return (a - b).in_alpha_basis().empty();
}

double Patch::tile_left(std::size_t i) const {
  return anchor + scale * tiles.at(i).position.evaluate(alpha);
}

double Patch::tile_length(std::size_t i) const {
  return scale * length_value(tiles.at(i).length, alpha);
}

void require_coprime_ratio(int n, int m) {
  if (n < 1 || m < 1) {
    throw ParameterError("ratio n/m needs positive integers, got " + std::to_string(n) + "/" +
                         std::to_string(m));
  }
  if (n < m) {
    throw ParameterError("ratio n/m needs n >= m, got " + std::to_string(n) + "/" + std::to_string(m));
  }
  if (std::gcd(n, m) != 1) {
    throw ParameterError("ratio n/m needs gcd(n, m) = 1, got " + std::to_string(n) + "/" +
                         std::to_string(m));
  }
}

double solve_alpha(int n, int m) {
  require_coprime_ratio(n, m);
  if (n == m) return 0.5;
  // m log(alpha) - n log(1 - alpha) is strictly increasing on (0, 1/2],
  // negative near 0 and equal to (n - m) log 2 > 0 at 1/2.
  const auto h = [n, m](double a) { return m * std::log(a) - n * std::log1p(-a); };
  double lo = 0.0;
  double hi = 0.5;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha = std::abs(h(lo)) <= std::abs(h(hi)) ? lo : hi;
  if (std::abs(std::pow(alpha, m) - std::pow(1.0 - alpha, n)) >= 1e-14) {
    throw NumericError("solve_alpha: bisection residual above 1e-14");
  }
  return alpha;
}

double r_of_alpha(double alpha) {
  const AlphaParam checked(alpha);
  return std::log(checked.value()) / std::log1p(-checked.value());
}

double commensurability_residual(double alpha, int n, int m) {
  return std::abs(std::expm1(n * std::log1p(-alpha) - m * std::log(alpha)));
}

RatioClass detect_commensurability(const AlphaParam& alpha, int max_denominator) {
  if (max_denominator < 1) throw ParameterError("max_denominator must be positive");
  const double r = r_of_alpha(alpha.value());

  // Convergents h/k of the continued fraction of r.
  std::int64_t h_prev = 1, h_prev2 = 0;
  std::int64_t k_prev = 0, k_prev2 = 1;
  double x = r;
  for (int iter = 0; iter < 64; ++iter) {
    const double whole = std::floor(x);
    if (whole > 1e9) break;
    const auto a = static_cast<std::int64_t>(whole);
    const std::int64_t h = a * h_prev + h_prev2;
    const std::int64_t k = a * k_prev + k_prev2;
    if (k > max_denominator || h > std::int64_t{1} << 30) break;
    const int n = static_cast<int>(h);
    const int m = static_cast<int>(k);
    if (std::gcd(n, m) == 1 && commensurability_residual(alpha.value(), n, m) < alpha.tolerance()) {
      return Commensurable{n, m};
    }
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const double frac = x - whole;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return Incommensurable{r};
}

double length_value(LengthExponent e, double alpha) {
  return std::pow(alpha, static_cast<double>(e.a)) * std::pow(1.0 - alpha, static_cast<double>(e.b));
}

std::string to_string(const RatioClass& cls) {
  if (const auto* c = std::get_if<Commensurable>(&cls)) {
    return "commensurable " + std::to_string(c->n) + "/" + std::to_string(c->m);
  }
  std::ostringstream os;
  os.precision(17);
  os << "incommensurable r=" << std::get<Incommensurable>(cls).r;
  return os.str();
}

}  // namespace kakutani
