#include "kakutani/polynomial.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace kakutani {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long long> coefficients) {
  coeffs_.reserve(coefficients.size());
  for (long long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::monomial(std::size_t k, const BigInt& c) {
  std::vector<BigInt> coeffs(k + 1);
  coeffs[k] = c;
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial IntPolynomial::from_terms(std::initializer_list<std::pair<std::size_t, long long>> terms) {
  IntPolynomial p;
  for (const auto& [k, c] : terms) p += monomial(k, c);
  return p;
}

const BigInt& IntPolynomial::leading() const {
  if (coeffs_.empty()) throw ParameterError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

std::size_t IntPolynomial::term_count() const {
  std::size_t count = 0;
  for (const auto& c : coeffs_) count += c != 0 ? 1 : 0;
  return count;
}

std::size_t IntPolynomial::x_valuation() const {
  std::size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k] == 0) ++k;
  return k;
}

IntPolynomial IntPolynomial::without_x_power() const {
  const std::size_t k = x_valuation();
  return IntPolynomial(std::vector<BigInt>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::shifted(std::size_t k) const {
  if (is_zero()) return {};
  std::vector<BigInt> out(k);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return IntPolynomial(std::move(out));
}

std::pair<IntPolynomial, IntPolynomial> IntPolynomial::divmod(const IntPolynomial& divisor) const {
  if (divisor.is_zero()) throw ParameterError("polynomial division by zero");
  const BigInt& lead = divisor.leading();
  if (lead != 1 && lead != -1) throw ParameterError("divisor must have leading coefficient +-1");
  if (degree() < divisor.degree()) return {IntPolynomial{}, *this};

  std::vector<BigInt> rem = coeffs_;
  const std::size_t dd = static_cast<std::size_t>(divisor.degree());
  std::vector<BigInt> quot(rem.size() - dd);
  for (std::size_t k = rem.size(); k-- > dd;) {
    if (rem[k] == 0) continue;
    const BigInt q = rem[k] * lead;  // lead is a unit, so lead^-1 == lead
    quot[k - dd] = q;
    for (std::size_t i = 0; i <= dd; ++i) rem[k - dd + i] -= q * divisor.coeffs_[i];
  }
  return {IntPolynomial(std::move(quot)), IntPolynomial(std::move(rem))};
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> out(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out[i - 1] = coeffs_[i] * i;
  return IntPolynomial(std::move(out));
}

std::complex<long double> IntPolynomial::evaluate(std::complex<long double> z) const {
  std::complex<long double> acc = 0.0L;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k].convert_to<long double>();
  return acc;
}

long double IntPolynomial::evaluate(long double x) const {
  long double acc = 0.0L;
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k].convert_to<long double>();
  return acc;
}

bool IntPolynomial::is_kakutani_trinomial() const {
  if (term_count() != 3 || degree() < 2) return false;
  if (leading() != 1 || coeffs_[0] != -1) return false;
  for (std::size_t k = 1; k + 1 < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0 && coeffs_[k] != -1) return false;
  }
  return true;
}

std::string IntPolynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const BigInt& c = coeffs_[k];
    if (c == 0) continue;
    const BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || k == 0) os << mag;
    if (k >= 1) os << var;
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial cyclotomic(int j) {
  if (j < 1) throw ParameterError("cyclotomic index must be positive");
  static std::mutex mutex;
  static std::map<int, IntPolynomial> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(j); it != cache.end()) return it->second;
  }
  // x^j - 1 = prod_{d | j} Phi_d(x)
  IntPolynomial p = IntPolynomial::monomial(static_cast<std::size_t>(j)) - IntPolynomial{1};
  for (int d = 1; d < j; ++d) {
    if (j % d == 0) p = p.divmod(cyclotomic(d)).first;
  }
  std::lock_guard lock(mutex);
  cache.emplace(j, p);
  return p;
}

}  // namespace kakutani
