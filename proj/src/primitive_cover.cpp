#include "kakutani/primitive_cover.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "kakutani/engine.hpp"

namespace kakutani {

namespace {

using BigMatrix = std::vector<BigInt>;  // row-major, k x k

BigMatrix to_big(const SubstitutionMatrix& m) {
  return BigMatrix(m.row_major().begin(), m.row_major().end());
}

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b, std::size_t k) {
  BigMatrix out(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      const BigInt& ail = a[i * k + l];
      if (ail == 0) continue;
      for (std::size_t j = 0; j < k; ++j) out[i * k + j] += ail * b[l * k + j];
    }
  }
  return out;
}

// Solves sum_i y^{L_i} = 1 for y in (0, 1).
double contraction_for_loops(const std::vector<int>& loops) {
  const auto g = [&loops](double y) {
    double s = -1.0;
    for (int l : loops) s += std::pow(y, l);
    return s;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
}

IntPolynomial y_polynomial(const ExactPosition& position, int n, int m) {
  IntPolynomial p;
  for (const auto& [e, c] : position.terms()) {
    p += IntPolynomial::monomial(static_cast<std::size_t>(n) * e.a + static_cast<std::size_t>(m) * e.b, c);
  }
  return p;
}

}  // namespace

double PrimitiveRule::prototile_length(int label) const {
  if (label < 1 || label > size()) throw ParameterError("prototile label out of range");
  return std::pow(y, length_power[static_cast<std::size_t>(label - 1)]);
}

SubstitutionMatrix::SubstitutionMatrix(std::size_t size) : size_(size), entries_(size * size, 0) {
  if (size == 0) throw ParameterError("substitution matrix must be non-empty");
}

std::vector<std::int64_t> SubstitutionMatrix::column_sums() const {
  std::vector<std::int64_t> sums(size_, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) sums[j] += (*this)(i, j);
  }
  return sums;
}

PrimitiveRule build_loop_rule(std::vector<int> loops) {
  if (loops.size() < 2) throw ParameterError("a loop rule needs at least two loops");
  for (int l : loops) {
    if (l < 1) throw ParameterError("loop edge counts must be positive");
  }
  PrimitiveRule rule;
  rule.loops = std::move(loops);
  rule.y = contraction_for_loops(rule.loops);
  rule.xi = 1.0 / rule.y;

  rule.length_power.push_back(0);
  rule.image.emplace_back();
  IntPolynomial offset;
  for (int edges : rule.loops) {
    // Vertices at steps 1..edges-1 along this loop; each is `edges - step`
    // edges away from vertex 1.
    const int first_label = rule.size() + 1;
    for (int step = 1; step < edges; ++step) {
      rule.length_power.push_back(static_cast<std::uint32_t>(edges - step));
      const int next = step + 1 < edges ? first_label + step : 1;
      rule.image.push_back({ChildPlacement{next, IntPolynomial{}}});
    }
    const int child = edges > 1 ? first_label : 1;
    rule.image[0].push_back(ChildPlacement{child, offset});
    offset += IntPolynomial::monomial(static_cast<std::size_t>(edges));
  }
  rule.relation = offset - IntPolynomial{1};
  return rule;
}

PrimitiveRule build_rho(int n, int m) {
  require_coprime_ratio(n, m);
  if (n == m) throw ParameterError("build_rho needs n > m; r = 1 is the lattice case");
  PrimitiveRule rule = build_loop_rule({n, m});
  rule.y = std::pow(solve_alpha(n, m), 1.0 / n);
  rule.xi = 1.0 / rule.y;
  return rule;
}

SubstitutionMatrix substitution_matrix(const PrimitiveRule& rule) {
  SubstitutionMatrix matrix(static_cast<std::size_t>(rule.size()));
  for (std::size_t j = 0; j < rule.image.size(); ++j) {
    for (const auto& child : rule.image[j]) matrix(static_cast<std::size_t>(child.label - 1), j) += 1;
  }
  return matrix;
}

IntPolynomial char_poly(const SubstitutionMatrix& matrix) {
  const std::size_t k = matrix.size();
  const BigMatrix a = to_big(matrix);
  std::vector<BigInt> coeffs(k + 1);
  coeffs[k] = 1;
  BigMatrix mk(k * k);  // M_0 = 0
  for (std::size_t i = 1; i <= k; ++i) {
    mk = multiply(a, mk, k);
    for (std::size_t d = 0; d < k; ++d) mk[d * k + d] += coeffs[k - i + 1];
    const BigMatrix am = multiply(a, mk, k);
    BigInt trace = 0;
    for (std::size_t d = 0; d < k; ++d) trace += am[d * k + d];
    if (trace % i != 0) throw NumericError("char_poly: inexact Faddeev-LeVerrier division");
    coeffs[k - i] = -trace / i;
  }
  return IntPolynomial(std::move(coeffs));
}

std::optional<int> primitivity_index(const SubstitutionMatrix& matrix, int limit) {
  const std::size_t k = matrix.size();
  std::vector<char> base(k * k), power(k * k);
  for (std::size_t i = 0; i < k * k; ++i) base[i] = power[i] = matrix.row_major()[i] > 0;
  for (int ell = 1; ell <= limit; ++ell) {
    bool positive = true;
    for (char c : power) positive = positive && c;
    if (positive) return ell;
    std::vector<char> next(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t l = 0; l < k; ++l) {
        if (!power[i * k + l]) continue;
        for (std::size_t j = 0; j < k; ++j) next[i * k + j] |= base[l * k + j];
      }
    }
    power.swap(next);
  }
  return std::nullopt;
}

std::vector<BigInt> tile_counts(const SubstitutionMatrix& matrix, std::uint32_t ell) {
  const std::size_t k = matrix.size();
  BigMatrix result(k * k);
  for (std::size_t d = 0; d < k; ++d) result[d * k + d] = 1;
  BigMatrix base = to_big(matrix);
  for (std::uint32_t e = ell; e > 0; e >>= 1) {
    if (e & 1U) result = multiply(result, base, k);
    if (e > 1) base = multiply(base, base, k);
  }
  std::vector<BigInt> column(k);
  for (std::size_t i = 0; i < k; ++i) column[i] = result[i * k];
  return column;
}

double LabelledPatch::right() const { return std::pow(y, -static_cast<double>(level)); }

double LabelledPatch::tile_left(std::size_t i) const {
  return static_cast<double>(tiles.at(i).position.evaluate(static_cast<long double>(y))) * right();
}

double LabelledPatch::tile_length(std::size_t i) const {
  return std::pow(y, static_cast<double>(tiles.at(i).power) - static_cast<double>(level));
}

LabelledPatch iterate_primitive(const PrimitiveRule& rule, std::uint32_t ell, const IterateOptions& options) {
  BigInt total = 0;
  for (const auto& c : tile_counts(substitution_matrix(rule), ell)) total += c;
  if (total > options.max_tiles) {
    std::ostringstream os;
    os << "(xi rho)^" << ell << "(I) has " << total << " tiles, above the cap of " << options.max_tiles;
    throw ResourceError(os.str());
  }

  LabelledPatch patch;
  patch.y = rule.y;
  patch.tiles.push_back(LabelledTile{IntPolynomial{}, 0, 1});
  for (std::uint32_t level = 0; level < ell; ++level) {
    std::vector<LabelledTile> next;
    next.reserve(patch.tiles.size() * 2);
    for (const auto& tile : patch.tiles) {
      // Offsets and child lengths are in units of the parent prototile.
      const std::uint32_t unit = tile.power - rule.length_power[static_cast<std::size_t>(tile.label - 1)];
      for (const auto& child : rule.image[static_cast<std::size_t>(tile.label - 1)]) {
        next.push_back(LabelledTile{
            tile.position + child.offset.shifted(unit),
            unit + 1 + rule.length_power[static_cast<std::size_t>(child.label - 1)],
            child.label,
        });
      }
    }
    patch.tiles = std::move(next);
    patch.level = level + 1;
  }
  return patch;
}

CoverReport verify_cover(int n, int m, std::uint32_t ell, const IterateOptions& options) {
  const PrimitiveRule rule = build_rho(n, m);
  const double alpha = solve_alpha(n, m);
  const Patch kakutani = generate_anchored(alpha, Horizon::steps({n, m}, ell), 0.0, {options.max_tiles});
  const LabelledPatch primitive = iterate_primitive(rule, ell, options);

  CoverReport report;
  report.ell = ell;
  report.kakutani_tiles = kakutani.tiles.size();
  report.primitive_tiles = primitive.tiles.size();
  if (report.kakutani_tiles != report.primitive_tiles) {
    report.detail = "tile counts differ";
    return report;
  }
  for (std::size_t i = 0; i < kakutani.tiles.size(); ++i) {
    const Tile& kt = kakutani.tiles[i];
    const LabelledTile& pt = primitive.tiles[i];
    const std::uint64_t k_power = static_cast<std::uint64_t>(n) * kt.length.a + static_cast<std::uint64_t>(m) * kt.length.b;
    if (k_power != pt.power) {
      report.first_mismatch = i;
      report.detail = "tile " + std::to_string(i) + ": length y^" + std::to_string(k_power) + " vs y^" +
                      std::to_string(pt.power);
      return report;
    }
    const IntPolynomial lhs = y_polynomial(kt.position, n, m).mod(rule.relation);
    const IntPolynomial rhs = pt.position.mod(rule.relation);
    if (lhs != rhs) {
      report.first_mismatch = i;
      report.detail = "tile " + std::to_string(i) + ": left endpoint " + lhs.to_string('y') + " vs " +
                      rhs.to_string('y');
      return report;
    }
  }
  report.agree = true;
  report.detail = "boundaries agree";
  return report;
}

ThreeIntervalRule build_three_interval_rule(int n, int m, int k) {
  if (!(n >= m && m >= k && k >= 1)) throw ParameterError("three-interval rule needs n >= m >= k >= 1");
  if (std::gcd(std::gcd(n, m), k) != 1) throw ParameterError("three-interval rule needs gcd(n, m, k) = 1 (non-primitive)");
  ThreeIntervalRule out;
  out.rule = build_loop_rule({n, m, k});
  out.matrix = substitution_matrix(out.rule);
  out.f = IntPolynomial::monomial(static_cast<std::size_t>(n)) -
          IntPolynomial::monomial(static_cast<std::size_t>(n - m)) -
          IntPolynomial::monomial(static_cast<std::size_t>(n - k)) - IntPolynomial{1};
  out.length_exponents = {n, m, k};
  for (std::size_t i = 0; i < 3; ++i) out.lengths[i] = std::pow(out.rule.y, out.length_exponents[i]);
  return out;
}

}  // namespace kakutani
