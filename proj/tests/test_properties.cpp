#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kakutani/discrepancy.hpp"
#include "kakutani/spectral.hpp"
#include "oracles.hpp"

using namespace kakutani;

namespace {

// Small input generators over a fixed-seed engine, so failures replay.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  double alpha() { return real(0.05, 0.5); }

  LengthExponent exponent(int max) {
    return {static_cast<std::uint32_t>(integer(0, max)), static_cast<std::uint32_t>(integer(0, max))};
  }

  ExactPosition position() {
    ExactPosition p;
    const int terms = integer(0, 6);
    for (int i = 0; i < terms; ++i) p.add(exponent(5), integer(-4, 4));
    return p;
  }

  IntPolynomial polynomial(int max_degree, int span) {
    std::vector<BigInt> c(static_cast<std::size_t>(integer(0, max_degree) + 1));
    for (auto& x : c) x = integer(-span, span);
    return IntPolynomial(std::move(c));
  }

  IntPolynomial monic(int max_degree, int span) {
    IntPolynomial p = polynomial(max_degree - 1, span);
    const auto d = static_cast<std::size_t>(std::max(p.degree() + 1, 1));
    return p + IntPolynomial::monomial(d, integer(0, 1) ? 1 : -1);
  }

  std::vector<double> points(int count, double spread) {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(real(-spread, spread));
    return v;
  }
};

}  // namespace

TEST_CASE("exact positions evaluate consistently") {
  Gen g(1);
  for (int trial = 0; trial < 500; ++trial) {
    const ExactPosition p = g.position();
    const ExactPosition q = g.position();
    const double a = g.alpha();
    CHECK((p + q).evaluate(a) == doctest::Approx(p.evaluate(a) + q.evaluate(a)).epsilon(1e-12));
    CHECK((p - q).evaluate(a) == doctest::Approx(p.evaluate(a) - q.evaluate(a)).epsilon(1e-12));
    CHECK(same_value(p + q, q + p));
    CHECK((p - p).is_zero());
    // The alpha-basis expansion is the same number.
    const auto coeffs = p.in_alpha_basis();
    double horner = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) horner = horner * a + it->convert_to<double>();
    CHECK(horner == doctest::Approx(p.evaluate(a)).epsilon(1e-9));
    // Splitting a monomial into its two children preserves the value.
    const LengthExponent e = g.exponent(4);
    CHECK(same_value(ExactPosition::monomial(e), ExactPosition::monomial(e.left_child()) +
                                                     ExactPosition::monomial(e.right_child())));
  }
}

TEST_CASE("polynomial division identity") {
  Gen g(2);
  for (int trial = 0; trial < 500; ++trial) {
    const IntPolynomial f = g.polynomial(12, 20);
    const IntPolynomial d = g.monic(5, 5);
    const auto [q, r] = f.divmod(d);
    CHECK(q * d + r == f);
    CHECK(r.degree() < d.degree());
    CHECK((f * d).divisible_by(d));
    const long double x = g.real(-1.5, 1.5);
    const long double lhs = (f * d).evaluate(x);
    const long double rhs = f.evaluate(x) * d.evaluate(x);
    CHECK(static_cast<double>(lhs) == doctest::Approx(static_cast<double>(rhs)).epsilon(1e-9).scale(1e3));
  }
}

TEST_CASE("engine patches tile the support and refine monotonically") {
  Gen g(3);
  for (int trial = 0; trial < 60; ++trial) {
    const double a = g.alpha();
    const double t = g.real(0.0, 6.0);
    const Patch p = generate_anchored(a, Horizon::continuous(t), 0.0);
    double acc = 0.0;
    bool contiguous = true;
    bool short_tiles = true;
    for (std::size_t i = 0; i < p.tiles.size(); ++i) {
      contiguous = contiguous && std::abs(p.tile_left(i) - acc) < 1e-9 * p.scale;
      short_tiles = short_tiles && p.tile_length(i) <= 1.0 + 1e-9;
      acc += p.tile_length(i);
    }
    CHECK(contiguous);
    CHECK(short_tiles);
    CHECK(acc == doctest::Approx(p.scale).epsilon(1e-12));
    // Every parent of a tile was longer than 1.
    const Inflation inf(a, Horizon::continuous(t));
    bool parents_split = true;
    for (const Tile& tile : p.tiles) {
      const LengthExponent e = tile.length;
      if (e.depth() > 0) {
        parents_split = parents_split && ((e.a > 0 && inf.splits({e.a - 1, e.b})) || (e.b > 0 && inf.splits({e.a, e.b - 1})));
      }
      parents_split = parents_split && !inf.splits(tile.length);
    }
    CHECK(parents_split);
    // Running longer only splits tiles: the boundary set grows.
    const double t2 = t + g.real(0.0, 1.5);
    const PointSet fine = delone_points(generate_anchored(a, Horizon::continuous(t2), 0.0));
    const PointSet coarse = delone_points(p);
    const double s = std::exp(t2 - t);
    bool nested = true;
    for (double x : coarse.points) {
      const auto it = std::lower_bound(fine.points.begin(), fine.points.end(), x * s - 1e-7 * fine.window_right);
      nested = nested && it != fine.points.end() && std::abs(*it - x * s) < 1e-7 * fine.window_right;
    }
    CHECK(nested);
  }
}

TEST_CASE("tile counts match the walk oracle") {
  Gen g(4);
  for (int trial = 0; trial < 300; ++trial) {
    const double a = g.alpha();
    const Horizon h = Horizon::continuous(g.real(0.0, 25.0));
    CHECK(count_tiles(a, h) == oracle::walk_count(Inflation(a, h)));
  }
  for (auto [n, m] : oracle::coprime_pairs(10)) {
    const auto ell = static_cast<std::uint32_t>(g.integer(0, 200));
    const Horizon h = Horizon::steps({n, m}, ell);
    CHECK(count_tiles(solve_alpha(n, m), h) == oracle::walk_count(Inflation(solve_alpha(n, m), h)));
  }
}

TEST_CASE("prefix counts") {
  Gen g(5);
  for (int trial = 0; trial < 40; ++trial) {
    const double a = g.alpha();
    const Horizon h = Horizon::continuous(g.real(0.0, 7.0));
    const Patch patch = generate_anchored(a, h, 0.0);
    const PrefixCounter counter(a, h);
    CHECK(counter.count(patch.scale) == patch.tiles.size());
    CHECK(counter.count(0.0) == 1);
    BigInt prev = 0;
    std::vector<double> xs;
    for (int i = 0; i < 50; ++i) xs.push_back(g.real(0.0, patch.scale));
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
      const BigInt c = counter.count(x);
      CHECK(c == oracle::brute_prefix(patch, x));
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("Chabauty-Fell is a metric on finite sets") {
  Gen g(6);
  for (int trial = 0; trial < 300; ++trial) {
    const PointSet a = PointSet::complete(g.points(g.integer(0, 8), 6.0));
    const PointSet b = PointSet::complete(g.points(g.integer(0, 8), 6.0));
    const PointSet c = PointSet::complete(g.points(g.integer(0, 8), 6.0));
    const double ab = chabauty_fell_distance(a, b).distance;
    CHECK(chabauty_fell_distance(a, a).distance == 0.0);
    CHECK(ab == chabauty_fell_distance(b, a).distance);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(ab <= chabauty_fell_distance(a, c).distance + chabauty_fell_distance(c, b).distance + 1e-12);
  }
}

TEST_CASE("roots of random monic polynomials") {
  Gen g(7);
  for (int trial = 0; trial < 200; ++trial) {
    IntPolynomial p = g.monic(10, 6);
    if (p.leading() < 0) p = IntPolynomial{} - p;
    if (p.degree() < 1) continue;
    const auto roots = find_roots(p);
    CHECK(roots.size() == static_cast<std::size_t>(p.degree()));
    for (const auto& r : roots) {
      CHECK(std::abs(p.evaluate(std::complex<long double>(r.value))) <
            1e-9 * std::pow(1 + r.modulus(), p.degree()) * 10);
      const bool has_conj = std::any_of(roots.begin(), roots.end(),
                                        [&](const Root& s) { return std::abs(s.value - std::conj(r.value)) < 1e-6; });
      CHECK(has_conj);
    }
  }
}
