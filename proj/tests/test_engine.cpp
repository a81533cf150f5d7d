#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kakutani/engine.hpp"
#include "oracles.hpp"

using namespace kakutani;

namespace {

std::vector<double> lengths_of(const Patch& p) {
  std::vector<double> out;
  for (std::size_t i = 0; i < p.tiles.size(); ++i) out.push_back(p.tile_length(i));
  return out;
}

}  // namespace

TEST_CASE("Horizon") {
  CHECK_THROWS_AS(Horizon::continuous(-1.0), ParameterError);
  CHECK_THROWS_AS(Horizon::steps({4, 2}, 3), ParameterError);
  const Horizon h = Horizon::steps({3, 2}, 6);
  CHECK(h.is_exact());
  CHECK(h.t(solve_alpha(3, 2)) == doctest::Approx(2.0 * std::log(1.0 / solve_alpha(3, 2))));
  CHECK_THROWS_AS(Inflation(0.3, Horizon::steps({2, 1}, 3)), ParameterError);
}

TEST_CASE("GraphAlpha loop lengths") {
  const GraphAlpha g = GraphAlpha::from_alpha(0.25);
  CHECK(g.alpha_loop == doctest::Approx(std::log(4.0)));
  CHECK(g.beta_loop == doctest::Approx(std::log(4.0 / 3.0)));
  CHECK(g.alpha_loop >= g.beta_loop);
  CHECK(GraphAlpha::from_alpha(0.5).alpha_loop == GraphAlpha::from_alpha(0.5).beta_loop);
}

TEST_CASE("substitute_once") {
  const double a = 1.0 / 3.0;
  const Patch p = substitute_once(Tile{ExactPosition{}, {0, 0}, std::nullopt}, a);
  REQUIRE(p.tiles.size() == 2);
  CHECK(p.tiles[0].length == LengthExponent{1, 0});
  CHECK(p.tiles[1].length == LengthExponent{0, 1});
  CHECK(p.tiles[0].position.is_zero());
  CHECK(p.tile_left(1) == doctest::Approx(1.0 / 3.0));

  const Patch q = substitute_once(Tile{ExactPosition{}, {1, 0}, std::nullopt}, a);
  CHECK(q.tiles[0].length == LengthExponent{2, 0});
  CHECK(q.tiles[1].length == LengthExponent{1, 1});
  CHECK(q.tile_left(1) == doctest::Approx(1.0 / 9.0));

  // Children add up to the parent exactly.
  const LengthExponent e{3, 2};
  const Patch r = substitute_once(Tile{ExactPosition{}, e, std::nullopt}, a);
  const ExactPosition sum = ExactPosition::monomial(r.tiles[0].length) + ExactPosition::monomial(r.tiles[1].length);
  CHECK(same_value(sum, ExactPosition::monomial(e)));

  CHECK_THROWS_AS(substitute_once(Tile{ExactPosition{}, {0, 0}, 2}, a), ParameterError);
}

TEST_CASE("generate_patch examples") {
  const Patch half = generate_patch(0.5, Horizon::continuous(std::log(2.0)));
  CHECK(half.tiles.size() == 2);
  for (double l : lengths_of(half)) CHECK(l == doctest::Approx(1.0));
  CHECK(half.left() == doctest::Approx(-1.0));

  const Patch exact_half = generate_patch(0.5, Horizon::steps({1, 1}, 1));
  CHECK(exact_half.tiles.size() == 2);

  const Patch third = generate_anchored(1.0 / 3.0, Horizon::continuous(std::log(3.0)), 0.0);
  const auto l = lengths_of(third);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == doctest::Approx(1.0));
  CHECK(l[1] == doctest::Approx(2.0 / 3.0));
  CHECK(l[2] == doctest::Approx(4.0 / 9.0));
  CHECK(l[3] == doctest::Approx(8.0 / 9.0));

  const double a = solve_alpha(3, 2);
  const Patch cover = generate_patch(a, Horizon::continuous(std::log(1.0 / a) / 3.0));
  const auto c = lengths_of(cover);
  REQUIRE(c.size() == 2);
  CHECK(c[0] == doctest::Approx(std::pow(a, 2.0 / 3.0)).epsilon(1e-12));
  CHECK(c[1] == doctest::Approx(std::pow(a, 1.0 / 3.0)).epsilon(1e-12));
  const Patch cover_exact = generate_patch(a, Horizon::steps({3, 2}, 1));
  CHECK(cover_exact.tiles.size() == 2);
}

TEST_CASE("generate_patch origin and cap") {
  CHECK_THROWS_AS(generate_patch(0.3, Horizon::continuous(1.0), 0.0), ParameterError);
  CHECK_THROWS_AS(generate_patch(0.3, Horizon::continuous(1.0), 1.0), ParameterError);
  const Patch p = generate_patch(0.3, Horizon::continuous(2.0), 0.25);
  CHECK(p.left() == doctest::Approx(-0.25 * std::exp(2.0)));
  try {
    generate_patch(0.3, Horizon::continuous(12.0), 0.5, {1000});
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("1000") != std::string::npos);
  }
}

TEST_CASE("count_tiles") {
  for (std::uint32_t k = 0; k <= 20; ++k) {
    CHECK(count_tiles(0.5, Horizon::steps({1, 1}, k)) == BigInt(1) << k);
    CHECK(count_tiles(0.5, Horizon::continuous(k * std::log(2.0))) == BigInt(1) << k);
  }
  CHECK(count_tiles(1.0 / 3.0, Horizon::continuous(std::log(3.0))) == 4);
  CHECK(count_tiles(0.3, Horizon::continuous(0.0)) == 1);
  // Far beyond what could be materialized.
  const BigInt big = count_tiles(solve_alpha(2, 1), Horizon::steps({2, 1}, 400));
  CHECK(big == oracle::walk_count(Inflation(solve_alpha(2, 1), Horizon::steps({2, 1}, 400))));
  CHECK(big > BigInt(1) << 100);
}

TEST_CASE("count_tiles against the walk oracle and materialized patches") {
  for (double a : {0.5, 0.45, 1.0 / 3.0, 0.2, 0.1, solve_alpha(3, 2)}) {
    for (double t = 0.0; t <= 9.0; t += 0.7) {
      const Horizon h = Horizon::continuous(t);
      const BigInt c = count_tiles(a, h);
      CHECK(c == oracle::walk_count(Inflation(a, h)));
      CHECK(c == generate_patch(a, h).tiles.size());
    }
  }
}

TEST_CASE("for_each_tile streams the patch in order") {
  const double a = 0.3;
  const Horizon h = Horizon::continuous(6.0);
  const Patch p = generate_anchored(a, h, 0.0);
  std::size_t i = 0;
  bool match = true;
  for_each_tile(Inflation(a, h), 0.0, [&](double left, LengthExponent e) {
    match = match && i < p.tiles.size() && p.tiles[i].length == e && std::abs(left - p.tile_left(i)) < 1e-9;
    ++i;
  });
  CHECK(match);
  CHECK(i == p.tiles.size());

  std::size_t seen = 0;
  for_each_tile(Inflation(a, h), 0.0, [&](double, LengthExponent) { return ++seen < 5; });
  CHECK(seen == 5);
}

TEST_CASE("delone_points") {
  const Patch third = generate_anchored(1.0 / 3.0, Horizon::continuous(std::log(3.0)), 0.0);
  const PointSet s = delone_points(third);
  REQUIRE(s.points.size() == 4);
  CHECK(s.points[0] == doctest::Approx(0.0));
  CHECK(s.points[1] == doctest::Approx(1.0));
  CHECK(s.points[2] == doctest::Approx(5.0 / 3.0));
  CHECK(s.points[3] == doctest::Approx(19.0 / 9.0));
  CHECK(s.window_left == 0.0);
  CHECK(s.window_right == doctest::Approx(3.0));

  const Patch single = generate_anchored(0.4, Horizon::continuous(0.0), 0.0);
  const PointSet one = delone_points(single);
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0] == 0.0);

  CHECK_THROWS_AS(delone_points(Patch{}), ParameterError);
}

TEST_CASE("chabauty_fell_distance examples") {
  const PointSet a = PointSet::complete({0.0, 1.0, 2.5});
  CHECK(chabauty_fell_distance(a, a).distance == 0.0);

  PointSet x = PointSet::complete({0.0});
  PointSet y = PointSet::complete({0.1});
  x.window_left = y.window_left = -100;
  x.window_right = y.window_right = 100;
  const ChabautyFell d = chabauty_fell_distance(x, y);
  CHECK(d.distance == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(d.certified);

  x.window_left = y.window_left = -5;
  x.window_right = y.window_right = 5;
  CHECK_FALSE(chabauty_fell_distance(x, y).certified);

  CHECK(chabauty_fell_distance(PointSet::complete({0.0}), PointSet::complete({5.0})).distance == 1.0);
  CHECK(chabauty_fell_distance(PointSet::complete({}), PointSet::complete({})).distance == 0.0);
  // Far points only matter through 1/|x|.
  CHECK(chabauty_fell_distance(PointSet::complete({0.0}), PointSet::complete({0.0, 4.0})).distance ==
        doctest::Approx(0.25));
}
