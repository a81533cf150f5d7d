#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kakutani/discrepancy.hpp"
#include "kakutani/spectral.hpp"
#include "oracles.hpp"

using namespace kakutani;

namespace {

double entropy(double a) { return -a * std::log(a) - (1 - a) * std::log(1 - a); }

DiscrepancySeries scan(double alpha, const RatioClass& cls, int first, int last, ScanMode mode = ScanMode::Anchored) {
  ScanGrid grid = ScanGrid::dyadic(first, last);
  grid.mode = mode;
  return discrepancy_scan(alpha, cls, horizon_covering(alpha, cls, grid.windows.back()), grid);
}

}  // namespace

TEST_CASE("asymptotic density") {
  const DensityValue third = asymptotic_density(1.0 / 3.0, Incommensurable{2.7});
  CHECK(third.method == DensityMethod::ClosedForm);
  CHECK(third.value == doctest::Approx(1.0 / entropy(1.0 / 3.0)).epsilon(1e-14));
  CHECK(third.value == doctest::Approx(1.5711).epsilon(1e-4));

  const DensityValue lattice = asymptotic_density(0.5, Commensurable{1, 1});
  CHECK(lattice.value == 1.0);

  const double phi = (1 + std::sqrt(5.0)) / 2;
  const DensityValue fib = asymptotic_density(solve_alpha(2, 1), Commensurable{2, 1});
  CHECK(fib.method == DensityMethod::Perron);
  CHECK(fib.value == doctest::Approx(phi * phi / std::sqrt(5.0)).epsilon(1e-12));

  CHECK_THROWS_AS(asymptotic_density(0.3, Commensurable{2, 1}), ParameterError);
  CHECK(to_string(DensityMethod::Perron) == "perron");
}

TEST_CASE("density against tile counts") {
  // Time-averaged N(t) e^{-t} for an incommensurable ratio.
  const double a = 1.0 / 3.0;
  double acc = 0.0;
  const int samples = 200;
  for (int i = 0; i < samples; ++i) {
    const double t = 20.0 + 3.0 * (i + 0.5) / samples;
    acc += count_tiles(a, Horizon::continuous(t)).convert_to<double>() * std::exp(-t);
  }
  CHECK(acc / samples == doctest::Approx(asymptotic_density(a, Incommensurable{r_of_alpha(a)}).value).epsilon(0.01));

  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {4, 1}, {7, 3}}) {
    const double alpha = solve_alpha(n, m);
    const PrefixCounter counter(alpha, Horizon::steps({n, m}, 40 * static_cast<std::uint32_t>(n)));
    const double x = 0.61 * counter.inflation().scale();
    const double empirical = counter.count(x).convert_to<double>() / x;
    CHECK(empirical == doctest::Approx(asymptotic_density(alpha, Commensurable{n, m}).value).epsilon(1e-3));
  }
}

TEST_CASE("prefix_count examples") {
  CHECK(prefix_count(0.5, Horizon::continuous(3 * std::log(2.0)), 3.5) == 4);
  CHECK(prefix_count(1.0 / 3.0, Horizon::continuous(std::log(3.0)), 1.7) == 3);
  CHECK(prefix_count(1.0 / 3.0, Horizon::continuous(std::log(3.0)), 0.0) == 1);
  CHECK(prefix_count(1.0 / 3.0, Horizon::continuous(std::log(3.0)), 3.0) == 4);
  CHECK_THROWS_AS(prefix_count(0.3, Horizon::continuous(2.0), -0.5), ParameterError);
  CHECK_THROWS_AS(prefix_count(0.3, Horizon::continuous(2.0), 8.0), ParameterError);
  CHECK_THROWS_AS(prefix_count(0.3, Horizon::continuous(2.0), std::nan("")), ParameterError);
}

TEST_CASE("prefix_count against a materialized patch") {
  for (double a : {0.5, 0.41, 1.0 / 3.0, 0.17, solve_alpha(3, 2)}) {
    const Horizon h = Horizon::continuous(7.5);
    const Patch patch = generate_anchored(a, h, 0.0);
    const PrefixCounter counter(a, h);
    CHECK(counter.total() == patch.tiles.size());
    for (std::size_t i = 0; i < patch.tiles.size(); i += 7) {
      const double left = patch.tile_left(i);
      const double mid = left + 0.5 * patch.tile_length(i);
      CHECK(counter.count(left) == oracle::brute_prefix(patch, left));
      CHECK(counter.count(mid) == oracle::brute_prefix(patch, mid));
    }
  }
}

TEST_CASE("horizon_covering") {
  const double a = solve_alpha(3, 2);
  const Horizon h = horizon_covering(a, Commensurable{3, 2}, 1000.0);
  CHECK(h.is_exact());
  CHECK(std::exp(h.t(a)) >= 1000.0);
  CHECK(std::exp(Horizon::steps({3, 2}, h.ell() - 1).t(a)) < 1000.0);
  CHECK(horizon_covering(0.5, Commensurable{1, 1}, 64.0).ell() == 6);
  const Horizon c = horizon_covering(0.3, Incommensurable{3.4}, 500.0);
  CHECK_FALSE(c.is_exact());
  CHECK(std::exp(c.t(0.3)) >= 500.0);
  CHECK_THROWS_AS(horizon_covering(0.3, Incommensurable{3.4}, 0.5), ParameterError);
}

TEST_CASE("lattice scan stays at 1") {
  const DiscrepancySeries s = scan(0.5, Commensurable{1, 1}, 4, 16);
  CHECK(s.exhaustive);
  for (double v : s.max_disc) CHECK(v == doctest::Approx(1.0));
  const GrowthFit fit = growth_fit(s);
  CHECK(fit.best == GrowthModel::Constant);
  CHECK(fit.heuristic);
}

TEST_CASE("Fibonacci scan plateaus") {
  const double a = solve_alpha(2, 1);
  const DiscrepancySeries s = scan(a, Commensurable{2, 1}, 4, 20);
  CHECK(s.exhaustive);
  for (std::size_t i = 1; i < s.max_disc.size(); ++i) CHECK(s.max_disc[i] >= s.max_disc[i - 1]);
  CHECK(s.max_disc.back() < 1.3);
  CHECK(s.max_disc.back() == doctest::Approx(s.max_disc[s.max_disc.size() - 6]).epsilon(1e-3));
}

TEST_CASE("not-spread ratio grows like the second eigenvalue predicts") {
  const double a = solve_alpha(7, 3);
  const DiscrepancySeries s = scan(a, Commensurable{7, 3}, 10, 22);
  const GrowthFit fit = growth_fit(s);
  CHECK(fit.best != GrowthModel::Constant);
  const SpreadVerdict v = classify_spreadness(Commensurable{7, 3});
  const double predicted = std::log(v.spectral->lambda_ell_modulus) / std::log(v.spectral->lambda1);
  CHECK(fit.gamma == doctest::Approx(predicted).epsilon(0.1 / predicted));
  CHECK(std::abs(fit.gamma - predicted) < 0.1);
}

TEST_CASE("incommensurable scan grows") {
  const double a = 1.0 / 3.0;
  const DiscrepancySeries s = scan(a, Incommensurable{r_of_alpha(a)}, 10, 22);
  for (std::size_t i = 1; i < s.max_disc.size(); ++i) CHECK(s.max_disc[i] >= s.max_disc[i - 1]);
  CHECK(s.max_disc.back() > 8 * s.max_disc.front());
  const GrowthFit fit = growth_fit(s);
  CHECK(fit.gamma > 0.0);
  CHECK(fit.best != GrowthModel::Constant);
  CHECK(fit.fit(GrowthModel::LinearOverLog).coefficient > 0.0);
}

TEST_CASE("two-sided dominates anchored") {
  const double a = solve_alpha(5, 2);
  const DiscrepancySeries anchored = scan(a, Commensurable{5, 2}, 4, 16);
  const DiscrepancySeries two = scan(a, Commensurable{5, 2}, 4, 16, ScanMode::TwoSided);
  CHECK(two.mode == ScanMode::TwoSided);
  for (std::size_t i = 0; i < anchored.max_disc.size(); ++i) {
    CHECK(two.max_disc[i] >= anchored.max_disc[i] - 1e-9);
    CHECK(two.max_disc[i] <= 2 * anchored.max_disc[i] + 1e-9);
  }
}

TEST_CASE("sampled scans never exceed the exhaustive scan") {
  const double a = 0.3;
  const RatioClass cls = Incommensurable{r_of_alpha(a)};
  ScanGrid grid = ScanGrid::dyadic(4, 14);
  const Horizon h = horizon_covering(a, cls, grid.windows.back());
  const DiscrepancySeries full = discrepancy_scan(a, cls, h, grid);
  grid.max_scan_points = 100;
  grid.samples_per_window = 64;
  const DiscrepancySeries sampled = discrepancy_scan(a, cls, h, grid);
  CHECK(full.exhaustive);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.scanned_points == 11 * 65);
  for (std::size_t i = 0; i < full.max_disc.size(); ++i) CHECK(sampled.max_disc[i] <= full.max_disc[i] + 1e-9);
}

TEST_CASE("scan and fit errors") {
  const double a = 0.3;
  const RatioClass cls = Incommensurable{r_of_alpha(a)};
  ScanGrid grid = ScanGrid::dyadic(2, 10);
  CHECK_THROWS_AS(discrepancy_scan(a, cls, Horizon::continuous(3.0), grid), ParameterError);
  CHECK_THROWS_AS(discrepancy_scan(a, cls, Horizon::continuous(8.0), ScanGrid{}), ParameterError);
  ScanGrid bad;
  bad.windows = {4.0, 2.0};
  CHECK_THROWS_AS(discrepancy_scan(a, cls, Horizon::continuous(8.0), bad), ParameterError);
  CHECK_THROWS_AS(ScanGrid::dyadic(5, 4), ParameterError);
  CHECK_THROWS_AS(ScanGrid::dyadic(0, 63), ParameterError);

  DiscrepancySeries s;
  s.window_sizes = {2, 4, 8, 16, 32, 64, 128};
  s.max_disc = {1, 1, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(growth_fit(s), ParameterError);
  s.window_sizes = {1, 2, 4, 8, 16, 32, 64, 128};
  s.max_disc.push_back(1);
  CHECK_THROWS_AS(growth_fit(s), ParameterError);
  s.window_sizes = {2, 2.1, 2.2, 2.3, 2.4, 2.5, 2.6, 2.7};
  CHECK_THROWS_AS(growth_fit(s), ParameterError);
  s.window_sizes = {2, 4, 8, 16, 32, 64, 128, 256};
  s.max_disc = {1, 2, 3};
  CHECK_THROWS_AS(growth_fit(s), ParameterError);
  s.max_disc = {2, 4, 8, 16, 32, 64, 128, 256};
  const GrowthFit lin = growth_fit(s);
  CHECK(lin.best == GrowthModel::PowerLaw);
  CHECK(lin.gamma == doctest::Approx(1.0));
  CHECK_THROWS_AS(GrowthFit{}.fit(GrowthModel::Constant), ParameterError);
}
