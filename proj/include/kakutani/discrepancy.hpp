#pragma once

// Empirical side of the spreadness question: asymptotic density, exact
// prefix counts of the left-endpoint Delone set of F_t(I) anchored at 0,
// anchored discrepancy scans and a heuristic growth classifier.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kakutani/core.hpp"
#include "kakutani/engine.hpp"

namespace kakutani {

enum class DensityMethod { ClosedForm, Perron };

struct DensityValue {
  double value = 0.0;
  DensityMethod method = DensityMethod::ClosedForm;
};

std::string to_string(DensityMethod m);

/// Incommensurable: 1 / (-alpha log alpha - (1 - alpha) log(1 - alpha)).
/// Commensurable: (1^T u) / (L^T u) for the right Perron vector u of M_alpha
/// and prototile lengths L, i.e. tiles per unit length; exactly 1 for alpha = 1/2.
DensityValue asymptotic_density(double alpha, const RatioClass& cls);

/// Number of left endpoints of F_t(I) (anchored at 0) in [0, x], by descent
/// through the substitution tree: O(depth) straddling nodes are expanded and
/// whole subtrees are counted from memoized leaf counts. x must lie in [0, e^t].
class PrefixCounter {
 public:
  PrefixCounter(double alpha, const Horizon& horizon);

  const Inflation& inflation() const noexcept { return inflation_; }
  BigInt total() const { return leaves_.total(); }
  BigInt count(double x) const;

 private:
  Inflation inflation_;
  LeafCounts leaves_;
};

BigInt prefix_count(double alpha, const Horizon& horizon, double x);

enum class ScanMode {
  Anchored,  // intervals [0, x]
  TwoSided,  // intervals (y, x] inside [0, W]
};

struct ScanGrid {
  std::vector<double> windows;  // increasing
  ScanMode mode = ScanMode::Anchored;
  /// Above this many tile boundaries in [0, W_max] the scan switches from
  /// every boundary to a stratified sample of prefix_count queries.
  std::uint64_t max_scan_points = 200'000'000;
  std::uint64_t samples_per_window = 4096;

  /// W = 2^j for j = first..last.
  static ScanGrid dyadic(int first, int last);
};

struct DiscrepancySeries {
  std::vector<double> window_sizes;
  std::vector<double> max_disc;  // non-decreasing
  double density = 0.0;
  DensityMethod density_method = DensityMethod::ClosedForm;
  ScanMode mode = ScanMode::Anchored;
  bool exhaustive = true;  // every tile boundary and its left limit was scanned
  std::uint64_t scanned_points = 0;
};

/// For each window W: sup over x <= W of |#(Lambda cap [0, x]) - d x|, attained
/// at a point of Lambda or just before it. Two-sided mode reports the sup
/// over subintervals of [0, W] instead.
DiscrepancySeries discrepancy_scan(double alpha, const RatioClass& cls, const Horizon& horizon, const ScanGrid& grid);

/// Smallest horizon with e^t >= window (exact steps for commensurable ratios).
Horizon horizon_covering(double alpha, const RatioClass& cls, double window);

enum class GrowthModel { Constant, PowerLaw, LinearOverLog };

std::string to_string(GrowthModel m);

struct ModelFit {
  GrowthModel model = GrowthModel::Constant;
  double coefficient = 0.0;
  double exponent = 0.0;  // power law only
  double rss = 0.0;       // sum of squared residuals on max_disc
};

/// Least-squares fits of c, c W^gamma and c W / log W. This is evidence about
/// growth, never a proof of boundedness.
struct GrowthFit {
  std::vector<ModelFit> fits;  // constant, power law, W/log W
  GrowthModel best = GrowthModel::Constant;
  double gamma = 0.0;
  bool heuristic = true;

  const ModelFit& fit(GrowthModel m) const;
};

/// Needs >= 8 windows spanning >= 4 doublings.
GrowthFit growth_fit(const DiscrepancySeries& series);

}  // namespace kakutani
