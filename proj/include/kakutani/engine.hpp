#pragma once

// The substitution semi-flow F_t on the unit interval: patch generation,
// walk/tile counting, Delone point extraction and the Chabauty-Fell metric.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

#include "kakutani/core.hpp"

namespace kakutani {

/// How far the semi-flow runs. Either a real time t, or an exact number of
/// steps ell of size g = log(1/alpha)/n for a commensurable ratio n/m, in
/// which case the "longer than 1" test is decided in integer arithmetic.
class Horizon {
 public:
  static Horizon continuous(double t);
  static Horizon steps(Commensurable ratio, std::uint32_t ell);

  bool is_exact() const noexcept { return ratio_.has_value(); }
  const std::optional<Commensurable>& ratio() const noexcept { return ratio_; }
  std::uint32_t ell() const noexcept { return ell_; }

  /// The flow time for the given alpha.
  double t(double alpha) const;

 private:
  Horizon() = default;
  double t_ = 0.0;
  std::optional<Commensurable> ratio_;
  std::uint32_t ell_ = 0;
};

/// Horizon resolved against a concrete alpha; decides which tiles of e^t I
/// get substituted. Cheap to copy.
class Inflation {
 public:
  /// Tolerance for "longer than 1" when the horizon is a real time.
  static constexpr double kUnitTolerance = 1e-12;

  Inflation(double alpha, const Horizon& horizon);

  double alpha() const noexcept { return alpha_; }
  double t() const noexcept { return t_; }
  double scale() const noexcept { return scale_; }  // e^t

  /// True iff the tile e^t * alpha^a (1 - alpha)^b is strictly longer than 1.
  bool splits(LengthExponent e) const noexcept {
    if (ratio_) {
      return static_cast<std::int64_t>(ratio_->n) * e.a + static_cast<std::int64_t>(ratio_->m) * e.b <
             static_cast<std::int64_t>(ell_);
    }
    return t_ + e.a * log_alpha_ + e.b * log_beta_ > kUnitTolerance;
  }

 private:
  double alpha_;
  double log_alpha_;
  double log_beta_;
  double t_;
  double scale_;
  std::optional<Commensurable> ratio_;
  std::uint32_t ell_ = 0;
};

/// G_alpha: one vertex with two loops of lengths log(1/alpha) and log(1/(1 - alpha)).
struct GraphAlpha {
  double alpha_loop = 0.0;
  double beta_loop = 0.0;

  static GraphAlpha from_alpha(double alpha);
};

struct GenerateOptions {
  std::uint64_t max_tiles = 100'000'000;
};

/// One application of the Kakutani rule to an unlabelled tile: the alpha
/// copy on the left, the (1 - alpha) copy on the right. Returned in the
/// tile's own coordinates (anchor 0, scale 1).
Patch substitute_once(const Tile& tile, double alpha);

/// F_t(I) with I placed so that its left endpoint sits at -origin_offset * e^t.
/// origin_offset must lie in (0, 1).
Patch generate_patch(double alpha, const Horizon& horizon, double origin_offset = 0.5,
                     const GenerateOptions& options = {});

/// F_t(I) with its left endpoint at `left`.
Patch generate_anchored(double alpha, const Horizon& horizon, double left, const GenerateOptions& options = {});

/// Leaf counts leaves(a, b) of the substitution tree below every substituted
/// node; leaves(a, b) = 1 for nodes that are not substituted.
class LeafCounts {
 public:
  explicit LeafCounts(const Inflation& inflation);

  BigInt at(LengthExponent e) const;
  BigInt total() const { return at({0, 0}); }

 private:
  std::vector<std::vector<BigInt>> table_;  // table_[a][b]
};

/// Number of tiles of F_t(I), equivalently of directed walks of length t on
/// G_alpha from its vertex, without materializing the patch.
BigInt count_tiles(double alpha, const Horizon& horizon);

/// Visits the tiles of F_t(I) left to right without storing them. The
/// visitor receives (left endpoint, length exponent); if it returns bool,
/// false stops the walk. Positions are plain doubles accumulated from the
/// anchor.
template <class Visitor>
void for_each_tile(const Inflation& inflation, double anchor, Visitor&& visit) {
  struct Node {
    LengthExponent e;
    double left;
    double length;
  };
  const double alpha = inflation.alpha();
  const double beta = 1.0 - alpha;
  std::vector<Node> stack;
  stack.reserve(256);
  stack.push_back({{0, 0}, anchor, inflation.scale()});
  while (!stack.empty()) {
    const Node node = stack.back();
    stack.pop_back();
    if (!inflation.splits(node.e)) {
      if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, double, LengthExponent>, bool>) {
        if (!visit(node.left, node.e)) return;
      } else {
        visit(node.left, node.e);
      }
      continue;
    }
    const double left_len = node.length * alpha;
    stack.push_back({node.e.right_child(), node.left + left_len, node.length * beta});
    stack.push_back({node.e.left_child(), node.left, left_len});
  }
}

/// A finite window of a point set. An infinite window means the listed
/// points are the whole set.
struct PointSet {
  std::vector<double> points;  // strictly increasing
  double window_left = -std::numeric_limits<double>::infinity();
  double window_right = std::numeric_limits<double>::infinity();
  std::vector<ExactPosition> exact;  // parallel to points when known (patch-relative)

  static PointSet complete(std::vector<double> points);
};

/// Left endpoints of the tiles of a patch. The window is the patch support.
PointSet delone_points(const Patch& patch);

struct ChabautyFell {
  double distance = 1.0;
  /// False when a window fails to cover (-1/D - D, 1/D + D); the distance is
  /// then only a lower bound for the underlying closed sets.
  bool certified = true;
};

/// Chabauty-Fell distance between two closed sets given by finite windows.
ChabautyFell chabauty_fell_distance(const PointSet& a, const PointSet& b);

}  // namespace kakutani
