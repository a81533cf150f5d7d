#include "kakutani/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kakutani {

Horizon Horizon::continuous(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("flow time t must be a finite value >= 0");
  Horizon h;
  h.t_ = t;
  return h;
}

Horizon Horizon::steps(Commensurable ratio, std::uint32_t ell) {
  require_coprime_ratio(ratio.n, ratio.m);
  Horizon h;
  h.ratio_ = ratio;
  h.ell_ = ell;
  return h;
}

double Horizon::t(double alpha) const {
  if (ratio_) return ell_ * (-std::log(alpha)) / ratio_->n;
  return t_;
}

Inflation::Inflation(double alpha, const Horizon& horizon)
    : alpha_(AlphaParam(alpha).value()),
      log_alpha_(std::log(alpha)),
      log_beta_(std::log1p(-alpha)),
      t_(horizon.t(alpha)),
      scale_(std::exp(t_)),
      ratio_(horizon.ratio()),
      ell_(horizon.ell()) {
  if (ratio_ && commensurability_residual(alpha, ratio_->n, ratio_->m) > 1e-10) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha " << alpha << " does not satisfy alpha^" << ratio_->m << " = (1 - alpha)^" << ratio_->n;
    throw ParameterError(os.str());
  }
}

GraphAlpha GraphAlpha::from_alpha(double alpha) {
  const AlphaParam a(alpha);
  return {-std::log(a.value()), -std::log1p(-a.value())};
}

Patch substitute_once(const Tile& tile, double alpha) {
  if (tile.label) throw ParameterError("substitute_once applies to unlabelled tiles only");
  AlphaParam::normalized(alpha);
  Patch out;
  out.alpha = alpha;
  const LengthExponent left = tile.length.left_child();
  out.tiles.push_back(Tile{tile.position, left, std::nullopt});
  out.tiles.push_back(Tile{tile.position + ExactPosition::monomial(left), tile.length.right_child(), std::nullopt});
  return out;
}

Patch generate_patch(double alpha, const Horizon& horizon, double origin_offset, const GenerateOptions& options) {
  if (!(origin_offset > 0.0 && origin_offset < 1.0)) {
    throw ParameterError("origin_offset must lie in (0, 1)");
  }
  const double scale = std::exp(horizon.t(AlphaParam(alpha).value()));
  return generate_anchored(alpha, horizon, -origin_offset * scale, options);
}

Patch generate_anchored(double alpha, const Horizon& horizon, double left, const GenerateOptions& options) {
  const Inflation inflation(alpha, horizon);
  const BigInt total = count_tiles(alpha, horizon);
  if (total > options.max_tiles) {
    std::ostringstream os;
    os << "F_t(I) has " << total << " tiles, above the cap of " << options.max_tiles;
    throw ResourceError(os.str());
  }

  Patch patch;
  patch.alpha = alpha;
  patch.anchor = left;
  patch.scale = inflation.scale();
  patch.tiles.reserve(total.convert_to<std::size_t>());

  struct Node {
    LengthExponent e;
    ExactPosition position;
  };
  std::vector<Node> stack;
  stack.push_back({{0, 0}, ExactPosition{}});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (!inflation.splits(node.e)) {
      patch.tiles.push_back(Tile{std::move(node.position), node.e, std::nullopt});
      continue;
    }
    const LengthExponent l = node.e.left_child();
    stack.push_back({node.e.right_child(), node.position + ExactPosition::monomial(l)});
    stack.push_back({l, std::move(node.position)});
  }
  return patch;
}

LeafCounts::LeafCounts(const Inflation& inflation) {
  // Substituted exponents form a down-set in (a, b).
  if (!inflation.splits({0, 0})) return;
  std::uint32_t max_a = 0;
  while (inflation.splits({max_a + 1, 0})) ++max_a;
  table_.resize(max_a + 1);
  for (std::uint32_t a = max_a + 1; a-- > 0;) {
    std::uint32_t max_b = 0;
    while (inflation.splits({a, max_b + 1})) ++max_b;
    auto& row = table_[a];
    row.assign(max_b + 1, BigInt(0));
    for (std::uint32_t b = max_b + 1; b-- > 0;) {
      row[b] = at({a + 1, b}) + (b == max_b ? BigInt(1) : row[b + 1]);
    }
  }
}

BigInt LeafCounts::at(LengthExponent e) const {
  if (e.a >= table_.size() || e.b >= table_[e.a].size()) return 1;
  return table_[e.a][e.b];
}

BigInt count_tiles(double alpha, const Horizon& horizon) { return LeafCounts(Inflation(alpha, horizon)).total(); }

PointSet PointSet::complete(std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  PointSet s;
  s.points = std::move(points);
  return s;
}

PointSet delone_points(const Patch& patch) {
  if (patch.tiles.empty()) throw ParameterError("delone_points needs a non-empty patch");
  PointSet s;
  s.window_left = patch.left();
  s.window_right = patch.right();
  s.points.reserve(patch.tiles.size());
  s.exact.reserve(patch.tiles.size());
  for (std::size_t i = 0; i < patch.tiles.size(); ++i) {
    s.points.push_back(patch.tile_left(i));
    s.exact.push_back(patch.tiles[i].position);
  }
  return s;
}

namespace {

double nearest_distance(const std::vector<double>& sorted, double x) {
  if (sorted.empty()) return std::numeric_limits<double>::infinity();
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  double best = std::numeric_limits<double>::infinity();
  if (it != sorted.end()) best = *it - x;
  if (it != sorted.begin()) best = std::min(best, x - *std::prev(it));
  return best;
}

// Smallest eps at which every point of `from` is either outside (-1/eps, 1/eps)
// or within eps of `to`. Each point switches on at min(dist, 1/|x|).
double containment_threshold(const std::vector<double>& from, const std::vector<double>& to) {
  double threshold = 0.0;
  for (double x : from) {
    const double dist = nearest_distance(to, x);
    const double exit = x == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / std::abs(x);
    threshold = std::max(threshold, std::min(dist, exit));
  }
  return threshold;
}

bool covers(const PointSet& s, double lo, double hi) { return s.window_left <= lo && s.window_right >= hi; }

}  // namespace

ChabautyFell chabauty_fell_distance(const PointSet& a, const PointSet& b) {
  const double v = std::max(containment_threshold(a.points, b.points), containment_threshold(b.points, a.points));
  ChabautyFell out;
  out.distance = std::min(1.0, v);
  const double reach = out.distance == 0.0 ? std::numeric_limits<double>::infinity()
                                           : 1.0 / out.distance + out.distance;
  out.certified = covers(a, -reach, reach) && covers(b, -reach, reach);
  return out;
}

}  // namespace kakutani
