#include "kakutani/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "kakutani/primitive_cover.hpp"

namespace kakutani {

std::string to_string(DensityMethod m) { return m == DensityMethod::ClosedForm ? "closed_form" : "perron"; }

std::string to_string(GrowthModel m) {
  switch (m) {
    case GrowthModel::Constant: return "constant";
    case GrowthModel::PowerLaw: return "power_law";
    case GrowthModel::LinearOverLog: return "linear_over_log";
  }
  return "constant";
}

namespace {

// Right Perron vector of a primitive non-negative matrix, positive entries.
Eigen::VectorXd perron_vector(const SubstitutionMatrix& matrix) {
  const auto k = static_cast<Eigen::Index>(matrix.size());
  Eigen::MatrixXd a(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) a(i, j) = static_cast<double>(matrix(i, j));
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw NumericError("eigen decomposition failed");
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < k; ++i) {
    if (solver.eigenvalues()(i).real() > solver.eigenvalues()(best).real()) best = i;
  }
  Eigen::VectorXd u = solver.eigenvectors().col(best).real();
  if (u.sum() < 0) u = -u;
  if (u.minCoeff() <= 0.0) throw NumericError("Perron vector has a non-positive entry");
  return u / u.sum();
}

}  // namespace

DensityValue asymptotic_density(double alpha, const RatioClass& cls) {
  const double a = AlphaParam(alpha).value();
  if (std::holds_alternative<Incommensurable>(cls)) {
    const double entropy = -a * std::log(a) - (1.0 - a) * std::log1p(-a);
    return {1.0 / entropy, DensityMethod::ClosedForm};
  }
  const auto [n, m] = std::get<Commensurable>(cls);
  if (n == 1 && m == 1) return {1.0, DensityMethod::Perron};
  if (commensurability_residual(a, n, m) > 1e-10) {
    throw ParameterError("alpha does not match the commensurable ratio " + to_string(cls));
  }
  const PrimitiveRule rule = build_rho(n, m);
  const Eigen::VectorXd u = perron_vector(substitution_matrix(rule));
  double length = 0.0;
  for (int j = 1; j <= rule.size(); ++j) length += u(j - 1) * rule.prototile_length(j);
  return {u.sum() / length, DensityMethod::Perron};
}

PrefixCounter::PrefixCounter(double alpha, const Horizon& horizon)
    : inflation_(alpha, horizon), leaves_(inflation_) {}

BigInt PrefixCounter::count(double x) const {
  const double alpha = inflation_.alpha();
  const double eps = 1e-12 * std::max(1.0, inflation_.scale());
  if (!(x >= -eps && x <= inflation_.scale() + eps)) {
    std::ostringstream os;
    os << "prefix query x = " << x << " outside [0, e^t] = [0, " << inflation_.scale() << "]";
    throw ParameterError(os.str());
  }
  BigInt acc = 0;
  LengthExponent e{0, 0};
  double left = 0.0;
  double length = inflation_.scale();
  while (left <= x + eps) {
    if (!inflation_.splits(e)) {
      acc += 1;
      break;
    }
    if (left + length <= x + eps) {
      acc += leaves_.at(e);
      break;
    }
    const double left_len = length * alpha;
    if (left + left_len <= x + eps) {
      acc += leaves_.at(e.left_child());
      left += left_len;
      length -= left_len;
      e = e.right_child();
    } else {
      length = left_len;
      e = e.left_child();
    }
  }
  return acc;
}

BigInt prefix_count(double alpha, const Horizon& horizon, double x) { return PrefixCounter(alpha, horizon).count(x); }

ScanGrid ScanGrid::dyadic(int first, int last) {
  if (first < 0 || last < first || last > 62) throw ParameterError("dyadic grid needs 0 <= first <= last <= 62");
  ScanGrid g;
  for (int j = first; j <= last; ++j) g.windows.push_back(std::ldexp(1.0, j));
  return g;
}

Horizon horizon_covering(double alpha, const RatioClass& cls, double window) {
  if (!(window >= 1.0) || !std::isfinite(window)) throw ParameterError("window must be finite and >= 1");
  const double a = AlphaParam(alpha).value();
  if (const auto* c = std::get_if<Commensurable>(&cls)) {
    const Commensurable ratio = c->n == c->m ? Commensurable{1, 1} : *c;
    const double step = -std::log(a) / ratio.n;
    auto ell = static_cast<std::uint32_t>(std::max(0.0, std::ceil(std::log(window) / step - 1e-9)));
    while (std::exp(ell * step) < window * (1.0 - 1e-12)) ++ell;
    return Horizon::steps(ratio, ell);
  }
  const double t = std::log(window);
  return Horizon::continuous(std::nextafter(t, std::numeric_limits<double>::infinity()) + 1e-12);
}

namespace {

// Running extremes of the signed discrepancy s(x) = N[0, x] - d x.
struct Extremes {
  double max_abs = 0.0;
  double hi = 0.0;  // s(0-) = 0 counts for two-sided intervals starting at 0
  double lo = 0.0;

  void add(double s) {
    max_abs = std::max(max_abs, std::abs(s));
    hi = std::max(hi, s);
    lo = std::min(lo, s);
  }
  double value(ScanMode mode) const { return mode == ScanMode::Anchored ? max_abs : hi - lo; }
};

}  // namespace

DiscrepancySeries discrepancy_scan(double alpha, const RatioClass& cls, const Horizon& horizon, const ScanGrid& grid) {
  if (grid.windows.empty()) throw ParameterError("scan grid has no windows");
  for (std::size_t i = 0; i < grid.windows.size(); ++i) {
    if (!(grid.windows[i] > 0.0) || (i > 0 && !(grid.windows[i] > grid.windows[i - 1]))) {
      throw ParameterError("scan windows must be positive and strictly increasing");
    }
  }
  const DensityValue density = asymptotic_density(alpha, cls);
  const PrefixCounter counter(alpha, horizon);
  const Inflation& inflation = counter.inflation();
  const double w_max = grid.windows.back();
  if (w_max > inflation.scale() * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "largest window " << w_max << " exceeds the patch length e^t = " << inflation.scale();
    throw ParameterError(os.str());
  }

  DiscrepancySeries out;
  out.window_sizes = grid.windows;
  out.density = density.value;
  out.density_method = density.method;
  out.mode = grid.mode;
  const double d = density.value;

  const BigInt points = counter.count(w_max);
  if (points <= grid.max_scan_points) {
    out.exhaustive = true;
    Extremes ext;
    std::size_t next = 0;
    std::uint64_t i = 0;  // points already passed
    for_each_tile(inflation, 0.0, [&](double p, LengthExponent) {
      while (next < grid.windows.size() && grid.windows[next] < p) {
        ext.add(static_cast<double>(i) - d * grid.windows[next]);
        out.max_disc.push_back(ext.value(grid.mode));
        ++next;
      }
      if (next == grid.windows.size()) return false;
      ext.add(static_cast<double>(i) - d * p);
      ext.add(static_cast<double>(i + 1) - d * p);
      ++i;
      return true;
    });
    while (next < grid.windows.size()) {
      ext.add(static_cast<double>(i) - d * grid.windows[next]);
      out.max_disc.push_back(ext.value(grid.mode));
      ++next;
    }
    out.scanned_points = i;
    return out;
  }

  out.exhaustive = false;
  if (grid.samples_per_window == 0) throw ParameterError("samples_per_window must be positive");
  Extremes ext;
  double prev = 0.0;
  for (double w : grid.windows) {
    const double span = w - prev;
    for (std::uint64_t j = 0; j < grid.samples_per_window; ++j) {
      const double x = prev + span * (static_cast<double>(j) + 0.5) / static_cast<double>(grid.samples_per_window);
      ext.add(counter.count(x).convert_to<double>() - d * x);
    }
    ext.add(counter.count(w).convert_to<double>() - d * w);
    out.scanned_points += grid.samples_per_window + 1;
    out.max_disc.push_back(ext.value(grid.mode));
    prev = w;
  }
  return out;
}

const ModelFit& GrowthFit::fit(GrowthModel m) const {
  for (const auto& f : fits) {
    if (f.model == m) return f;
  }
  throw ParameterError("growth model not fitted: " + to_string(m));
}

GrowthFit growth_fit(const DiscrepancySeries& series) {
  const auto& w = series.window_sizes;
  const auto& y = series.max_disc;
  if (w.size() != y.size()) throw ParameterError("series has mismatched lengths");
  if (w.size() < 8) throw ParameterError("growth fit needs at least 8 windows");
  if (!(w.front() > 1.0) || w.back() < 16.0 * w.front()) {
    throw ParameterError("growth fit needs windows > 1 spanning at least 4 doublings");
  }
  const auto n = static_cast<double>(w.size());

  ModelFit constant{GrowthModel::Constant};
  constant.coefficient = std::accumulate(y.begin(), y.end(), 0.0) / n;
  for (double v : y) constant.rss += (v - constant.coefficient) * (v - constant.coefficient);

  ModelFit power{GrowthModel::PowerLaw};
  {
    const double floor = 1e-300;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double lx = std::log(w[i]);
      const double ly = std::log(std::max(y[i], floor));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    power.exponent = (n * sxy - sx * sy) / denom;
    power.coefficient = std::exp((sy - power.exponent * sx) / n);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double r = y[i] - power.coefficient * std::pow(w[i], power.exponent);
      power.rss += r * r;
    }
  }

  ModelFit over_log{GrowthModel::LinearOverLog};
  {
    double sgy = 0, sgg = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double g = w[i] / std::log(w[i]);
      sgy += g * y[i];
      sgg += g * g;
    }
    over_log.coefficient = sgy / sgg;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double r = y[i] - over_log.coefficient * w[i] / std::log(w[i]);
      over_log.rss += r * r;
    }
  }

  GrowthFit out;
  out.fits = {constant, power, over_log};
  out.gamma = power.exponent;
  // Fewer parameters win ties.
  const double best_rss = std::min({constant.rss, over_log.rss, power.rss});
  const auto close = [&](double rss) { return rss <= best_rss * (1.0 + 1e-9) + 1e-12; };
  if (close(constant.rss)) {
    out.best = GrowthModel::Constant;
  } else if (close(over_log.rss)) {
    out.best = GrowthModel::LinearOverLog;
  } else {
    out.best = GrowthModel::PowerLaw;
  }
  return out;
}

}  // namespace kakutani
