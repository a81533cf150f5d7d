#include "kakutani/export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace kakutani {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json with_provenance(Json body, const Json& config) {
  Json out;
  out["version"] = kVersion;
  out["config"] = config;
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

namespace {

std::string csv_header(const Json& config) {
  return std::string("# ") + kVersion + "\n# config " + config.dump() + "\n";
}

std::string svg_metadata(const Json& config) {
  return std::string("<metadata><![CDATA[") + Json{{"version", kVersion}, {"config", config}}.dump() +
         "]]></metadata>\n";
}

constexpr double kSvgWidth = 1000.0;
constexpr double kBarHeight = 40.0;

const char* label_fill(int label) {
  static const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                  "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  return palette[static_cast<std::size_t>(label - 1) % 10];
}

template <class LeftOf, class LengthOf, class FillOf>
std::string bars_svg(std::size_t count, double left, double right, LeftOf left_of, LengthOf length_of, FillOf fill_of,
                     const Json& config) {
  const double span = right - left;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgWidth + 20 << "\" height=\""
     << kBarHeight + 20 << "\" viewBox=\"-10 -10 " << kSvgWidth + 20 << ' ' << kBarHeight + 20 << "\">\n";
  os << svg_metadata(config);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = (left_of(i) - left) / span * kSvgWidth;
    const double w = length_of(i) / span * kSvgWidth;
    os << "<rect x=\"" << format_real(x) << "\" y=\"0\" width=\"" << format_real(w) << "\" height=\"" << kBarHeight
       << "\" fill=\"" << fill_of(i) << "\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::string patch_csv(const Patch& patch, const Json& config) {
  std::ostringstream os;
  os << csv_header(config) << "position,length,label\n";
  for (std::size_t i = 0; i < patch.tiles.size(); ++i) {
    os << format_real(patch.tile_left(i)) << ',' << format_real(patch.tile_length(i)) << ',';
    if (patch.tiles[i].label) os << *patch.tiles[i].label;
    os << '\n';
  }
  return os.str();
}

std::string patch_svg(const Patch& patch, const Json& config) {
  return bars_svg(
      patch.tiles.size(), patch.left(), patch.right(), [&](std::size_t i) { return patch.tile_left(i); },
      [&](std::size_t i) { return patch.tile_length(i); },
      [&](std::size_t i) { return patch.tiles[i].label ? label_fill(*patch.tiles[i].label) : "#c6dbef"; }, config);
}

Json patch_json(const Patch& patch, const Json& config) {
  Json tiles = Json::array();
  for (std::size_t i = 0; i < patch.tiles.size(); ++i) {
    const Tile& t = patch.tiles[i];
    Json pos = Json::array();
    for (const auto& [e, c] : t.position.terms()) pos.push_back({{"a", e.a}, {"b", e.b}, {"coefficient", c}});
    Json tile{{"position", patch.tile_left(i)},
              {"length", patch.tile_length(i)},
              {"length_exponent", {{"a", t.length.a}, {"b", t.length.b}}},
              {"exact_position", pos}};
    if (t.label) tile["label"] = *t.label;
    tiles.push_back(std::move(tile));
  }
  return with_provenance({{"alpha", patch.alpha}, {"anchor", patch.anchor}, {"scale", patch.scale}, {"tiles", tiles}},
                         config);
}

std::string labelled_patch_csv(const LabelledPatch& patch, const Json& config) {
  std::ostringstream os;
  os << csv_header(config) << "position,length,label\n";
  for (std::size_t i = 0; i < patch.tiles.size(); ++i) {
    os << format_real(patch.tile_left(i)) << ',' << format_real(patch.tile_length(i)) << ',' << patch.tiles[i].label
       << '\n';
  }
  return os.str();
}

std::string labelled_patch_svg(const LabelledPatch& patch, const Json& config) {
  return bars_svg(
      patch.tiles.size(), 0.0, patch.right(), [&](std::size_t i) { return patch.tile_left(i); },
      [&](std::size_t i) { return patch.tile_length(i); }, [&](std::size_t i) { return label_fill(patch.tiles[i].label); },
      config);
}

std::string point_set_csv(const PointSet& points, const Json& config) {
  std::ostringstream os;
  os << csv_header(config) << "position\n";
  for (double x : points.points) os << format_real(x) << '\n';
  return os.str();
}

Json polynomial_json(const IntPolynomial& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(c.str());
  return {{"text", p.to_string()}, {"coefficients", coeffs}};
}

Json matrix_json(const SubstitutionMatrix& matrix) {
  return {{"size", matrix.size()}, {"row_major", matrix.row_major()}};
}

Json rule_json(const PrimitiveRule& rule) {
  Json prototiles = Json::array();
  for (int j = 1; j <= rule.size(); ++j) {
    Json children = Json::array();
    for (const auto& c : rule.image[static_cast<std::size_t>(j - 1)]) {
      children.push_back({{"label", c.label}, {"offset", c.offset.to_string('y')}});
    }
    prototiles.push_back({{"label", j},
                          {"length_power", rule.length_power[static_cast<std::size_t>(j - 1)]},
                          {"length", rule.prototile_length(j)},
                          {"image", children}});
  }
  return {{"loops", rule.loops},         {"y", rule.y},
          {"xi", rule.xi},               {"relation", rule.relation.to_string('y') + " = 0"},
          {"prototiles", prototiles},    {"matrix", matrix_json(substitution_matrix(rule))}};
}

std::string rule_dot(const PrimitiveRule& rule, const Json& config) {
  std::ostringstream os;
  os << "// " << kVersion << "\n// config " << config.dump() << "\ndigraph G {\n  rankdir=LR;\n";
  for (int j = 1; j <= rule.size(); ++j) {
    os << "  " << j << " [label=\"" << j << ": y^" << rule.length_power[static_cast<std::size_t>(j - 1)] << "\"];\n";
  }
  for (int j = 1; j <= rule.size(); ++j) {
    for (const auto& c : rule.image[static_cast<std::size_t>(j - 1)]) os << "  " << j << " -> " << c.label << ";\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

std::string unit_factor_text(const UnitCircleFactors& f) {
  std::string s;
  for (int j : f.cyclotomic_indices) {
    if (!s.empty()) s += " * ";
    s += "(" + cyclotomic(j).to_string() + ")";
  }
  return s;
}

}  // namespace

Json spectral_json(const SpectralReport& report) {
  Json roots = Json::array();
  for (const auto& r : report.roots) {
    roots.push_back({{"re", r.value.real()}, {"im", r.value.imag()}, {"modulus", r.modulus()}});
  }
  Json factors = Json::array();
  for (int j : report.unit_factors.cyclotomic_indices) factors.push_back(j);
  return {{"char_poly", polynomial_json(report.char_poly)},
          {"reduced", polynomial_json(report.reduced)},
          {"lambda1", report.lambda1},
          {"lambda2_modulus", report.lambda2_modulus},
          {"ell", report.ell},
          {"lambda_ell_modulus", report.lambda_ell_modulus},
          {"has_unit_modulus_eigenvalue", report.has_unit_modulus_eigenvalue},
          {"cyclotomic_factors", factors},
          {"cofactor", report.unit_factors.cofactor.to_string()},
          {"solomon", to_string(report.solomon)},
          {"unresolved", report.unresolved},
          {"roots", roots}};
}

Json verdict_json(const SpreadVerdict& verdict) {
  Json out;
  if (const auto* c = std::get_if<Commensurable>(&verdict.ratio)) {
    out["n"] = c->n;
    out["m"] = c->m;
    out["r"] = static_cast<double>(c->n) / c->m;
    out["alpha"] = c->n == c->m ? 0.5 : solve_alpha(c->n, c->m);
  } else {
    const double r = std::get<Incommensurable>(verdict.ratio).r;
    out["n"] = nullptr;
    out["m"] = nullptr;
    out["r"] = r;
    out["alpha"] = nullptr;
  }
  if (verdict.spectral) {
    const SpectralReport& s = *verdict.spectral;
    out["lambda1"] = s.lambda1;
    out["lambda2_modulus"] = s.lambda2_modulus;
    out["unit_circle_factor"] = s.unit_factors.found() ? Json(unit_factor_text(s.unit_factors)) : Json(nullptr);
    out["ell"] = s.ell;
    out["solomon"] = to_string(s.solomon);
  } else {
    out["lambda1"] = nullptr;
    out["lambda2_modulus"] = nullptr;
    out["unit_circle_factor"] = nullptr;
    out["ell"] = nullptr;
    out["solomon"] = nullptr;
  }
  out["theorem_verdict"] = verdict.theorem_verdict ? "spread" : "not_spread";
  out["reason"] = to_string(verdict.reason);
  out["consistent"] = verdict.consistent;
  out["note"] = verdict.note;
  return out;
}

std::vector<SurveyRow> survey(int max_n, const SpectralOptions& options) {
  if (max_n < 1) throw ParameterError("survey needs max_n >= 1");
  std::vector<SurveyRow> rows;
  rows.push_back({1, 1, 0.5, classify_spreadness(Commensurable{1, 1}, options)});
  for (int n = 2; n <= max_n; ++n) {
    for (int m = 1; m < n; ++m) {
      if (std::gcd(n, m) != 1) continue;
      rows.push_back({n, m, solve_alpha(n, m), classify_spreadness(Commensurable{n, m}, options)});
    }
  }
  return rows;
}

std::string survey_csv(const std::vector<SurveyRow>& rows, const Json& config) {
  std::ostringstream os;
  os << csv_header(config) << "n,m,alpha,lambda1,lambda2_modulus,solomon,theorem\n";
  for (const auto& row : rows) {
    const SpectralReport& s = *row.verdict.spectral;
    os << row.n << ',' << row.m << ',' << format_real(row.alpha) << ',' << format_real(s.lambda1) << ','
       << format_real(s.lambda2_modulus) << ',' << to_string(s.solomon) << ','
       << (row.verdict.theorem_verdict ? "spread" : "not_spread") << '\n';
  }
  return os.str();
}

Json survey_json(const std::vector<SurveyRow>& rows, const Json& config) {
  Json list = Json::array();
  for (const auto& row : rows) list.push_back(verdict_json(row.verdict));
  return with_provenance({{"rows", list}}, config);
}

Json three_interval_json(const ThreeIntervalVerdict& verdict) {
  const auto& r = verdict.rule;
  return {{"lengths_exponents", r.length_exponents},
          {"lengths", r.lengths},
          {"xi", r.rule.xi},
          {"f", polynomial_json(r.f)},
          {"pv_family", verdict.pv_family ? Json(to_string(*verdict.pv_family)) : Json(nullptr)},
          {"listed_spread", verdict.listed_spread},
          {"solomon", to_string(verdict.spectral.solomon)},
          {"agree", verdict.agree},
          {"rule", rule_json(r.rule)},
          {"spectral", spectral_json(verdict.spectral)}};
}

std::string discrepancy_csv(const DiscrepancySeries& series, const Json& config) {
  std::ostringstream os;
  os << csv_header(config) << "window,max_disc\n";
  for (std::size_t i = 0; i < series.window_sizes.size(); ++i) {
    os << format_real(series.window_sizes[i]) << ',' << format_real(series.max_disc[i]) << '\n';
  }
  return os.str();
}

Json fit_json(const GrowthFit& fit) {
  Json models = Json::array();
  for (const auto& f : fit.fits) {
    Json m{{"model", to_string(f.model)}, {"coefficient", f.coefficient}, {"rss", f.rss}};
    if (f.model == GrowthModel::PowerLaw) m["exponent"] = f.exponent;
    models.push_back(std::move(m));
  }
  return {{"best", to_string(fit.best)}, {"gamma", fit.gamma}, {"heuristic", fit.heuristic}, {"models", models}};
}

Json discrepancy_json(const DiscrepancySeries& series, const std::optional<GrowthFit>& fit, const Json& config) {
  Json points = Json::array();
  for (std::size_t i = 0; i < series.window_sizes.size(); ++i) {
    points.push_back({{"window", series.window_sizes[i]}, {"max_disc", series.max_disc[i]}});
  }
  Json body{{"density", series.density},
            {"density_method", to_string(series.density_method)},
            {"mode", series.mode == ScanMode::Anchored ? "anchored" : "two_sided"},
            {"exhaustive", series.exhaustive},
            {"scanned_points", series.scanned_points},
            {"series", points}};
  body["fit"] = fit ? fit_json(*fit) : Json(nullptr);
  return with_provenance(std::move(body), config);
}

std::string discrepancy_svg(const DiscrepancySeries& series, const Json& config) {
  constexpr double w = 600, h = 400, pad = 50;
  const auto& xs = series.window_sizes;
  const auto& ys = series.max_disc;
  const double floor = 1e-3;
  const auto [xmin_it, xmax_it] = std::minmax_element(xs.begin(), xs.end());
  double ymin = std::log10(std::max(floor, *std::min_element(ys.begin(), ys.end())));
  double ymax = std::log10(std::max(floor, *std::max_element(ys.begin(), ys.end())));
  double xmin = std::log10(*xmin_it);
  double xmax = std::log10(*xmax_it);
  if (xmax - xmin < 1e-9) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const auto px = [&](double x) { return pad + (std::log10(x) - xmin) / (xmax - xmin) * (w - 2 * pad); };
  const auto py = [&](double y) {
    return h - pad - (std::log10(std::max(floor, y)) - ymin) / (ymax - ymin) * (h - 2 * pad);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << svg_metadata(config);
  os << "<line x1=\"" << pad << "\" y1=\"" << h - pad << "\" x2=\"" << w - pad << "\" y2=\"" << h - pad
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << h - pad
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">log10 W</text>\n";
  os << "<text x=\"15\" y=\"" << h / 2 << "\" transform=\"rotate(-90 15 " << h / 2
     << ")\" text-anchor=\"middle\">log10 max_disc</text>\n";
  os << "<polyline fill=\"none\" stroke=\"#4e79a7\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ' ';
    os << format_real(px(xs[i])) << ',' << format_real(py(ys[i]));
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace kakutani
