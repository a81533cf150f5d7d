#pragma once

// Text artifacts: CSV, JSON, SVG and DOT renderings of patches, rules,
// spectral reports, surveys and discrepancy series. Every artifact carries
// the version string and the resolved run configuration.

#include <string>
#include <vector>

#include <json.hpp>

#include "kakutani/discrepancy.hpp"
#include "kakutani/engine.hpp"
#include "kakutani/primitive_cover.hpp"
#include "kakutani/spectral.hpp"

namespace kakutani {

using Json = nlohmann::ordered_json;

/// Shortest decimal that reads back to the same double.
std::string format_real(double x);

/// {"version": ..., "config": config} merged with body.
Json with_provenance(Json body, const Json& config);

std::string patch_csv(const Patch& patch, const Json& config);
std::string patch_svg(const Patch& patch, const Json& config);
Json patch_json(const Patch& patch, const Json& config);

std::string labelled_patch_csv(const LabelledPatch& patch, const Json& config);
std::string labelled_patch_svg(const LabelledPatch& patch, const Json& config);

std::string point_set_csv(const PointSet& points, const Json& config);

Json polynomial_json(const IntPolynomial& p);
Json matrix_json(const SubstitutionMatrix& matrix);
/// Prototile lengths as exponents of y = 1/xi plus evaluated reals.
Json rule_json(const PrimitiveRule& rule);

/// The refined graph G'_alpha: one node per prototile, one edge per child.
std::string rule_dot(const PrimitiveRule& rule, const Json& config);

Json spectral_json(const SpectralReport& report);

/// {n, m, r, alpha, lambda1, lambda2_modulus, unit_circle_factor, ell,
///  solomon, theorem_verdict, reason} plus consistency and note.
Json verdict_json(const SpreadVerdict& verdict);

struct SurveyRow {
  int n = 1;
  int m = 1;
  double alpha = 0.5;
  SpreadVerdict verdict;
};

/// (1, 1) followed by every coprime m < n <= max_n, sorted by (n, m).
std::vector<SurveyRow> survey(int max_n, const SpectralOptions& options = {});

std::string survey_csv(const std::vector<SurveyRow>& rows, const Json& config);
Json survey_json(const std::vector<SurveyRow>& rows, const Json& config);

Json three_interval_json(const ThreeIntervalVerdict& verdict);

std::string discrepancy_csv(const DiscrepancySeries& series, const Json& config);
Json discrepancy_json(const DiscrepancySeries& series, const std::optional<GrowthFit>& fit, const Json& config);
Json fit_json(const GrowthFit& fit);
/// Log-log plot of max_disc against W.
std::string discrepancy_svg(const DiscrepancySeries& series, const Json& config);

}  // namespace kakutani
