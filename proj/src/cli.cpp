#include "kakutani/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "kakutani/export.hpp"

namespace kakutani {

namespace {

constexpr std::uint64_t kDefaultMaxTiles = 100'000'000;
constexpr std::uint64_t kDefaultMaxScanPoints = 200'000'000;
constexpr int kDefaultMaxSurveyN = 64;
constexpr int kDefaultMaxDenominator = 1000;

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::uint64_t v = 0;
  const std::string s(raw);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || v == 0) {
    throw ParameterError(std::string(name) + " must be a positive integer");
  }
  return v;
}

Commensurable parse_ratio(const std::string& text) {
  const auto slash = text.find('/');
  int n = 0;
  int m = 1;
  const auto parse_int = [&text](std::size_t from, std::size_t to, int& dst) {
    const auto res = std::from_chars(text.data() + from, text.data() + to, dst);
    if (res.ec != std::errc() || res.ptr != text.data() + to || from == to) {
      throw ParameterError("ratio must look like n/m, got '" + text + "'");
    }
  };
  if (slash == std::string::npos) {
    parse_int(0, text.size(), n);
  } else {
    parse_int(0, slash, n);
    parse_int(slash + 1, text.size(), m);
  }
  require_coprime_ratio(n, m);
  return {n, m};
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size() || item.empty()) {
      throw ParameterError("expected a comma-separated integer list, got '" + text + "'");
    }
    out.push_back(v);
  }
  return out;
}

struct ParamArgs {
  std::string ratio;
  std::optional<double> alpha;
  int max_den = kDefaultMaxDenominator;
  double alpha_tol = AlphaParam::kDefaultTolerance;
};

struct Resolved {
  double alpha = 0.5;
  RatioClass cls;
};

Resolved resolve(const ParamArgs& p, Json& config) {
  Resolved r;
  if (!p.ratio.empty() && p.alpha) throw ParameterError("give either --ratio or --alpha, not both");
  if (!p.ratio.empty()) {
    const Commensurable c = parse_ratio(p.ratio);
    r.cls = c;
    r.alpha = c.n == c.m ? 0.5 : solve_alpha(c.n, c.m);
    config["ratio"] = std::to_string(c.n) + "/" + std::to_string(c.m);
  } else if (p.alpha) {
    const AlphaParam a = AlphaParam::normalized(*p.alpha, p.alpha_tol);
    r.cls = detect_commensurability(a, p.max_den);
    r.alpha = a.value();
    if (const auto* c = std::get_if<Commensurable>(&r.cls)) r.alpha = c->n == c->m ? 0.5 : solve_alpha(c->n, c->m);
    config["alpha_input"] = *p.alpha;
    config["alpha_tolerance"] = p.alpha_tol;
    config["max_denominator"] = p.max_den;
    config["ratio_class"] = to_string(r.cls);
  } else {
    throw ParameterError("give --ratio n/m or --alpha a");
  }
  config["alpha"] = r.alpha;
  return r;
}

void add_param_options(CLI::App* cmd, ParamArgs& p) {
  cmd->add_option("--ratio", p.ratio, "exact ratio n/m of log(alpha) to log(1 - alpha)");
  cmd->add_option("--alpha", p.alpha, "split parameter; the ratio is detected heuristically");
  cmd->add_option("--max-den", p.max_den, "denominator bound for ratio detection")->capture_default_str();
  cmd->add_option("--alpha-tol", p.alpha_tol, "relative tolerance for ratio detection")->capture_default_str();
}

Horizon resolve_horizon(const Resolved& r, std::optional<double> t, std::optional<std::uint32_t> ell, Json& config) {
  if (t && ell) throw ParameterError("give either --t or --ell, not both");
  if (ell) {
    const auto* c = std::get_if<Commensurable>(&r.cls);
    if (c == nullptr) throw ParameterError("--ell needs a commensurable ratio");
    config["ell"] = *ell;
    return Horizon::steps(c->n == c->m ? Commensurable{1, 1} : *c, *ell);
  }
  if (t) {
    config["t"] = *t;
    return Horizon::continuous(*t);
  }
  throw ParameterError("give --t or --ell");
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParameterError("cannot open " + path + " for writing");
  file << text;
  if (!file) throw ParameterError("failed writing " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ParameterError("format '" + format + "' not available here; use one of " + list);
}

int verdict_exit(Solomon s) {
  switch (s) {
    case Solomon::Spread: return kExitSpread;
    case Solomon::NotSpread: return kExitNotSpread;
    case Solomon::Boundary: return kExitBoundary;
  }
  return kExitBoundary;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kakutani multiscale substitution tilings: generation, spectra and spreadness", "kakutani"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string format;
  std::string out_path;
  std::optional<std::uint64_t> max_tiles;

  const auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "json, csv or svg (dot for spectrum)");
    cmd->add_option("--out", out_path, "write to this file instead of stdout");
  };

  ParamArgs params;
  std::optional<double> t;
  std::optional<std::uint32_t> ell;

  auto* classify = app.add_subcommand("classify", "spreadness verdict for one parameter");
  add_param_options(classify, params);

  int max_n = 12;
  auto* survey_cmd = app.add_subcommand("survey", "verdict table over coprime m < n <= N");
  survey_cmd->add_option("--max-n", max_n, "largest n")->capture_default_str();

  auto* solve = app.add_subcommand("solve-alpha", "alpha with alpha^m = (1 - alpha)^n");
  std::string solve_ratio;
  solve->add_option("--ratio", solve_ratio, "n/m")->required();

  auto* generate = app.add_subcommand("generate", "the patch F_t(I)");
  add_param_options(generate, params);
  generate->add_option("--t", t, "flow time");
  generate->add_option("--ell", ell, "exact steps of size log(1/alpha)/n");
  double offset = 0.5;
  generate->add_option("--offset", offset, "I starts at -offset * e^t")->capture_default_str();
  bool primitive = false;
  generate->add_flag("--primitive", primitive, "labelled patch of the primitive cover (needs --ratio and --ell)");
  bool points_only = false;
  generate->add_flag("--points", points_only, "left endpoints only (csv)");
  generate->add_option("--max-tiles", max_tiles, "tile cap");

  auto* spectrum = app.add_subcommand("spectrum", "substitution matrix, characteristic polynomial and eigenvalues");
  std::string spectrum_ratio;
  spectrum->add_option("--ratio", spectrum_ratio, "n/m with n > m")->required();

  auto* disc = app.add_subcommand("discrepancy", "anchored discrepancy scan and growth fit");
  add_param_options(disc, params);
  disc->add_option("--t", t, "flow time (default: smallest covering the last window)");
  disc->add_option("--ell", ell, "exact steps");
  std::string grid_kind = "dyadic";
  disc->add_option("--grid", grid_kind, "window grid")->check(CLI::IsMember({"dyadic"}))->capture_default_str();
  int first = 4;
  std::optional<int> last;
  disc->add_option("--first", first, "first window 2^first")->capture_default_str();
  disc->add_option("--last", last, "last window 2^last (default: largest inside e^t, else 20)");
  bool two_sided = false;
  disc->add_flag("--two-sided", two_sided, "scan intervals (y, x] instead of [0, x]");
  std::optional<std::uint64_t> max_scan_points;
  disc->add_option("--max-scan-points", max_scan_points, "exhaustive scan cap");
  std::uint64_t samples = 4096;
  disc->add_option("--samples", samples, "samples per window above the cap")->capture_default_str();

  auto* three = app.add_subcommand("three-interval", "three-interval rule with lengths xi^-n, xi^-m, xi^-k");
  std::string lengths;
  three->add_option("--lengths", lengths, "n,m,k with n >= m >= k")->required();

  auto* cover = app.add_subcommand("verify-cover", "compare F_{ell g}(I) with (xi rho)^ell(I)");
  std::string cover_ratio;
  std::uint32_t cover_ell = 8;
  cover->add_option("--ratio", cover_ratio, "n/m with n > m")->required();
  cover->add_option("--ell", cover_ell, "steps")->capture_default_str();
  cover->add_option("--max-tiles", max_tiles, "tile cap");

  for (auto* cmd : {classify, survey_cmd, solve, generate, spectrum, disc, three, cover}) {
    add_output(cmd);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  if (cmd->count("--format") == 0) {
    format = cmd == survey_cmd || cmd == generate || cmd == disc ? "csv" : "json";
  }

  try {
    const std::uint64_t tile_cap = max_tiles.value_or(env_cap("KAKUTANI_MAX_TILES", kDefaultMaxTiles));
    Json config;
    config["command"] = cmd->get_name();

    if (cmd == classify) {
      require_format(format, {"json"});
      const Resolved r = resolve(params, config);
      const SpreadVerdict v = classify_spreadness(r.cls);
      Json body = verdict_json(v);
      body["alpha"] = r.alpha;
      config["format"] = format;
      emit(dump(with_provenance(body, config)), out_path, out);
      if (v.spectral) return verdict_exit(v.spectral->solomon);
      return v.theorem_verdict ? kExitSpread : kExitNotSpread;
    }

    if (cmd == survey_cmd) {
      require_format(format, {"csv", "json"});
      const auto limit = static_cast<int>(env_cap("KAKUTANI_MAX_SURVEY_N", kDefaultMaxSurveyN));
      if (max_n < 1 || max_n > limit) {
        throw ParameterError("--max-n must lie in [1, " + std::to_string(limit) + "]");
      }
      config["max_n"] = max_n;
      config["format"] = format;
      const auto rows = survey(max_n);
      emit(format == "csv" ? survey_csv(rows, config) : dump(survey_json(rows, config)), out_path, out);
      return 0;
    }

    if (cmd == solve) {
      require_format(format, {"json", "csv"});
      const Commensurable c = parse_ratio(solve_ratio);
      const double alpha = c.n == c.m ? 0.5 : solve_alpha(c.n, c.m);
      config["ratio"] = solve_ratio;
      config["format"] = format;
      if (format == "csv") {
        emit("# " + std::string(kVersion) + "\n# config " + config.dump() + "\nn,m,alpha\n" + std::to_string(c.n) +
                 "," + std::to_string(c.m) + "," + format_real(alpha) + "\n",
             out_path, out);
      } else {
        const Json body{{"n", c.n},
                        {"m", c.m},
                        {"alpha", alpha},
                        {"r", r_of_alpha(alpha)},
                        {"xi", std::pow(alpha, -1.0 / c.n)},
                        {"residual", commensurability_residual(alpha, c.n, c.m)}};
        emit(dump(with_provenance(body, config)), out_path, out);
      }
      return 0;
    }

    if (cmd == generate) {
      require_format(format, {"csv", "svg", "json"});
      const Resolved r = resolve(params, config);
      config["max_tiles"] = tile_cap;
      config["format"] = format;
      if (primitive) {
        const auto* c = std::get_if<Commensurable>(&r.cls);
        if (c == nullptr || !ell || c->n == c->m) throw ParameterError("--primitive needs --ratio n/m with n > m and --ell");
        if (points_only || format == "json") throw ParameterError("--primitive writes csv or svg");
        config["ell"] = *ell;
        config["primitive"] = true;
        const LabelledPatch patch = iterate_primitive(build_rho(c->n, c->m), *ell, {tile_cap});
        emit(format == "csv" ? labelled_patch_csv(patch, config) : labelled_patch_svg(patch, config), out_path, out);
        return 0;
      }
      const Horizon h = resolve_horizon(r, t, ell, config);
      config["offset"] = offset;
      const Patch patch = generate_patch(r.alpha, h, offset, {tile_cap});
      if (points_only) {
        require_format(format, {"csv"});
        config["points"] = true;
        emit(point_set_csv(delone_points(patch), config), out_path, out);
      } else if (format == "csv") {
        emit(patch_csv(patch, config), out_path, out);
      } else if (format == "svg") {
        emit(patch_svg(patch, config), out_path, out);
      } else {
        emit(dump(patch_json(patch, config)), out_path, out);
      }
      return 0;
    }

    if (cmd == spectrum) {
      require_format(format, {"json", "dot"});
      const Commensurable c = parse_ratio(spectrum_ratio);
      if (c.n == c.m) throw ParameterError("spectrum needs n > m");
      config["ratio"] = spectrum_ratio;
      config["format"] = format;
      const PrimitiveRule rule = build_rho(c.n, c.m);
      if (format == "dot") {
        emit(rule_dot(rule, config), out_path, out);
        return 0;
      }
      const SpectralReport report = solomon_verdict(substitution_matrix(rule));
      const Json body{{"n", c.n},
                      {"m", c.m},
                      {"alpha", solve_alpha(c.n, c.m)},
                      {"f_alpha", polynomial_json(f_alpha_poly(c.n, c.m))},
                      {"rule", rule_json(rule)},
                      {"spectral", spectral_json(report)}};
      emit(dump(with_provenance(body, config)), out_path, out);
      return 0;
    }

    if (cmd == disc) {
      require_format(format, {"csv", "json", "svg"});
      const Resolved r = resolve(params, config);
      int last_exp = 20;
      std::optional<Horizon> h;
      if (t || ell) {
        h = resolve_horizon(r, t, ell, config);
        const double scale = std::exp(h->t(r.alpha));
        last_exp = static_cast<int>(std::floor(std::log2(scale) + 1e-12));
      }
      if (last) last_exp = *last;
      ScanGrid grid = ScanGrid::dyadic(first, last_exp);
      grid.mode = two_sided ? ScanMode::TwoSided : ScanMode::Anchored;
      grid.max_scan_points = max_scan_points.value_or(env_cap("KAKUTANI_MAX_SCAN_POINTS", kDefaultMaxScanPoints));
      grid.samples_per_window = samples;
      if (!h) {
        h = horizon_covering(r.alpha, r.cls, grid.windows.back());
        config["t"] = h->t(r.alpha);
        if (h->is_exact()) config["ell"] = h->ell();
      }
      config["grid"] = grid_kind;
      config["first"] = first;
      config["last"] = last_exp;
      config["mode"] = two_sided ? "two_sided" : "anchored";
      config["max_scan_points"] = grid.max_scan_points;
      config["samples_per_window"] = grid.samples_per_window;
      config["format"] = format;
      const DiscrepancySeries series = discrepancy_scan(r.alpha, r.cls, *h, grid);
      if (format == "csv") {
        emit(discrepancy_csv(series, config), out_path, out);
      } else if (format == "svg") {
        emit(discrepancy_svg(series, config), out_path, out);
      } else {
        std::optional<GrowthFit> fit;
        if (series.window_sizes.size() >= 8 && series.window_sizes.front() > 1.0 &&
            series.window_sizes.back() >= 16.0 * series.window_sizes.front()) {
          fit = growth_fit(series);
        }
        emit(dump(discrepancy_json(series, fit, config)), out_path, out);
      }
      return 0;
    }

    if (cmd == three) {
      require_format(format, {"json"});
      const auto l = parse_int_list(lengths);
      if (l.size() != 3) throw ParameterError("--lengths needs exactly three integers n,m,k");
      config["lengths"] = l;
      config["format"] = format;
      const ThreeIntervalVerdict v = classify_three_interval(l[0], l[1], l[2]);
      emit(dump(with_provenance(three_interval_json(v), config)), out_path, out);
      return verdict_exit(v.spectral.solomon);
    }

    if (cmd == cover) {
      require_format(format, {"json"});
      const Commensurable c = parse_ratio(cover_ratio);
      if (c.n == c.m) throw ParameterError("verify-cover needs n > m");
      config["ratio"] = cover_ratio;
      config["ell"] = cover_ell;
      config["max_tiles"] = tile_cap;
      config["format"] = format;
      const CoverReport report = verify_cover(c.n, c.m, cover_ell, {tile_cap});
      Json body{{"agree", report.agree},
                {"ell", report.ell},
                {"kakutani_tiles", report.kakutani_tiles},
                {"primitive_tiles", report.primitive_tiles},
                {"first_mismatch", report.first_mismatch ? Json(*report.first_mismatch) : Json(nullptr)},
                {"detail", report.detail}};
      emit(dump(with_provenance(body, config)), out_path, out);
      return report.agree ? 0 : 1;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace kakutani
