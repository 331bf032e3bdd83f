#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "invmetric/invmetric.hpp"

namespace im = invmetric;
using im::json;

namespace {

enum Exit { ok = 0, failed = 1, invalid = 2, unsupported = 3, nonconvergence = 4 };

int exit_code(im::ErrorCode c) {
  switch (c) {
    case im::ErrorCode::Unsupported: return unsupported;
    case im::ErrorCode::NonConvergence:
    case im::ErrorCode::SelfTestFailure: return nonconvergence;
    case im::ErrorCode::NoFiniteConstant: return failed;
    default: return invalid;
  }
}

struct Config {
  std::string domain;
  std::string kind = "carath";
  std::string z, w;
  std::string suite, experiment;
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::string out;
  std::string format = "json";
  std::string scale = "atanh";
  bool timing = false;
  double theta = 0.05;
  double rho = 0.5;
  double r = 2.0;
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) im::fail(im::ErrorCode::ParseError, "cannot open output file " + cfg.out);
  f << text;
}

std::string render_table(const Config& cfg, const std::string& tag, const im::Table& t, json extra = json::object()) {
  if (cfg.format == "csv") return im::to_csv(t);
  json doc{{"schema", im::report_schema}, {"experiment", tag}};
  doc.update(im::to_json(t));
  for (auto& [k, v] : extra.items()) doc[k] = v;
  return im::dump(doc);
}

im::AnyDomain domain_or(const Config& cfg, im::AnyDomain fallback) {
  return cfg.domain.empty() ? std::move(fallback) : im::parse_domain(cfg.domain);
}

int cmd_dist(const Config& cfg) {
  if (cfg.domain.empty()) im::fail(im::ErrorCode::ParseError, "dist needs --domain");
  if (cfg.z.empty() || cfg.w.empty()) im::fail(im::ErrorCode::ParseError, "dist needs --z and --w");
  const im::AnyDomain dom = im::parse_domain(cfg.domain);
  const im::Scale scale = cfg.scale == "mobius" ? im::Scale::mobius : im::Scale::atanh;
  json doc{{"schema", im::report_schema}, {"domain", im::to_json(dom)}, {"kind", cfg.kind}};
  if (const auto* pd = std::get_if<im::PlanarDomain>(&dom)) {
    const im::cplx z = im::parse_complex(cfg.z), w = im::parse_complex(cfg.w);
    im::CertifiedValue v;
    if (cfg.kind == "carath") v = im::caratheodory(*pd, z, w);
    else if (cfg.kind == "lempert") v = im::lempert(*pd, z, w);
    else v = im::bergman_distance(*pd, z, w);
    doc["z"] = im::format_complex(z);
    doc["w"] = im::format_complex(w);
    doc["value"] = im::to_json(v, scale);
    doc["d_z"] = im::boundary_distance(*pd, z);
    doc["d_w"] = im::boundary_distance(*pd, w);
  } else {
    const auto& cn = std::get<im::CnDomain>(dom);
    const im::CVec z = im::parse_point(cfg.z), w = im::parse_point(cfg.w);
    im::CertifiedValue v;
    if (cfg.kind == "carath") v = im::caratheodory(cn, z, w);
    else if (cfg.kind == "lempert") v = im::lempert(cn, z, w);
    else im::fail(im::ErrorCode::Unsupported, "Bergman distance is available for planar domains only");
    doc["z"] = im::point_to_json(z);
    doc["w"] = im::point_to_json(w);
    doc["value"] = im::to_json(v, scale);
    doc["d_z"] = im::boundary_distance(cn, z);
    doc["d_w"] = im::boundary_distance(cn, w);
  }
  emit(cfg, im::dump(doc));
  return ok;
}

im::SuiteOptions suite_options(const Config& cfg) {
  im::SuiteOptions opt;
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  if (!cfg.domain.empty()) opt.domains.push_back(im::parse_domain(cfg.domain));
  return opt;
}

int cmd_verify(const Config& cfg) {
  if (cfg.suite.empty()) im::fail(im::ErrorCode::ParseError, "verify needs --suite");
  const im::BoundReport rep = im::run_suite(cfg.suite, suite_options(cfg));
  emit(cfg, cfg.format == "csv" ? im::to_csv(rep.table) : im::dump(im::to_json(rep, cfg.timing)));
  return rep.passed ? ok : failed;
}

/// Radial approach from the domain's reference point towards the boundary point nearest to z0 + i d(z0) / 2.
im::SlopeResult slope_fit(const Config& cfg) {
  const auto dom = domain_or(cfg, im::PlanarDomain(im::UnitDisc{}));
  const auto* pd = std::get_if<im::PlanarDomain>(&dom);
  if (!pd || !im::is_simply_connected(*pd))
    im::fail(im::ErrorCode::Unsupported, "boundary-slope runs on simply connected planar domains");
  const auto* jordan = std::get_if<im::JordanDomain>(pd);
  const im::cplx z0 = jordan ? jordan->curve->interior_hint() : im::cplx(0.0);
  const auto contact = im::nearest_boundary_contact(*pd, z0 + im::I * 0.5 * im::boundary_distance(*pd, z0));
  const im::DistanceKind kind = cfg.kind == "lempert"   ? im::DistanceKind::lempert
                                : cfg.kind == "bergman" ? im::DistanceKind::bergman_scaled
                                                        : im::DistanceKind::caratheodory;
  const double lo = std::max(1e-6, im::detail::distance_floor(*pd));
  return im::boundary_slope_regression(*pd, z0, contact.point, contact.inward, kind, im::log_spaced(1e-2, lo, 16));
}

int cmd_sweep(const Config& cfg) {
  const std::string& e = cfg.experiment;
  if (e == "sector-ratio") {
    emit(cfg, render_table(cfg, e, im::experiment_sector_ratio(cfg.theta, im::log_spaced(1e-1, 1e-6, 11))));
  } else if (e == "slit-coefficient") {
    emit(cfg, render_table(cfg, e, im::experiment_slit_coefficient(im::log_spaced(1e-1, 1e-8, 8))));
  } else if (e == "ratio-c-over-l") {
    emit(cfg, render_table(cfg, e, im::experiment_ratio_c_over_l(cfg.rho, im::log_spaced(1e-1, 1e-7, 13))));
  } else if (e == "boundary-slope") {
    const auto res = slope_fit(cfg);
    emit(cfg, render_table(cfg, e, res.table,
                           json{{"slope", res.fit.slope}, {"intercept", res.fit.intercept},
                                {"residual", res.fit.residual}}));
  } else if (e == "prop5-product") {
    const auto pf = im::verify_prop5_product(cfg.r, cfg.samples, cfg.seed);
    emit(cfg, render_table(cfg, e, pf.table,
                           json{{"c", pf.fit.c}, {"series_mode", pf.series_mode}, {"seed", cfg.seed}}));
  } else {
    im::fail(im::ErrorCode::ParseError, "unknown experiment '" + e + "'");
  }
  return ok;
}

/// Fitted constants only: the suite's constants, or the slope / product fit of an experiment.
int cmd_fit(const Config& cfg) {
  json doc{{"schema", im::report_schema}, {"seed", cfg.seed}};
  bool passed = true;
  if (!cfg.suite.empty()) {
    const im::BoundReport rep = im::run_suite(cfg.suite, suite_options(cfg));
    json constants = json::object();
    for (const auto& [k, v] : rep.constants) constants[k] = im::detail::real(v);
    doc["suite"] = cfg.suite;
    doc["constants"] = constants;
    passed = rep.passed;
  } else if (cfg.experiment == "prop5-product") {
    const auto pf = im::verify_prop5_product(cfg.r, cfg.samples, cfg.seed);
    doc["experiment"] = cfg.experiment;
    doc["constants"] = json{{"c", pf.fit.c}};
    passed = std::isfinite(pf.fit.c);
  } else if (cfg.experiment == "boundary-slope") {
    const auto res = slope_fit(cfg);
    doc["experiment"] = cfg.experiment;
    doc["constants"] = json{{"slope", res.fit.slope}, {"intercept", res.fit.intercept}, {"residual", res.fit.residual}};
  } else {
    im::fail(im::ErrorCode::ParseError, "fit needs --suite or --experiment boundary-slope|prop5-product");
  }
  if (cfg.format == "csv") {
    std::string text = "name,value\n";
    for (auto& [k, v] : doc["constants"].items()) text += k + "," + v.dump() + "\n";
    emit(cfg, text);
  } else {
    emit(cfg, im::dump(doc));
  }
  return passed ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant distances on planar and convex domains"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--domain", cfg.domain, "domain description as JSON");
    sub->add_option("--samples", cfg.samples, "sample count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol", cfg.tol, "tolerance override (positive)");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* dist = app.add_subcommand("dist", "distance between two points");
  dist->add_option("--domain", cfg.domain, "domain description as JSON")->required();
  dist->add_option("--kind", cfg.kind, "carath, lempert or bergman")
      ->check(CLI::IsMember({"carath", "lempert", "bergman"}));
  dist->add_option("--z", cfg.z, "first point, a+bi or a JSON array")->required();
  dist->add_option("--w", cfg.w, "second point, a+bi or a JSON array")->required();
  dist->add_option("--scale", cfg.scale, "atanh or mobius")->check(CLI::IsMember({"atanh", "mobius"}));
  dist->add_option("--out", cfg.out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", cfg.suite, "suite tag")->required();
  add_common(verify);
  verify->add_flag("--timing", cfg.timing, "include wall-clock runtime in the report");

  auto* sweep = app.add_subcommand("sweep", "tabulate an experiment");
  sweep->add_option("--experiment", cfg.experiment, "experiment tag")->required();
  sweep->add_option("--kind", cfg.kind, "distance for boundary-slope: carath, lempert or bergman")
      ->check(CLI::IsMember({"carath", "lempert", "bergman"}));
  sweep->add_option("--theta", cfg.theta, "sector half-angle for sector-ratio");
  sweep->add_option("--rho", cfg.rho, "lens radius for ratio-c-over-l");
  sweep->add_option("--r", cfg.r, "annulus modulus for prop5-product");
  add_common(sweep);

  auto* fit = app.add_subcommand("fit", "fit the constants of a suite or experiment");
  fit->add_option("--suite", cfg.suite, "suite tag");
  fit->add_option("--experiment", cfg.experiment, "boundary-slope or prop5-product");
  fit->add_option("--kind", cfg.kind, "distance for boundary-slope")
      ->check(CLI::IsMember({"carath", "lempert", "bergman"}));
  fit->add_option("--r", cfg.r, "annulus modulus for prop5-product");
  add_common(fit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : invalid;
  }

  try {
    if (cfg.tol && !(*cfg.tol > 0.0)) im::fail(im::ErrorCode::ParseError, "--tol must be positive");
    if (*dist) return cmd_dist(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*sweep) return cmd_sweep(cfg);
    return cmd_fit(cfg);
  } catch (const im::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return invalid;
  }
}
