// Command-line front end: JSON matrix I/O and one subcommand per public
// library operation.  Results go to stdout as JSON (CSV for --sweep); with
// --verbose a short human summary is written to stderr.  Failures surface as
// {"error": {"kind", "detail"}} with exit code 1 (domain), 2 (usage), or
// 3 (numerical).
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "accretive/approx.hpp"
#include "accretive/errors.hpp"
#include "accretive/geometry.hpp"
#include "accretive/io.hpp"
#include "accretive/manifold.hpp"
#include "accretive/mean.hpp"
#include "accretive/sampler.hpp"
#include "accretive/tolerances.hpp"

using accretive::CMatrix;
using accretive::Complex;
using accretive::Error;
using accretive::ErrorCategory;
using accretive::ErrorKind;
using accretive::MetricConfig;
using accretive::RVector;
using nlohmann::json;

namespace {

CMatrix load_matrix(const std::string& arg) {
  const size_t first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') {
    json j;
    try {
      j = json::parse(arg);
    } catch (const json::parse_error& e) {
      accretive::raise(ErrorKind::ParseError,
                       std::string("inline matrix: ") + e.what());
    }
    return accretive::matrix_from_json(j);
  }
  return accretive::parse_matrix(arg);
}

json vector_json(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

int category_exit_code(ErrorKind k) {
  switch (accretive::kind_category(k)) {
    case ErrorCategory::Domain: return 1;
    case ErrorCategory::Usage: return 2;
    case ErrorCategory::Numerical: return 3;
  }
  return 3;
}

double resolve_tolerance(const CLI::Option* flag, double flag_value) {
  if (flag->count() > 0) {
    if (!std::isfinite(flag_value) || flag_value <= 0)
      accretive::raise(ErrorKind::InvalidSpec,
                       "--tol must be a positive finite number");
    return flag_value;
  }
  const char* env = std::getenv("ACCRETIVE_GEO_TOL");
  if (!env || !*env) return -1.0;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  while (end && (*end == ' ' || *end == '\t')) ++end;
  if (!end || *end != '\0' || !std::isfinite(v) || v <= 0)
    accretive::raise(ErrorKind::InvalidSpec,
                     std::string("ACCRETIVE_GEO_TOL must be a positive "
                                 "number, got '") + env + "'");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Geometry of strictly accretive matrices: symmetric polar "
      "decomposition, phases, geodesics and distances, bounded-log-rank "
      "approximation, and the geometric mean."};
  app.require_subcommand(1);

  double tol_value = 0.0;
  CLI::Option* tol_flag = app.add_option(
      "--tol", tol_value,
      "Override the base numerical tolerance (also via ACCRETIVE_GEO_TOL; "
      "this flag wins)");
  bool verbose = false;
  app.add_flag("--verbose", verbose, "Write a human summary to stderr");

  std::function<std::optional<json>()> run;

  // ---- check ---------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "check", "Require strict accretivity and report margins and phases");
    sub->fallthrough();
    auto path = std::make_shared<std::string>();
    sub->add_option("matrix", *path, "matrix file or inline JSON")->required();
    sub->callback([&, path] {
      run = [&, path]() -> std::optional<json> {
        CMatrix A = load_matrix(*path);
        auto [ok, margin] = accretive::is_accretive(A);
        if (!ok)
          accretive::raise(ErrorKind::NotAccretive,
                           "matrix is not strictly accretive (margin " +
                               fmt17(margin) + ")");
        accretive::SectorialReport rep = accretive::is_sectorial(A);
        RVector phi = accretive::phases(A);
        json out;
        out["n"] = A.rows();
        out["accretive"] = true;
        out["margin"] = margin;
        out["theta_star"] = rep.theta_star;
        out["sector_margin"] = rep.margin;
        out["phases"] = vector_json(phi);
        if (verbose)
          std::cerr << "strictly accretive, margin " << margin
                    << "; phases span [" << phi(phi.size() - 1) << ", "
                    << phi(0) << "]\n";
        return out;
      };
    });
  }

  // ---- phases --------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "phases", "Phases of a sectorial matrix, nonincreasing");
    sub->fallthrough();
    auto path = std::make_shared<std::string>();
    sub->add_option("matrix", *path, "matrix file or inline JSON")->required();
    sub->callback([&, path] {
      run = [&, path]() -> std::optional<json> {
        CMatrix A = load_matrix(*path);
        accretive::SectorialReport rep = accretive::is_sectorial(A);
        RVector phi = accretive::phases(A);
        json out;
        out["n"] = A.rows();
        out["theta_star"] = rep.theta_star;
        out["phases"] = vector_json(phi);
        if (verbose)
          std::cerr << phi.size() << " phases, anchored at rotation "
                    << rep.theta_star << "\n";
        return out;
      };
    });
  }

  // ---- sympolar ------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "sympolar", "Symmetric polar decomposition A = P U P");
    sub->fallthrough();
    auto path = std::make_shared<std::string>();
    sub->add_option("matrix", *path, "matrix file or inline JSON")->required();
    sub->callback([&, path] {
      run = [&, path]() -> std::optional<json> {
        CMatrix A = load_matrix(*path);
        accretive::SymPolar sp = accretive::sym_polar(A);
        const double resid =
            (sp.P * sp.U * sp.P - A).norm() / std::max(A.norm(), 1e-300);
        json out;
        out["P"] = accretive::matrix_to_json(sp.P);
        out["U"] = accretive::matrix_to_json(sp.U);
        out["residual"] = resid;
        if (verbose)
          std::cerr << "reconstruction residual " << resid << "\n";
        return out;
      };
    });
  }

  // ---- sectorial -----------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "sectorial",
        "Sectoriality probe; emits the congruence factorization when it exists");
    sub->fallthrough();
    auto path = std::make_shared<std::string>();
    sub->add_option("matrix", *path, "matrix file or inline JSON")->required();
    sub->callback([&, path] {
      run = [&, path]() -> std::optional<json> {
        CMatrix A = load_matrix(*path);
        accretive::SectorialReport rep = accretive::is_sectorial(A);
        json out;
        out["n"] = A.rows();
        out["sectorial"] = rep.sectorial;
        out["theta_star"] = rep.theta_star;
        out["margin"] = rep.margin;
        if (rep.sectorial) {
          accretive::SectorialDecomp dec = accretive::sectorial_decomposition(A);
          out["T"] = accretive::matrix_to_json(dec.T);
          out["phases"] = vector_json(dec.phases);
        }
        if (verbose)
          std::cerr << (rep.sectorial ? "sectorial" : "not sectorial")
                    << ", margin " << rep.margin << "\n";
        return out;
      };
    });
  }

  // ---- geodesic ------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "geodesic", "Point on the connecting geodesic between two matrices");
    sub->fallthrough();
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    auto t = std::make_shared<double>(0.5);
    sub->add_option("A", *pa, "first endpoint")->required();
    sub->add_option("B", *pb, "second endpoint")->required();
    sub->add_option("--t", *t, "curve parameter in [0, 1] (default 0.5)");
    sub->callback([&, pa, pb, t] {
      run = [&, pa, pb, t]() -> std::optional<json> {
        if (!std::isfinite(*t))
          accretive::raise(ErrorKind::InvalidSpec, "--t must be finite");
        CMatrix A = load_matrix(*pa);
        CMatrix B = load_matrix(*pb);
        CMatrix G = accretive::geodesic_A(A, B, *t);
        json out;
        out["t"] = *t;
        out["matrix"] = accretive::matrix_to_json(G);
        if (verbose) std::cerr << "geodesic point at t = " << *t << "\n";
        return out;
      };
    });
  }

  // ---- distance ------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "distance", "Distance between two strictly accretive matrices");
    sub->fallthrough();
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("default");
    auto sweep = std::make_shared<bool>(false);
    auto samples = std::make_shared<int>(100);
    sub->add_option("A", *pa, "first matrix")->required();
    sub->add_option("B", *pb, "second matrix")->required();
    sub->add_option("--metric", *metric,
                    "metric file, inline JSON, or \"default\"");
    sub->add_flag("--sweep", *sweep,
                  "emit CSV rows \"t,value\" along the connecting geodesic");
    sub->add_option("--samples", *samples,
                    "number of sweep intervals (default 100)");
    sub->callback([&, pa, pb, metric, sweep, samples] {
      run = [&, pa, pb, metric, sweep, samples]() -> std::optional<json> {
        MetricConfig cfg = accretive::parse_metric(*metric);
        CMatrix A = load_matrix(*pa);
        CMatrix B = load_matrix(*pb);
        if (*sweep) {
          if (*samples < 1)
            accretive::raise(ErrorKind::InvalidSpec,
                             "--samples must be >= 1 for --sweep");
          accretive::GeodesicA geo(A, B);
          for (int i = 0; i <= *samples; ++i) {
            const double t = static_cast<double>(i) / *samples;
            const double v = accretive::distance_A(A, geo.eval(t), cfg);
            std::cout << fmt17(t) << "," << fmt17(v) << "\n";
          }
          if (verbose)
            std::cerr << (*samples + 1) << " sweep rows written\n";
          return std::nullopt;
        }
        const double d = accretive::distance_A(A, B, cfg);
        json out;
        out["distance"] = d;
        out["metric"] = accretive::metric_to_json(cfg);
        if (verbose) std::cerr << "distance " << d << "\n";
        return out;
      };
    });
  }

  // ---- arclength -----------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "arclength",
        "Arc length of the connecting geodesic (consistency probe against "
        "the closed-form distance)");
    sub->fallthrough();
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("default");
    auto samples = std::make_shared<int>(2000);
    sub->add_option("A", *pa, "first matrix")->required();
    sub->add_option("B", *pb, "second matrix")->required();
    sub->add_option("--metric", *metric,
                    "metric file, inline JSON, or \"default\"");
    sub->add_option("--samples", *samples,
                    "integration panels (default 2000)");
    sub->callback([&, pa, pb, metric, samples] {
      run = [&, pa, pb, metric, samples]() -> std::optional<json> {
        if (*samples < 1)
          accretive::raise(ErrorKind::InvalidSpec, "--samples must be >= 1");
        MetricConfig cfg = accretive::parse_metric(*metric);
        CMatrix A = load_matrix(*pa);
        CMatrix B = load_matrix(*pb);
        accretive::GeodesicA geo(A, B);
        accretive::ComponentCurve curve;
        curve.P = [&geo](double t) { return geo.eval_P(t); };
        curve.U = [&geo](double t) { return geo.eval_U(t); };
        curve.dP = [&geo](double t) { return geo.deriv_P(t); };
        curve.dU = [&geo](double t) { return geo.deriv_U(t); };
        accretive::ArcLengthResult len =
            accretive::arc_length(curve, cfg, *samples);
        const double d = geo.distance(cfg);
        json out;
        out["arc_length"] = len.value;
        out["error_estimate"] = len.error_estimate;
        out["distance"] = d;
        out["gap"] = std::abs(len.value - d);
        if (verbose)
          std::cerr << "arc length " << len.value << " vs distance " << d
                    << "\n";
        return out;
      };
    });
  }

  // ---- logrank -------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "logrank", "Activity counts of the two polar legs");
    sub->fallthrough();
    auto path = std::make_shared<std::string>();
    auto tol_one = std::make_shared<double>(-1.0);
    auto tol_zero = std::make_shared<double>(-1.0);
    sub->add_option("matrix", *path, "matrix file or inline JSON")->required();
    sub->add_option("--tol-one", *tol_one,
                    "threshold on |log eigenvalue| of the positive leg");
    sub->add_option("--tol-zero", *tol_zero,
                    "threshold on |phase| of the unitary leg");
    sub->callback([&, path, tol_one, tol_zero] {
      run = [&, path, tol_one, tol_zero]() -> std::optional<json> {
        CMatrix A = load_matrix(*path);
        accretive::LogRankResult lr =
            accretive::log_rank(A, *tol_one, *tol_zero);
        json out;
        out["r_P"] = lr.r_P;
        out["r_U"] = lr.r_U;
        out["r"] = lr.r;
        if (verbose)
          std::cerr << "r_P = " << lr.r_P << ", r_U = " << lr.r_U << "\n";
        return out;
      };
    });
  }

  // ---- approx-logrank -------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "approx-logrank",
        "Nearest matrix whose polar legs have at most r active entries");
    sub->fallthrough();
    auto path = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("default");
    auto r = std::make_shared<int>(-1);
    sub->add_option("matrix", *path, "matrix file or inline JSON")->required();
    sub->add_option("--r", *r, "activity bound (required, >= 0)")->required();
    sub->add_option("--metric", *metric,
                    "metric file, inline JSON, or \"default\"");
    sub->callback([&, path, metric, r] {
      run = [&, path, metric, r]() -> std::optional<json> {
        if (*r < 0)
          accretive::raise(ErrorKind::InvalidSpec, "--r must be >= 0");
        MetricConfig cfg = accretive::parse_metric(*metric);
        CMatrix A = load_matrix(*path);
        accretive::SymPolar sp = accretive::sym_polar(A);
        CMatrix P2 = sp.P * sp.P;
        accretive::Truncation tp = accretive::truncate_pd_logrank(
            (P2 + P2.adjoint()) / 2.0, *r, cfg.phi1);
        accretive::Truncation tu =
            accretive::truncate_unitary_logrank(sp.U, *r, cfg.phi2);
        CMatrix Ar = accretive::closest_logrank(A, *r, cfg);
        json out;
        out["r"] = *r;
        out["matrix"] = accretive::matrix_to_json(Ar);
        out["objective_P"] = tp.objective;
        out["objective_U"] = tu.objective;
        out["distance"] = accretive::distance_A(Ar, A, cfg);
        if (verbose)
          std::cerr << "approximation distance " << out["distance"] << "\n";
        return out;
      };
    });
  }

  // ---- project -------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "project",
        "Closest positive definite (pd) or accretive unitary (au) matrix");
    sub->fallthrough();
    auto which = std::make_shared<std::string>();
    auto path = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("default");
    sub->add_option("which", *which, "target manifold: pd or au")
        ->required()
        ->check(CLI::IsMember({"pd", "au"}));
    sub->add_option("matrix", *path, "matrix file or inline JSON")->required();
    sub->add_option("--metric", *metric,
                    "metric file, inline JSON, or \"default\"");
    sub->callback([&, which, path, metric] {
      run = [&, which, path, metric]() -> std::optional<json> {
        MetricConfig cfg = accretive::parse_metric(*metric);
        CMatrix A = load_matrix(*path);
        CMatrix M = (*which == "pd") ? accretive::closest_pd(A)
                                     : accretive::closest_au(A);
        json out;
        out["which"] = *which;
        out["matrix"] = accretive::matrix_to_json(M);
        out["distance"] = accretive::distance_A(A, M, cfg);
        if (verbose)
          std::cerr << "projection distance " << out["distance"] << "\n";
        return out;
      };
    });
  }

  // ---- geomean -------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "geomean", "Geometric mean of two strictly accretive matrices");
    sub->fallthrough();
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    sub->add_option("A", *pa, "first matrix")->required();
    sub->add_option("B", *pb, "second matrix")->required();
    sub->callback([&, pa, pb] {
      run = [&, pa, pb]() -> std::optional<json> {
        CMatrix A = load_matrix(*pa);
        CMatrix B = load_matrix(*pb);
        CMatrix G = accretive::geometric_mean(A, B);
        json out;
        out["mean"] = accretive::matrix_to_json(G);
        out["riccati_residual"] = accretive::riccati_residual(G, A, B);
        if (verbose)
          std::cerr << "quadratic-equation residual " << out["riccati_residual"]
                    << "\n";
        return out;
      };
    });
  }

  // ---- midpoint ------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "midpoint",
        "Compare the geodesic midpoint with the geometric mean");
    sub->fallthrough();
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("default");
    sub->add_option("A", *pa, "first matrix")->required();
    sub->add_option("B", *pb, "second matrix")->required();
    sub->add_option("--metric", *metric,
                    "metric file, inline JSON, or \"default\"");
    sub->callback([&, pa, pb, metric] {
      run = [&, pa, pb, metric]() -> std::optional<json> {
        MetricConfig cfg = accretive::parse_metric(*metric);
        CMatrix A = load_matrix(*pa);
        CMatrix B = load_matrix(*pb);
        accretive::MidpointMeanReport rep =
            accretive::midpoint_mean_report(A, B, cfg);
        json out;
        out["midpoint"] = accretive::matrix_to_json(accretive::geodesic_A(A, B, 0.5));
        out["mean"] = accretive::matrix_to_json(accretive::geometric_mean(A, B));
        out["mean_midpoint_gap"] = rep.mean_midpoint_gap;
        out["relative_gap"] = rep.relative_gap;
        out["factored_residual"] = rep.factored_residual;
        out["condition_unitary_legs_identity"] =
            rep.condition_unitary_legs_identity;
        out["condition_equal_pd_legs"] = rep.condition_equal_pd_legs;
        out["condition_commuting_normal"] = rep.condition_commuting_normal;
        out["equality"] = rep.equality;
        out["equality_without_known_condition"] =
            rep.equality_without_known_condition;
        if (verbose)
          std::cerr << "relative gap " << rep.relative_gap
                    << (rep.equality ? " (equal)" : " (distinct)") << "\n";
        return out;
      };
    });
  }

  // ---- properties ----------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "properties", "Distance invariance residuals for a pair");
    sub->fallthrough();
    auto pa = std::make_shared<std::string>();
    auto pb = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("default");
    auto seed = std::make_shared<std::uint64_t>(0);
    sub->add_option("A", *pa, "first matrix")->required();
    sub->add_option("B", *pb, "second matrix")->required();
    sub->add_option("--metric", *metric,
                    "metric file, inline JSON, or \"default\"");
    sub->add_option("--seed", *seed, "seed for the random congruence");
    sub->callback([&, pa, pb, metric, seed] {
      run = [&, pa, pb, metric, seed]() -> std::optional<json> {
        MetricConfig cfg = accretive::parse_metric(*metric);
        CMatrix A = load_matrix(*pa);
        CMatrix B = load_matrix(*pb);
        accretive::DistancePropertyReport rep =
            accretive::check_distance_properties(A, B, cfg, *seed);
        json out;
        out["inverse_residual"] = rep.inverse_residual;
        out["adjoint_residual"] = rep.adjoint_residual;
        out["doubling_residual"] = rep.doubling_residual;
        out["midpoint_residual"] = rep.midpoint_residual;
        out["unitary_congruence_residual"] = rep.unitary_congruence_residual;
        out["max_residual"] = rep.max_residual();
        if (verbose)
          std::cerr << "worst residual " << rep.max_residual() << "\n";
        return out;
      };
    });
  }

  // ---- sample --------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "sample", "Draw a seeded strictly accretive matrix with provenance");
    sub->fallthrough();
    auto n = std::make_shared<int>(2);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto log_spread = std::make_shared<double>(1.0);
    auto phase_spread = std::make_shared<double>(1.0);
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--n", *n, "dimension (default 2)");
    sub->add_option("--seed", *seed, "random seed (default 0)");
    sub->add_option("--log-spread", *log_spread,
                    "spread of the positive-leg log spectrum (default 1.0)");
    sub->add_option("--phase-spread", *phase_spread,
                    "spread of the unitary-leg phases, < pi/2 (default 1.0)");
    sub->add_option("--out", *out_path,
                    "also write the sampled matrix alone to this file");
    sub->callback([&, n, seed, log_spread, phase_spread, out_path] {
      run = [&, n, seed, log_spread, phase_spread,
             out_path]() -> std::optional<json> {
        accretive::SamplerSpec spec;
        spec.n = *n;
        spec.seed = *seed;
        spec.log_spread = *log_spread;
        spec.phase_spread = *phase_spread;
        accretive::SampledAccretive s = accretive::sample_accretive(spec);
        if (!out_path->empty())
          accretive::serialize_matrix(
              s.A, *out_path, "sample seed " + std::to_string(spec.seed));
        json out;
        out["spec"] = {{"n", spec.n},
                       {"seed", spec.seed},
                       {"log_spread", spec.log_spread},
                       {"phase_spread", spec.phase_spread}};
        out["A"] = accretive::matrix_to_json(s.A);
        out["P"] = accretive::matrix_to_json(s.P);
        out["U"] = accretive::matrix_to_json(s.U);
        if (verbose)
          std::cerr << "sampled " << spec.n << "x" << spec.n << " matrix, seed "
                    << spec.seed << "\n";
        return out;
      };
    });
  }

  // ---- validate-metric -------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "validate-metric",
        "Run the gauge and combiner validators on a metric configuration");
    sub->fallthrough();
    auto metric = std::make_shared<std::string>("default");
    auto trials = std::make_shared<int>(10000);
    auto seed = std::make_shared<std::uint64_t>(0);
    sub->add_option("--metric", *metric,
                    "metric file, inline JSON, or \"default\"");
    sub->add_option("--trials", *trials,
                    "randomized trials per gauge (default 10000)");
    sub->add_option("--seed", *seed, "seed for the gauge trials");
    sub->callback([&, metric, trials, seed] {
      run = [&, metric, trials, seed]() -> std::optional<json> {
        if (*trials < 1)
          accretive::raise(ErrorKind::InvalidSpec, "--trials must be >= 1");
        MetricConfig cfg = accretive::parse_metric(*metric);
        accretive::GaugeReport g1 =
            accretive::validate_gauge(cfg.phi1, *trials, *seed);
        accretive::GaugeReport g2 =
            accretive::validate_gauge(cfg.phi2, *trials, *seed + 1);
        accretive::ProductReport pr = accretive::validate_product(cfg.psi, 40);
        json out;
        out["phi1"] = {{"ok", g1.ok()}, {"violations", g1.violations.size()}};
        out["phi2"] = {{"ok", g2.ok()}, {"violations", g2.violations.size()}};
        out["psi"] = {{"ok", pr.ok()}, {"violations", pr.violations.size()}};
        out["ok"] = g1.ok() && g2.ok() && pr.ok();
        if (verbose)
          std::cerr << (out["ok"].get<bool>() ? "metric accepted"
                                              : "metric rejected")
                    << "\n";
        return out;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err;
    err["error"] = {{"kind", "InvalidSpec"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }

  try {
    const double tol = resolve_tolerance(tol_flag, tol_value);
    if (tol > 0) accretive::Tolerances::global().set_base(tol);

    std::optional<json> out = run();
    if (out) std::cout << out->dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    json err;
    err["error"] = {{"kind", accretive::kind_name(e.kind())},
                    {"detail", e.detail()}};
    std::cout << err.dump(2) << "\n";
    return category_exit_code(e.kind());
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"kind", "InternalConsistency"}, {"detail", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 3;
  }
}
