// orblab — configuration-driven experiment runner for the radial
// prescribed-curvature laboratory. Every experiment reads one JSON config,
// writes a JSON report plus CSV data files, and exits 0 on success, 2 on
// config errors, 3 on numeric failures (with machine-readable error JSON).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orblab/orblab.hpp"
#include "orblab/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace orblab;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunContext {
  json raw;
  std::string experiment;
  json params;
  fs::path outdir;
  bool want_json = true, want_csv = true;
  std::uint64_t seed = 0;
  int threads = 1;
  bool verbose = false;
  SolverOptions sopts;
  double p = 3.0;
  std::vector<double> p_grid;
};

RadialGeometry parse_geometry(const json& g) {
  if (!g.is_object() || !g.contains("kind"))
    throw ConfigError("geometry: need an object with 'kind'");
  const std::string kind = g.at("kind").get<std::string>();
  if (kind == "lebrun_ale") return RadialGeometry::lebrun_ale(g.at("n").get<int>());
  if (kind == "lebrun_compact")
    return RadialGeometry::lebrun_compact(g.at("n").get<int>());
  if (kind == "football") {
    const int gamma = g.value("gamma", 1);
    return gamma <= 1 ? RadialGeometry::round_sphere()
                      : RadialGeometry::football(gamma);
  }
  throw ConfigError("geometry.kind must be lebrun_ale | lebrun_compact | football");
}

KFamily parse_kfamily(const json& k) {
  if (!k.is_object() || !k.contains("kind"))
    throw ConfigError("k_family: need an object with 'kind'");
  const std::string kind = k.at("kind").get<std::string>();
  const json params = k.value("params", json::object());
  try {
    if (kind == "constant") return KFamily::constant(params.value("value", 1.0));
    if (kind == "bump")
      return KFamily::bump(params.value("base", 1.0), params.value("amplitude", 0.0));
    if (kind == "rational_decay")
      return KFamily::rational_decay(params.value("limit", 1.0),
                                     params.value("amplitude", 0.0));
    if (kind == "k_minus_transform") {
      if (!k.contains("inner")) throw ConfigError("k_minus_transform: need 'inner'");
      return make_K_minus(k.at("n").get<int>(), parse_kfamily(k.at("inner")));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("k_family: ") + e.what());
  }
  throw ConfigError("k_family.kind must be constant | bump | rational_decay | "
                    "k_minus_transform");
}

void parse_solver(const json& s, RunContext& ctx) {
  if (!s.is_object()) return;
  ctx.p = s.value("p", 3.0);
  ctx.sopts.T = s.value("far_end_T", ctx.sopts.T);
  if (s.contains("slope_scan")) {
    const json& sc = s.at("slope_scan");
    ctx.sopts.slope_min = sc.value("min", ctx.sopts.slope_min);
    ctx.sopts.slope_max = sc.value("max", ctx.sopts.slope_max);
    ctx.sopts.scan_points = sc.value("points", ctx.sopts.scan_points);
  }
  if (s.contains("tolerances")) {
    const json& t = s.at("tolerances");
    ctx.sopts.rtol = t.value("rtol", ctx.sopts.rtol);
    ctx.sopts.atol = t.value("atol", ctx.sopts.atol);
    ctx.sopts.residual_tol_base = t.value("residual", ctx.sopts.residual_tol_base);
  }
  if (s.contains("p_grid")) {
    const json& pg = s.at("p_grid");
    if (pg.is_array()) {
      ctx.p_grid = pg.get<std::vector<double>>();
    } else {
      const double from = pg.at("from").get<double>();
      const double to = pg.at("to").get<double>();
      const int pts = pg.value("points", 11);
      if (pts < 2) throw ConfigError("solver.p_grid.points must be >= 2");
      for (int i = 0; i < pts; ++i)
        ctx.p_grid.push_back(from + (to - from) * i / (pts - 1.0));
    }
  }
}

std::vector<double> param_list(const json& params, const char* key,
                               std::vector<double> fallback) {
  if (!params.contains(key)) return fallback;
  return params.at(key).get<std::vector<double>>();
}

std::string fd(double v) { return format_double(v); }

json shots_summary(const ScanEvidence& ev) {
  int cross = 0, diverge = 0, balanced = 0;
  for (const auto& s : ev.shots) {
    switch (s.fate) {
      case ShotFate::HitsZero: ++cross; break;
      case ShotFate::Diverges: ++diverge; break;
      case ShotFate::Balanced: ++balanced; break;
    }
  }
  return {{"shots", ev.shots.size()},
          {"hits_zero", cross},
          {"diverges", diverge},
          {"balanced", balanced},
          {"sign_change_brackets", ev.sign_change_brackets},
          {"refined_rejected", ev.refined_rejected}};
}

CsvTable scan_csv(const ScanEvidence& ev) {
  CsvTable t({"slope", "fate", "terminal_v", "terminal_vp", "first_zero"});
  for (const auto& s : ev.shots)
    t.add_row({fd(s.slope), to_string(s.fate), fd(s.terminal_v), fd(s.terminal_vp),
               s.crossed ? fd(s.first_zero) : std::string()});
  return t;
}

CsvTable solution_csv(const RadialSolution& sol) {
  CsvTable t({"coordinate", "t", "s", "u", "v", "residual"});
  const bool football = sol.kind == GeometryKind::Football;
  for (size_t i = 0; i < sol.x.size(); ++i) {
    // nearest residual sample
    std::string res;
    if (!sol.residual_grid.empty()) {
      auto it = std::lower_bound(sol.residual_grid.begin(), sol.residual_grid.end(),
                                 sol.x[i]);
      if (it == sol.residual_grid.end()) --it;
      res = fd(sol.residual_values[it - sol.residual_grid.begin()]);
    }
    t.add_row({football ? "theta" : "t", fd(sol.x[i]),
               football ? std::string() : fd(sol.s[i]), fd(sol.u[i]), fd(sol.v[i]),
               res});
  }
  return t;
}

json solution_summary(const RadialSolution& sol) {
  return {{"shooting_parameter", sol.shooting_parameter},
          {"p", sol.p},
          {"max_u", sol.max_u},
          {"min_u", sol.min_u},
          {"argmax", sol.argmax},
          {"u_orbifold", sol.u_orbifold},
          {"u_center", sol.u_center},
          {"residual_sup", sol.residual_sup},
          {"residual_tol", sol.residual_tol}};
}

// ---------------------------------------------------------------- experiments

json run_classify(const RunContext& ctx, const RadialGeometry& geom,
                  const KFamily& K, std::vector<CsvTable>& csvs,
                  std::vector<std::string>& names) {
  if (geom.kind() == GeometryKind::Football)
    throw ConfigError("classify: wall classification lives on the LeBrun family");
  const WallClass w = classify_wall(K, geom.order());
  CsvTable t({"label", "margin"});
  t.add_row({to_string(w.label), fd(w.margin)});
  csvs.push_back(t);
  names.push_back("classify.csv");
  return {{"label", to_string(w.label)}, {"margin", w.margin}};
}

json run_curvature(const RunContext& ctx, const RadialGeometry& geom,
                   std::vector<CsvTable>& csvs, std::vector<std::string>& names) {
  const int npts = ctx.params.value("samples", 50);
  std::vector<double> xs;
  if (geom.kind() == GeometryKind::Football) {
    for (int i = 1; i <= npts; ++i) xs.push_back(kPi * i / (npts + 1.0));
  } else {
    const double lo = std::log(0.1), hi = std::log(50.0);
    for (int i = 0; i < npts; ++i)
      xs.push_back(std::exp(lo + (hi - lo) * i / (npts - 1.0)));
  }
  CsvTable t({"x", "R_closed", "R_numeric", "rel_err"});
  double worst = 0.0;
  for (double x : xs) {
    const double rc = scalar_curvature(geom, x);
    const double rn = numeric_scalar_curvature(geom, x);
    const double err = std::abs(rn - rc) / std::max(1.0, std::abs(rc));
    worst = std::max(worst, err);
    t.add_row({fd(x), fd(rc), fd(rn), fd(err)});
  }
  csvs.push_back(t);
  names.push_back("curvature.csv");
  return {{"samples", npts}, {"max_rel_err", worst}};
}

json run_mass(const RunContext& ctx, const RadialGeometry& geom,
              std::vector<CsvTable>& csvs, std::vector<std::string>& names) {
  if (geom.kind() != GeometryKind::LebrunALE)
    throw ConfigError("mass: geometry must be lebrun_ale");
  std::vector<double> radii = param_list(ctx.params, "radii", {});
  if (radii.empty())
    for (double r = 20.0; r <= 200.0; r *= 1.4) radii.push_back(r);
  MassOptions mo;
  mo.nodes_theta = mo.nodes_phi = mo.nodes_psi = ctx.params.value("nodes", 32);
  const MassEstimate est = adm_mass(geom, radii, mo);
  CsvTable t({"r", "flux", "residual"});
  for (size_t i = 0; i < est.radii.size(); ++i) {
    const double fit =
        est.extrapolated + est.fit_coefficient / (est.radii[i] * est.radii[i]);
    t.add_row({fd(est.radii[i]), fd(est.flux[i]), fd(est.flux[i] - fit)});
  }
  csvs.push_back(t);
  names.push_back("mass.csv");
  if (!est.converged)
    throw NumericError("mass: extrapolation fit residual " +
                       std::to_string(est.fit_residual) + " above tolerance");
  return {{"radii", est.radii},          {"flux", est.flux},
          {"extrapolated", est.extrapolated}, {"fit_model", est.fit_model},
          {"fit_residual", est.fit_residual},
          {"extrapolated_quartic", est.extrapolated_quartic},
          {"converged", est.converged}};
}

json run_green(const RunContext& ctx, const RadialGeometry& geom,
               std::vector<CsvTable>& csvs, std::vector<std::string>& names) {
  if (geom.kind() != GeometryKind::LebrunCompact)
    throw ConfigError("green: geometry must be lebrun_compact");
  const auto sol = green_function_radial(geom);
  const int n = geom.order();
  CsvTable t({"s", "psi", "dpsi_ds", "exact", "rel_err"});
  double worst = 0.0;
  for (size_t i = 0; i < sol.s_grid.size(); i += 8) {
    const double s = sol.s_grid[i];
    const double exact = 1.0 / (s * s) + n;
    const double err = std::abs(sol.psi[i] - exact) / exact;
    worst = std::max(worst, err);
    t.add_row({fd(s), fd(sol.psi[i]), fd(sol.dpsi_ds[i]), fd(exact), fd(err)});
  }
  csvs.push_back(t);
  names.push_back("green.csv");
  return {{"leading_coefficient", sol.leading_coefficient},
          {"regular_term_s", sol.regular_term_s},
          {"mix", sol.mix},
          {"terminal_slope", sol.terminal_slope},
          {"max_rel_err_vs_family_closed_form", worst}};
}

json run_solve(const RunContext& ctx, const RadialGeometry& geom, const KFamily& K,
               std::vector<CsvTable>& csvs, std::vector<std::string>& names) {
  const SolveResult r = solve_bvp(geom, K, ctx.p, ctx.sopts);
  json out;
  out["found"] = bool(r.solution);
  out["scan"] = shots_summary(r.evidence);
  csvs.push_back(scan_csv(r.evidence));
  names.push_back("scan.csv");
  if (r.solution) {
    out["solution"] = solution_summary(*r.solution);
    csvs.push_back(solution_csv(*r.solution));
    names.push_back("solution.csv");
  }
  return out;
}

json run_continue(const RunContext& ctx, const RadialGeometry& geom, const KFamily& K,
                  std::vector<CsvTable>& csvs, std::vector<std::string>& names) {
  std::vector<double> grid = ctx.p_grid;
  if (grid.empty())
    for (int i = 0; i < 12; ++i) grid.push_back(2.0 + (2.99 - 2.0) * i / 11.0);
  const ContinuationResult r = continuation_in_p(geom, K, grid, ctx.sopts);
  CsvTable t({"p", "found", "slope", "max_u", "argmax", "u_center", "residual_sup"});
  for (const auto& s : r.steps)
    t.add_row({fd(s.p), s.found ? "1" : "0", fd(s.slope), fd(s.max_u), fd(s.argmax),
               fd(s.u_center), fd(s.residual_sup)});
  csvs.push_back(t);
  names.push_back("continuation.csv");
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"p", s.p},
                     {"found", s.found},
                     {"slope", s.slope},
                     {"max_u", s.max_u},
                     {"argmax", s.argmax},
                     {"u_center", s.u_center},
                     {"residual_sup", s.residual_sup}});
  return {{"steps", steps},
          {"classification", r.classification},
          {"growth_ratio", r.growth_ratio},
          {"monotone_growth", r.monotone_growth},
          {"argmax_at_orbifold", r.argmax_at_orbifold}};
}

json run_count(const RunContext& ctx, const RadialGeometry& geom, const KFamily& K,
               std::vector<CsvTable>& csvs, std::vector<std::string>& names) {
  const MultiStartResult r = multi_start_count(geom, K, ctx.p, ctx.sopts);
  csvs.push_back(scan_csv(r.evidence));
  names.push_back("count_scan.csv");
  CsvTable t({"slope", "max_u", "min_u", "residual_sup"});
  json sols = json::array();
  for (const auto& s : r.solutions) {
    t.add_row({fd(s.shooting_parameter), fd(s.max_u), fd(s.min_u),
               fd(s.residual_sup)});
    sols.push_back(solution_summary(s));
  }
  csvs.push_back(t);
  names.push_back("count_solutions.csv");
  return {{"count", r.count}, {"solutions", sols}, {"scan", shots_summary(r.evidence)}};
}

json run_transform(const RunContext& ctx, const RadialGeometry& geom,
                   const KFamily& K, std::vector<CsvTable>& csvs,
                   std::vector<std::string>& names) {
  if (geom.kind() == GeometryKind::Football)
    throw ConfigError("transform: the O(-n) -> O(-2) rewrite needs a LeBrun geometry");
  const int n = geom.order();
  // identity check on seeded random smooth profiles
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0), freq(0.2, 2.0);
  std::vector<double> t_grid;
  for (int i = 1; i <= 40; ++i) t_grid.push_back(0.1 + (20.0 - 0.1) * i / 41.0);
  double worst = 0.0;
  const int trials = ctx.params.value("identity_trials", 20);
  for (int trial = 0; trial < trials; ++trial) {
    const double a1 = amp(rng), a2 = amp(rng), w1 = freq(rng), w2 = freq(rng),
                 b = amp(rng);
    auto w = [=](double t) {
      return 1.0 + a1 * std::sin(w1 * t) + a2 * std::cos(w2 * t) +
             b * std::exp(-0.3 * t);
    };
    auto d2w = [=](double t) {
      return -a1 * w1 * w1 * std::sin(w1 * t) - a2 * w2 * w2 * std::cos(w2 * t) +
             0.09 * b * std::exp(-0.3 * t);
    };
    const auto rep = transform_residual_identity(w, d2w, K, n, t_grid);
    worst = std::max(worst, rep.max_rel_diff);
  }
  json out;
  out["identity_trials"] = trials;
  out["identity_max_rel_diff"] = worst;

  const SolveResult sr = solve_bvp(geom, K, 3.0, ctx.sopts);
  out["found"] = bool(sr.solution);
  if (sr.solution) {
    std::vector<double> s_grid = param_list(ctx.params, "s_grid", {});
    if (s_grid.empty())
      for (int i = 0; i <= 24; ++i) s_grid.push_back(0.1 + (2.0 - 0.1) * i / 24.0);
    const TransformResult tr = transform_n_to_2(
        geom, K, 3.0, sr.solution->shooting_parameter, s_grid, ctx.sopts);
    CsvTable t({"s", "v2", "k2"});
    for (size_t i = 0; i < tr.s_grid.size(); ++i)
      t.add_row({fd(tr.s_grid[i]), fd(tr.v2[i]), fd(tr.k2[i])});
    csvs.push_back(t);
    names.push_back("transform.csv");
    out["input_residual_sup"] = tr.input_residual_sup;
    out["o2_residual_sup"] = tr.o2_residual_sup;
  }
  return out;
}

json run_pohozaev(const RunContext& ctx, const RadialGeometry& geom,
                  const KFamily& K, std::vector<CsvTable>& csvs,
                  std::vector<std::string>& names) {
  CsvTable t({"r", "P", "coeff_deviation", "c_volume", "c_boundary", "k_gradient",
              "exponent_deficit", "k_boundary", "residual", "scale"});
  json rows = json::array();
  double worst_rel = 0.0;
  auto push = [&](const PohozaevReport& rep) {
    t.add_row({fd(rep.r), fd(rep.boundary_P), fd(rep.term_coeff_deviation),
               fd(rep.term_c_volume), fd(rep.term_c_boundary),
               fd(rep.term_k_gradient), fd(rep.term_exponent_deficit),
               fd(rep.term_k_boundary), fd(rep.residual), fd(rep.scale)});
    rows.push_back({{"r", rep.r},
                    {"P", rep.boundary_P},
                    {"residual", rep.residual},
                    {"scale", rep.scale}});
    worst_rel = std::max(worst_rel, rep.residual / rep.scale);
  };
  json out;
  if (ctx.params.contains("bubble_c")) {
    const double c = ctx.params.at("bubble_c").get<double>();
    BubbleProfile b(c);
    PohozaevProfile u{[&b](double r) { return b.value(r); },
                      [&b](double r) { return b.deriv(r); },
                      [&b](double r) { return b.second(r); }};
    const auto co = flat_pohozaev_coefficients(c, 3.0, 1.0);
    std::vector<double> radii = param_list(ctx.params, "radii", {});
    if (radii.empty())
      for (int i = 1; i <= 10; ++i) radii.push_back(0.25 * i);
    for (double r : radii) push(pohozaev_volume_terms(u, co, r));
    out["mode"] = "bubble";
  } else {
    if (geom.kind() != GeometryKind::LebrunCompact)
      throw ConfigError("pohozaev: solution mode needs lebrun_compact");
    const SolveResult sr = solve_bvp(geom, K, ctx.p, ctx.sopts);
    out["mode"] = "solution";
    out["found"] = bool(sr.solution);
    if (!sr.solution) throw NumericError("pohozaev: no solution to evaluate");
    const auto& sol = *sr.solution;
    const auto d2u = lebrun_solution_d2u(geom, K, sol);
    const auto co = lebrun_compact_pohozaev_coefficients(geom.order(), K, ctx.p);
    std::vector<double> radii = param_list(ctx.params, "radii", {0.5, 1.0, 1.5});
    for (double r : radii)
      push(pohozaev_volume_terms_sampled(sol.s, sol.u, sol.du, d2u, co, r));
  }
  csvs.push_back(t);
  names.push_back("pohozaev.csv");
  out["rows"] = rows;
  out["max_residual_over_scale"] = worst_rel;
  return out;
}

json run_energy(const RunContext& ctx, const RadialGeometry& geom, const KFamily& K,
                std::vector<CsvTable>& csvs, std::vector<std::string>& names) {
  if (geom.kind() != GeometryKind::LebrunCompact)
    throw ConfigError("energy: lambda sweep needs lebrun_compact");
  const auto psi = green_function_radial(geom);
  std::vector<double> lambdas =
      param_list(ctx.params, "lambdas", {20.0, 40.0, 80.0, 160.0});
  const EnergyExpansion ex = energy_expansion_check(geom, K, psi, lambdas);
  CsvTable t({"lambda", "J", "fitted"});
  for (size_t i = 0; i < ex.lambdas.size(); ++i)
    t.add_row({fd(ex.lambdas[i]), fd(ex.J[i]),
               fd(ex.limit_estimate + ex.slope / (ex.lambdas[i] * ex.lambdas[i]))});
  csvs.push_back(t);
  names.push_back("energy.csv");
  const WallClass w = classify_wall(K, geom.order());
  return {{"J", ex.J},
          {"lambdas", ex.lambdas},
          {"limit_estimate", ex.limit_estimate},
          {"slope", ex.slope},
          {"slope_sign", ex.slope_sign},
          {"r_squared", ex.r_squared},
          {"decay_order", ex.decay_order},
          {"wall_margin", w.margin},
          {"B_K", modified_max_BK(K, geom)},
          {"sobolev_reference", sobolev_quotient(4)}};
}

json run_sweep(const RunContext& ctx, const RadialGeometry& geom,
               std::vector<CsvTable>& csvs, std::vector<std::string>& names) {
  if (geom.kind() == GeometryKind::Football)
    throw ConfigError("sweep: wall-crossing sweep needs a LeBrun geometry");
  if (!ctx.params.contains("sweep")) throw ConfigError("sweep: need params.sweep");
  const json& sw = ctx.params.at("sweep");
  const double from = sw.value("from", -1.5), to = sw.value("to", 3.0);
  const int points = sw.value("points", 10);
  const int n = geom.order();
  CsvTable t({"amplitude", "margin", "status", "count", "max_u", "residual_sup"});
  csvs.push_back(t);  // placeholder, replaced below
  struct Row {
    double a = 0.0, margin = 0.0, max_u = 0.0, residual = 0.0;
    int count = 0;
    std::string status;
  };
  std::vector<Row> rows(std::max(points, 0));
  auto work = [&](int i) {
    Row row;
    row.a = from + (points > 1 ? (to - from) * i / (points - 1.0) : 0.0);
    try {
      const KFamily K = KFamily::bump(1.0, row.a);
      row.margin = classify_wall(K, n).margin;
      const MultiStartResult r = multi_start_count(geom, K, ctx.p, ctx.sopts);
      row.count = r.count;
      if (!r.solutions.empty()) {
        row.max_u = r.solutions.front().max_u;
        row.residual = r.solutions.front().residual_sup;
      }
      row.status = "ok";
    } catch (const std::invalid_argument& e) {
      row.status = std::string("invalid_family");
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    return row;
  };
  if (ctx.threads > 1 && points > 1) {
    std::vector<std::future<Row>> futs;
    for (int i = 0; i < points; ++i)
      futs.push_back(std::async(std::launch::async, work, i));
    for (int i = 0; i < points; ++i) rows[i] = futs[i].get();
  } else {
    for (int i = 0; i < points; ++i) rows[i] = work(i);
  }
  CsvTable table({"amplitude", "margin", "status", "count", "max_u", "residual_sup"});
  json jrows = json::array();
  bool any_error = false;
  for (const auto& r : rows) {
    table.add_row({fd(r.a), fd(r.margin), r.status, std::to_string(r.count),
                   fd(r.max_u), fd(r.residual)});
    jrows.push_back({{"amplitude", r.a},
                     {"margin", r.margin},
                     {"status", r.status},
                     {"count", r.count},
                     {"max_u", r.max_u}});
    if (r.status.rfind("error:", 0) == 0) any_error = true;
  }
  csvs.back() = table;
  names.push_back("sweep.csv");
  if (any_error)
    throw NumericError("sweep: one or more rows failed numerically (see sweep.csv)");
  return {{"rows", jrows}, {"points", points}};
}

int run(RunContext& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const json& cfg = ctx.raw;
  const RadialGeometry geom = parse_geometry(cfg.at("geometry"));
  KFamily K = KFamily::constant(1.0);
  if (cfg.contains("k_family")) K = parse_kfamily(cfg.at("k_family"));
  if (cfg.contains("solver")) parse_solver(cfg.at("solver"), ctx);
  if (!(ctx.p > 1.0 && ctx.p <= 3.0)) throw ConfigError("solver.p must be in (1,3]");

  std::vector<CsvTable> csvs;
  std::vector<std::string> csv_names;
  json results;
  const std::string& e = ctx.experiment;
  if (e == "classify") results = run_classify(ctx, geom, K, csvs, csv_names);
  else if (e == "curvature") results = run_curvature(ctx, geom, csvs, csv_names);
  else if (e == "mass") results = run_mass(ctx, geom, csvs, csv_names);
  else if (e == "green") results = run_green(ctx, geom, csvs, csv_names);
  else if (e == "solve") results = run_solve(ctx, geom, K, csvs, csv_names);
  else if (e == "continue") results = run_continue(ctx, geom, K, csvs, csv_names);
  else if (e == "count") results = run_count(ctx, geom, K, csvs, csv_names);
  else if (e == "transform") results = run_transform(ctx, geom, K, csvs, csv_names);
  else if (e == "pohozaev") results = run_pohozaev(ctx, geom, K, csvs, csv_names);
  else if (e == "energy") results = run_energy(ctx, geom, K, csvs, csv_names);
  else if (e == "sweep") results = run_sweep(ctx, geom, csvs, csv_names);
  else throw ConfigError("unknown experiment '" + e + "'");

  fs::create_directories(ctx.outdir);
  if (ctx.want_csv)
    for (size_t i = 0; i < csvs.size(); ++i)
      csvs[i].write((ctx.outdir / csv_names[i]).string());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ctx.want_json) {
    json report = {{"experiment", ctx.experiment},
                   {"config", cfg},
                   {"config_hash", config_hash(cfg)},
                   {"versions", {{"orblab", kVersion}}},
                   {"results", results},
                   {"csv_files", csv_names},
                   {"timings", {{"total_seconds", secs}}}};
    std::ofstream f(ctx.outdir / "report.json", std::ios::binary);
    f << report.dump(2) << "\n";
  }
  if (ctx.verbose) std::fprintf(stderr, "orblab: %s done in %.2fs\n", e.c_str(), secs);
  return 0;
}

void write_error(const fs::path& outdir, const std::string& kind,
                 const std::string& what) {
  std::error_code ec;
  fs::create_directories(outdir, ec);
  json err = {{"error", kind}, {"message", what}};
  std::ofstream f(outdir / "error.json", std::ios::binary);
  if (f) f << err.dump(2) << "\n";
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orblab: radial prescribed-curvature experiments"};
  app.require_subcommand(1);
  std::string config_path, out_override;
  int threads = 1;
  bool verbose = false;
  const std::vector<std::string> experiments = {
      "curvature", "mass",     "green",  "solve",    "continue", "count",
      "transform", "pohozaev", "energy", "classify", "sweep"};
  std::vector<CLI::App*> subs;
  for (const auto& e : experiments) {
    auto* s = app.add_subcommand(e, "run the " + e + " experiment");
    s->add_option("--config", config_path, "config JSON path")->required();
    s->add_option("--out", out_override, "output directory override");
    s->add_option("--threads", threads, "worker threads for sweeps");
    s->add_flag("--verbose", verbose, "timing chatter on stderr");
    subs.push_back(s);
  }
  CLI11_PARSE(app, argc, argv);
  const std::string experiment = app.get_subcommands().front()->get_name();

  RunContext ctx;
  ctx.experiment = experiment;
  ctx.threads = threads;
  ctx.verbose = verbose;
  try {
    std::ifstream f(config_path);
    if (!f) throw ConfigError("cannot open config file " + config_path);
    ctx.raw = json::parse(f);
    ctx.params = ctx.raw.value("params", json::object());
    const json out = ctx.raw.value("output", json::object());
    ctx.outdir = out_override.empty() ? out.value("directory", std::string("."))
                                      : out_override;
    ctx.seed = out.value("seed", 0);
    if (out.contains("formats")) {
      ctx.want_json = ctx.want_csv = false;
      for (const auto& fmt : out.at("formats")) {
        if (fmt == "json") ctx.want_json = true;
        else if (fmt == "csv") ctx.want_csv = true;
        else throw ConfigError("output.formats entries must be json|csv");
      }
    }
    if (ctx.raw.contains("experiment") &&
        ctx.raw.at("experiment").get<std::string>() != experiment)
      throw ConfigError("config experiment '" +
                        ctx.raw.at("experiment").get<std::string>() +
                        "' does not match subcommand '" + experiment + "'");
    return run(ctx);
  } catch (const ConfigError& e) {
    write_error(ctx.outdir.empty() ? "." : ctx.outdir, "config", e.what());
    return 2;
  } catch (const json::exception& e) {
    write_error(ctx.outdir.empty() ? "." : ctx.outdir, "config", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    write_error(ctx.outdir, "config", e.what());
    return 2;
  } catch (const NumericError& e) {
    write_error(ctx.outdir, "numeric", e.what());
    return 3;
  } catch (const std::exception& e) {
    write_error(ctx.outdir, "numeric", e.what());
    return 3;
  }
}
