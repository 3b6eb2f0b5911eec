#include "pintcl/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "pintcl/build_info.hpp"
#include "pintcl/mesh_tables.hpp"

namespace pintcl {

Discretization make_discretization(const RunConfig& cfg, int nx) {
  if (cfg.k != 1 && cfg.k != 2)
    throw std::invalid_argument("make_discretization: k must be 1 or 2");
  Discretization d;
  d.grid = Grid(nx);
  if (cfg.problem == "burgers") {
    d.flux = burgers_flux();
  } else if (cfg.problem == "bl") {
    d.flux = buckley_leverett_flux();
  } else {
    throw std::invalid_argument("make_discretization: unknown problem '" + cfg.problem + "'");
  }
  d.k = cfg.k;
  d.recon.k = cfg.k;
  d.recon.weights = ReconstructionConfig::Weights::weno;
  // The nonconvex flux with local dissipation needs the physical range
  // enforced on the reconstructed interface values.
  d.recon.clamp01 = (cfg.problem == "bl" && cfg.flux == "llf");

  if (cfg.flux == "glf") {
    d.diss.type = DissipationConfig::Type::glf;
    const CellField u0 = initial_averages(cfg, d.grid);
    const auto [mn, mx] = std::minmax_element(u0.begin(), u0.end());
    d.diss.set_global_from_range(d.flux, *mn, *mx);
  } else if (cfg.flux == "llf") {
    d.diss.type = DissipationConfig::Type::llf;
  } else {
    throw std::invalid_argument("make_discretization: unknown flux variant '" + cfg.flux + "'");
  }
  return d;
}

CellField initial_averages(const RunConfig& cfg, const Grid& g) {
  if (cfg.ic == "square") return square_ic_averages(g);
  if (cfg.ic == "smooth") return smooth_ic_averages(g);
  throw std::invalid_argument("initial_averages: unknown initial condition '" + cfg.ic + "'");
}

LinMode lin_mode_for(const RunConfig& cfg) {
  if (cfg.lin == "newton") return cfg.k == 1 ? LinMode::exact_k1 : LinMode::newton_fd;
  if (cfg.lin == "picard") return LinMode::picard;
  throw std::invalid_argument("lin_mode_for: unknown linearization '" + cfg.lin + "'");
}

namespace {

GNorm parse_g_norm(const std::string& s) {
  if (s == "factorial") return GNorm::factorial;
  if (s == "linear") return GNorm::linear;
  throw std::invalid_argument("unknown normalization '" + s + "'");
}

}  // namespace

SolverConfig solver_config_for(const RunConfig& cfg) {
  SolverConfig s;
  if (cfg.solver == "direct") {
    s.inner = InnerSolve::direct;
  } else if (cfg.solver == "mgrit2") {
    s.inner = InnerSolve::mgrit2;
  } else if (cfg.solver == "mgritV") {
    s.inner = InnerSolve::mgritV;
  } else {
    throw std::invalid_argument("solver_config_for: unknown solver '" + cfg.solver + "'");
  }
  s.lin_mode = lin_mode_for(cfg);
  s.m = cfg.m;
  s.tol = cfg.tol;
  s.max_iters = cfg.max_iters;
  s.s_rk = cfg.s_rk;
  s.s_fv = cfg.s_fv;
  s.g_norm = parse_g_norm(cfg.g_norm);
  s.correction_enabled = cfg.correction;
  s.relaxation_enabled = cfg.relax;
  return s;
}

int resolve_nt(const RunConfig& cfg) {
  if (cfg.nt > 0) return cfg.nt;
  const int nt = tabulated_nt(cfg.problem, cfg.ic, cfg.nx);
  if (nt == 0)
    throw std::invalid_argument("no tabulated time-level count for problem=" + cfg.problem +
                                " ic=" + cfg.ic + " nx=" + std::to_string(cfg.nx) +
                                "; pass nt explicitly");
  return nt;
}

RunResult run_experiment(const RunConfig& cfg) {
  RunResult res;
  if (cfg.linear) {
    res.is_linear = true;
    LinearTestbedConfig lc;
    lc.preset = cfg.alpha;
    lc.nx = cfg.nx;
    lc.k = cfg.k;
    lc.diss = (cfg.flux == "glf") ? DissipationConfig::Type::glf : DissipationConfig::Type::llf;
    lc.theta = cfg.theta;
    lc.m = cfg.m;
    lc.correction_enabled = cfg.correction;
    lc.g_norm = parse_g_norm(cfg.g_norm);
    lc.tol = cfg.tol;
    lc.max_iters = cfg.max_iters;
    lc.seed = cfg.seed;
    res.linear_result = run_linear_mgrit(lc);
    res.nt = res.linear_result.nt;
    res.dt = res.linear_result.dt;
    return res;
  }

  const int nt = resolve_nt(cfg);
  const double T = final_time(cfg.problem);
  const TimeGrid tg = TimeGrid::from_final_time(nt, T);
  const SolverConfig scfg = solver_config_for(cfg);
  res.nt = nt;
  res.dt = tg.dt;

  if (cfg.nested) {
    auto make_d = [&cfg](int nx) { return make_discretization(cfg, nx); };
    auto ic = [&cfg](const Grid& g) { return initial_averages(cfg, g); };
    NestedResult nr = nested_solve(make_d, ic, cfg.nx, nt, T, scfg);
    res.U = std::move(nr.U);
    res.ladder = std::move(nr.ladder);
    if (!res.ladder.empty()) res.history = res.ladder.back().history;
  } else {
    const Discretization d = make_discretization(cfg, cfg.nx);
    SpaceTimeState U(nt, d.grid.nx);
    random_initial_guess(U, cfg.seed);
    res.history = outer_solve(U, initial_averages(cfg, d.grid), d, tg, scfg);
    res.U = std::move(U);
  }

  if (cfg.problem == "burgers" && cfg.ic == "square") {
    const Grid g(cfg.nx);
    const CellField exact = burgers_square_exact_averages(g, T);
    CellField last;
    res.U.copy_level_out(nt - 1, last);
    res.error_vs_exact = error_norms(last, exact, g);
    res.has_exact = true;
  }
  return res;
}

std::vector<SweepRow> run_mesh_sweep(RunConfig base, const std::vector<int>& nxs) {
  std::vector<SweepRow> rows;
  rows.reserve(nxs.size());
  for (int nx : nxs) {
    base.nx = nx;
    base.nt = 0;  // pick up the tabulated pairing for each mesh
    const RunResult r = run_experiment(base);
    SweepRow row;
    row.nx = nx;
    row.nt = r.nt;
    row.iters = r.history.iters;
    row.converged = r.history.converged;
    row.diverged = r.history.diverged;
    row.final_rel = r.history.rel_residual.empty() ? 0.0 : r.history.rel_residual.back();
    row.wall_seconds = r.history.wall_seconds;
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string g17(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

}  // namespace

void write_history_csv(const std::string& path, const SolveHistory& h) {
  auto f = open_or_throw(path);
  f << "iter,residual_norm,rel_residual\n";
  for (std::size_t j = 0; j < h.residual_norm.size(); ++j) {
    f << j << "," << g17(h.residual_norm[j]) << "," << g17(h.rel_residual[j]) << "\n";
  }
}

void write_linear_history_csv(const std::string& path, const LinearTestbedResult& r) {
  auto f = open_or_throw(path);
  f << "iter,residual_norm,rel_residual\n";
  for (std::size_t j = 0; j < r.residual_norm.size(); ++j) {
    f << j << "," << g17(r.residual_norm[j]) << "," << g17(r.rel_residual[j]) << "\n";
  }
}

void write_final_state_csv(const std::string& path, const Grid& g, const CellField& u) {
  auto f = open_or_throw(path);
  f << "x,u\n";
  for (int i = 0; i < g.nx; ++i) {
    f << g17(g.cell_center(i)) << "," << g17(u[i]) << "\n";
  }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  auto f = open_or_throw(path);
  f << "nx,nt,iters,converged,diverged,final_rel,wall_seconds\n";
  for (const SweepRow& r : rows) {
    f << r.nx << "," << r.nt << "," << r.iters << "," << (r.converged ? 1 : 0) << ","
      << (r.diverged ? 1 : 0) << "," << g17(r.final_rel) << "," << g17(r.wall_seconds) << "\n";
  }
}

void write_manifest(const std::string& path, const RunConfig& cfg, const RunResult* result) {
  nlohmann::json j;
  j["tool"] = "pintcl";
  j["version"] = kVersion;
  j["git_revision"] = kGitRevision;
  nlohmann::json c;
  c["problem"] = cfg.problem;
  c["ic"] = cfg.ic;
  c["nx"] = cfg.nx;
  c["k"] = cfg.k;
  c["flux"] = cfg.flux;
  c["lin"] = cfg.lin;
  c["solver"] = cfg.solver;
  c["m"] = cfg.m;
  c["tol"] = cfg.tol;
  c["max_iters"] = cfg.max_iters;
  c["nested"] = cfg.nested;
  c["s_rk"] = cfg.s_rk;
  c["s_fv"] = cfg.s_fv;
  c["g_norm"] = cfg.g_norm;
  c["correction"] = cfg.correction;
  c["relax"] = cfg.relax;
  c["seed"] = cfg.seed;
  c["nt"] = cfg.nt;
  c["linear"] = cfg.linear;
  if (cfg.linear) {
    c["alpha"] = cfg.alpha;
    c["theta"] = cfg.theta;
  }
  j["config"] = c;
  if (result != nullptr) {
    nlohmann::json r;
    r["nt"] = result->nt;
    r["dt"] = result->dt;
    const auto& h = result->is_linear
                        ? std::make_pair(result->linear_result.iters,
                                         result->linear_result.converged)
                        : std::make_pair(result->history.iters, result->history.converged);
    r["iters"] = h.first;
    r["converged"] = h.second;
    if (result->has_exact) {
      r["error_l1"] = result->error_vs_exact.l1;
      r["error_l2"] = result->error_vs_exact.l2;
      r["error_linf"] = result->error_vs_exact.linf;
    }
    j["result"] = r;
  }
  auto f = open_or_throw(path);
  f << j.dump(2) << "\n";
}

}  // namespace pintcl
