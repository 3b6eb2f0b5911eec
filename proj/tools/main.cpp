// Experiment driver: one solver run (or a predefined mesh sweep) with CSV and
// JSON output suitable for plotting and archival.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pintcl/experiment.hpp"

namespace fs = std::filesystem;
using namespace pintcl;

namespace {

struct Suite {
  RunConfig base;
  std::vector<int> nxs;
  const char* blurb;
};

std::map<std::string, Suite> make_suites() {
  std::map<std::string, Suite> s;

  RunConfig b;  // burgers, square, k=1, llf, mgrit2, nested
  s["mesh-1st"] = {b, {64, 128, 256, 512, 1024}, "first-order solver across meshes"};

  b = RunConfig{};
  b.k = 2;
  s["mesh-3rd"] = {b, {64, 128, 256, 512}, "third-order solver across meshes"};

  b = RunConfig{};
  b.problem = "bl";
  s["mesh-1st-bl"] = {b, {64, 128, 256, 512}, "first-order solver, non-convex flux"};

  b = RunConfig{};
  b.problem = "bl";
  b.k = 2;
  s["mesh-3rd-bl"] = {b, {64, 128, 256}, "third-order solver, non-convex flux"};

  b = RunConfig{};
  b.flux = "glf";
  b.solver = "direct";
  b.relax = false;
  s["newton-direct"] = {b, {64, 128, 256, 512}, "exact-Jacobian iteration, direct solves"};

  b = RunConfig{};
  b.linear = true;
  s["linear-p1"] = {b, {64, 128, 256, 512, 1024}, "frozen-coefficient testbed, first order"};

  b = RunConfig{};
  b.linear = true;
  b.k = 2;
  s["linear-p3"] = {b, {64, 128, 256, 512}, "frozen-coefficient testbed, third order"};

  return s;
}

// Sweep rows for the linear testbed (the generic sweep reads the nonlinear
// history, which linear runs leave empty).
std::vector<SweepRow> linear_sweep(RunConfig base, const std::vector<int>& nxs) {
  std::vector<SweepRow> rows;
  for (int nx : nxs) {
    base.nx = nx;
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run_experiment(base);
    const auto t1 = std::chrono::steady_clock::now();
    SweepRow row;
    row.nx = nx;
    row.nt = r.nt;
    row.iters = r.linear_result.iters;
    row.converged = r.linear_result.converged;
    row.diverged = r.linear_result.diverged;
    row.final_rel =
        r.linear_result.rel_residual.empty() ? 0.0 : r.linear_result.rel_residual.back();
    row.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    rows.push_back(row);
  }
  return rows;
}

int run_suite(const std::string& name, const Suite& suite, const std::string& out_dir) {
  std::printf("suite %s: %s\n", name.c_str(), suite.blurb);
  const auto rows = suite.base.linear ? linear_sweep(suite.base, suite.nxs)
                                      : run_mesh_sweep(suite.base, suite.nxs);
  std::printf("%8s %8s %7s %10s %12s %10s\n", "nx", "nt", "iters", "converged", "final_rel",
              "seconds");
  bool all_ok = true;
  for (const auto& r : rows) {
    std::printf("%8d %8d %7d %10s %12.3e %10.2f\n", r.nx, r.nt, r.iters,
                r.diverged ? "diverged" : (r.converged ? "yes" : "no"), r.final_rel,
                r.wall_seconds);
    all_ok = all_ok && r.converged;
  }
  write_sweep_csv(out_dir + "/sweep.csv", rows);
  write_manifest(out_dir + "/manifest.json", suite.base, nullptr);
  std::printf("wrote %s/sweep.csv and %s/manifest.json\n", out_dir.c_str(), out_dir.c_str());
  return all_ok ? 0 : 1;
}

int run_single(const RunConfig& cfg, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  const RunResult res = run_experiment(cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const Grid g(cfg.nx);
  CellField last(g.nx, 0.0);
  bool converged = false, diverged = false;
  int iters = 0;
  double final_rel = 0.0;
  if (res.is_linear) {
    write_linear_history_csv(out_dir + "/history.csv", res.linear_result);
    res.linear_result.E.copy_level_out(res.nt - 1, last);
    converged = res.linear_result.converged;
    diverged = res.linear_result.diverged;
    iters = res.linear_result.iters;
    if (!res.linear_result.rel_residual.empty()) final_rel = res.linear_result.rel_residual.back();
  } else {
    write_history_csv(out_dir + "/history.csv", res.history);
    res.U.copy_level_out(res.nt - 1, last);
    converged = res.history.converged;
    diverged = res.history.diverged;
    iters = res.history.iters;
    if (!res.history.rel_residual.empty()) final_rel = res.history.rel_residual.back();
  }
  write_final_state_csv(out_dir + "/final_state.csv", g, last);
  write_manifest(out_dir + "/manifest.json", cfg, &res);

  std::printf("nx=%d nt=%d dt=%.6g: %s, %d iterations, final relative residual %.3e (%.2fs)\n",
              cfg.nx, res.nt, res.dt, diverged ? "DIVERGED" : (converged ? "converged" : "NOT converged"),
              iters, final_rel, wall);
  if (!res.ladder.empty()) {
    std::printf("nested ladder:");
    for (const auto& lev : res.ladder) {
      if (lev.history.residual_norm.empty())
        std::printf("  [%dx%d march]", lev.nx, lev.nt);
      else
        std::printf("  [%dx%d %d iters]", lev.nx, lev.nt, lev.history.iters);
    }
    std::printf("\n");
  }
  if (res.has_exact)
    std::printf("error vs exact profile at the final time: L1 %.3e  L2 %.3e  Linf %.3e\n",
                res.error_vs_exact.l1, res.error_vs_exact.l2, res.error_vs_exact.linf);
  std::printf("wrote history.csv, final_state.csv, manifest.json under %s\n", out_dir.c_str());
  return diverged ? 2 : (converged ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Space-time solver for 1-D scalar conservation laws: outer "
      "residual-correction iterations with parallel-in-time inner solves"};

  RunConfig cfg;
  std::string out_dir = "out";
  std::string suite_name;

  app.add_option("--problem", cfg.problem, "burgers | bl")
      ->check(CLI::IsMember({"burgers", "bl"}));
  app.add_option("--ic", cfg.ic, "square | smooth")->check(CLI::IsMember({"square", "smooth"}));
  app.add_option("--nx", cfg.nx, "number of cells")->check(CLI::PositiveNumber);
  app.add_option("--k", cfg.k, "1: first order; 2: third order")->check(CLI::IsMember({1, 2}));
  app.add_option("--flux", cfg.flux, "glf | llf (dissipation rule)")
      ->check(CLI::IsMember({"glf", "llf"}));
  app.add_option("--lin", cfg.lin, "newton | picard (linearization of the reconstruction)")
      ->check(CLI::IsMember({"newton", "picard"}));
  app.add_option("--solver", cfg.solver, "direct | mgrit2 | mgritV (inner correction solve)")
      ->check(CLI::IsMember({"direct", "mgrit2", "mgritV"}));
  app.add_option("--m", cfg.m, "temporal coarsening factor")->check(CLI::Range(2, 1024));
  app.add_option("--tol", cfg.tol, "relative residual tolerance");
  app.add_option("--max-iters", cfg.max_iters, "outer iteration cap");
  app.add_flag("--nested,!--no-nested", cfg.nested, "nested iteration across mesh rungs");
  app.add_flag("--relax,!--no-relax", cfg.relax, "nonlinear F-relaxation each outer iteration");
  app.add_flag("--correction,!--no-correction", cfg.correction,
               "truncation-error correction of the coarse operator");
  app.add_option("--s-rk", cfg.s_rk, "integrator error calibration (third order)");
  app.add_option("--s-fv", cfg.s_fv, "dissipation error calibration (third order)");
  app.add_option("--g-norm", cfg.g_norm, "factorial | linear (departure polynomial scale)")
      ->check(CLI::IsMember({"factorial", "linear"}));
  app.add_option("--seed", cfg.seed, "seed for random initial space-time guesses");
  app.add_option("--nt", cfg.nt, "time levels (0: tabulated pairing for the mesh)");
  app.add_flag("--linear", cfg.linear, "run the frozen-coefficient advection testbed");
  app.add_option("--alpha", cfg.alpha, "testbed coefficient preset")
      ->check(CLI::IsMember({"const", "cos2", "sin2moving", "cosxcost"}));
  app.add_option("--theta", cfg.theta, "coefficient freeze point inside each step");
  app.add_option("--out", out_dir, "output directory");

  const auto suites = make_suites();
  std::string suite_help = "predefined mesh sweep:";
  for (const auto& [name, s] : suites) suite_help += " " + name;
  app.add_option("--suite", suite_name, suite_help)
      ->check(CLI::IsMember([&] {
        std::vector<std::string> names;
        for (const auto& [name, s] : suites) names.push_back(name);
        return names;
      }()));

  CLI11_PARSE(app, argc, argv);

  try {
    fs::create_directories(out_dir);
    if (!suite_name.empty()) {
      Suite suite = suites.at(suite_name);
      if (suite.base.linear) suite.base.alpha = cfg.alpha;  // let --alpha pick the coefficient
      return run_suite(suite_name, suite, out_dir);
    }
    return run_single(cfg, out_dir);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 3;
  }
}
