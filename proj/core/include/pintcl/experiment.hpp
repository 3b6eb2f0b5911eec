#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pintcl/exact_solutions.hpp"
#include "pintcl/linear_testbed.hpp"
#include "pintcl/outer_solver.hpp"

namespace pintcl {

// One experiment as specified on the command line (or programmatically).
struct RunConfig {
  std::string problem = "burgers";  // burgers | bl
  std::string ic = "square";        // square | smooth
  int nx = 64;
  int k = 1;                   // 1 or 2 (space order 2k-1, matching integrator)
  std::string flux = "llf";    // glf | llf
  std::string lin = "newton";  // newton | picard
  std::string solver = "mgrit2";  // direct | mgrit2 | mgritV
  int m = 8;
  double tol = 1e-10;
  int max_iters = 20;
  bool nested = true;
  double s_rk = 16.0 / 3.0;
  double s_fv = 4.0 / 3.0;
  std::string g_norm = "factorial";  // factorial | linear
  bool correction = true;
  bool relax = true;  // nonlinear F-relaxation in the outer loop
  std::uint64_t seed = 1;
  int nt = 0;  // 0: use the tabulated value for (problem, ic, nx)

  // Linear-advection testbed runs (replaces the nonlinear pipeline).
  bool linear = false;
  std::string alpha = "const";  // const | cos2 | sin2moving | cosxcost
  double theta = 0.0;
};

// Problem assembly used by both the CLI and the test suites.
Discretization make_discretization(const RunConfig& cfg, int nx);
CellField initial_averages(const RunConfig& cfg, const Grid& g);
LinMode lin_mode_for(const RunConfig& cfg);
SolverConfig solver_config_for(const RunConfig& cfg);
int resolve_nt(const RunConfig& cfg);

struct RunResult {
  bool is_linear = false;
  int nt = 0;
  double dt = 0.0;
  SolveHistory history;             // finest solve
  std::vector<NestedLevel> ladder;  // nested runs: every rung
  SpaceTimeState U;
  ErrorNorms error_vs_exact;  // final time, when an exact profile is known
  bool has_exact = false;
  LinearTestbedResult linear_result;
};

RunResult run_experiment(const RunConfig& cfg);

// Mesh sweep holding everything but nx (and the paired nt) fixed.
struct SweepRow {
  int nx = 0;
  int nt = 0;
  int iters = 0;
  bool converged = false;
  bool diverged = false;
  double final_rel = 0.0;
  double wall_seconds = 0.0;
};

std::vector<SweepRow> run_mesh_sweep(RunConfig base, const std::vector<int>& nxs);

// CSV / JSON output (all floating-point values written with %.17g).
void write_history_csv(const std::string& path, const SolveHistory& h);
void write_linear_history_csv(const std::string& path, const LinearTestbedResult& r);
void write_final_state_csv(const std::string& path, const Grid& g, const CellField& u);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_manifest(const std::string& path, const RunConfig& cfg, const RunResult* result);

}  // namespace pintcl
