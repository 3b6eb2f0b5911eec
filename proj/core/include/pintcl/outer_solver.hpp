#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pintcl/coarse_correction.hpp"
#include "pintcl/linearization.hpp"
#include "pintcl/mgrit.hpp"
#include "pintcl/time_integration.hpp"

namespace pintcl {

// How the linearized correction system is solved each outer iteration:
// exactly by forward substitution, by one two-level iteration, or by one
// multilevel V-cycle.
enum class InnerSolve { direct, mgrit2, mgritV };

struct SolverConfig {
  InnerSolve inner = InnerSolve::mgrit2;
  LinMode lin_mode = LinMode::exact_k1;
  int m = 8;                    // temporal coarsening factor
  double tol = 1e-10;           // relative residual halting tolerance
  int max_iters = 20;
  double divergence_tol = 1e3;  // declare divergence above this relative residual
  double s_rk = 16.0 / 3.0;     // calibration of the integrator error term (k=2)
  double s_fv = 4.0 / 3.0;      // calibration of the dissipation error term (k=2)
  GNorm g_norm = GNorm::factorial;
  bool correction_enabled = true;   // false: coarse step is the bare transport step
  bool relaxation_enabled = true;   // false: skip nonlinear F-relaxation (pure Newton)
  // Called after each correction with (outer iteration count, current iterate).
  std::function<void(int, const SpaceTimeState&)> iterate_hook;
};

struct SolveHistory {
  std::vector<double> residual_norm;  // ||r_j||_2 measured before each correction
  std::vector<double> rel_residual;   // residual_norm[j] / residual_norm[0] (guarded)
  int iters = 0;                      // corrections applied
  bool converged = false;
  bool diverged = false;
  double wall_seconds = 0.0;
};

// Residual-correction outer iteration on the all-at-once system; U is updated
// in place. Each iteration re-propagates across the fine points of every
// coarse interval (nonlinear F-relaxation), measures the residual, then
// solves the system linearized at the relaxed iterate and adds the correction.
SolveHistory outer_solve(SpaceTimeState& U, const CellField& u0bar, const Discretization& d,
                         const TimeGrid& tg, const SolverConfig& cfg);

// ---- hierarchy construction (exposed for tests and diagnostics) ----

// Per-level data backing the time-multigrid hierarchy of one linearized
// solve. mg holds non-owning stepping closures wired to coarse_steps and to
// the LinearizedSystem passed to the builder; both must outlive any use of mg.
struct NonlinearHierarchy {
  MgritHierarchy mg;
  std::vector<std::vector<CoarseStepData>> coarse_steps;  // [coarse level][interval]
  std::vector<std::vector<CellField>> sigma;  // multilevel: accumulated correction weights
};

void build_two_level(const LinearizedSystem& lin, const SolverConfig& cfg,
                     NonlinearHierarchy& out);
// Coarsens by cfg.m while more than cfg.m steps remain; first-order
// discretizations only (the accumulated-weight recursion is specific to them).
void build_multilevel(const LinearizedSystem& lin, const SolverConfig& cfg,
                      NonlinearHierarchy& out);

// ---- initial guesses ----

// Every entry uniform on [0,1) from a deterministic generator.
void random_initial_guess(SpaceTimeState& U, std::uint64_t seed);

// Time levels used one rung down the nested-iteration ladder: halve the step
// count, rounding up.
int cascade_nt(int nt_fine);

// Interpolate a space-time iterate to the mesh with twice the cells and an
// arbitrary number of time levels over the same interval (mass-preserving
// dyadic interpolation in space, linear interpolation in time).
SpaceTimeState prolong_iterate(const SpaceTimeState& coarse, int nt_fine);

struct NestedLevel {
  int nx = 0, nt = 0;
  SolveHistory history;  // empty at the ladder base (sequential march)
};

struct NestedResult {
  SpaceTimeState U;
  std::vector<NestedLevel> ladder;  // coarsest rung first; back() is the target
};

// Nested iteration: march sequentially on the coarsest rung, then repeatedly
// interpolate up one rung and re-solve there. make_disc builds the
// discretization for a given nx (including its dissipation setup);
// ic_averages supplies the initial cell averages on each rung's grid.
NestedResult nested_solve(const std::function<Discretization(int)>& make_disc,
                          const std::function<CellField(const Grid&)>& ic_averages, int nx_target,
                          int nt_target, double t_final, const SolverConfig& cfg,
                          int coarsest_nx = 32);

}  // namespace pintcl
