#pragma once

#include <functional>
#include <vector>

#include "pintcl/grid.hpp"

namespace pintcl {

// A linear block lower-bidiagonal all-at-once system on one time level of the
// hierarchy: E^0 = R^0, E^{j+1} = Phi_j E^j + R^{j+1}. apply_step applies
// Phi_j (the fine stepper on level 0, a coarse operator on deeper levels).
struct LevelSystem {
  int n_points = 0;
  int nx = 0;
  std::function<void(int step, const CellField&, CellField&)> apply_step;
};

// Relaxation sweeps. F-relaxation re-propagates across the fine points of
// each coarse interval; C-relaxation updates each C-point from its immediate
// predecessor (and pins E^0 = R^0).
void f_relax(SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys,
             const CFSplitting& split);
void c_relax(SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys,
             const CFSplitting& split);

// Injection of the current residual at the C-points (the coarse right-hand
// side): Rc_0 = R^0 - E^0, Rc_j = R^{c_j} - E^{c_j} + Phi E^{c_j - 1}.
void coarse_residual(const SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys,
                     const CFSplitting& split, SpaceTimeState& Rc);

// Exact solve by forward substitution.
void forward_solve(const LevelSystem& sys, const SpaceTimeState& R, SpaceTimeState& E);

// Time-multigrid hierarchy: levels[0] is the fine system; splits[l] divides
// levels[l]'s points and levels[l+1] steps between consecutive C-points.
// Relaxation is F on the finest level (FCF if fcf_finest) and FCF below.
struct MgritHierarchy {
  std::vector<LevelSystem> levels;
  std::vector<CFSplitting> splits;
  bool fcf_finest = false;
};

// One V-cycle (coarsest level solved by forward substitution, C-point
// correction, post F-relaxation on each level while ascending).
void vcycle_iteration(SpaceTimeState& E, const SpaceTimeState& R, const MgritHierarchy& h);

// One two-level iteration: the same cycle restricted to a depth-2 hierarchy.
void two_level_iteration(SpaceTimeState& E, const SpaceTimeState& R, const MgritHierarchy& h);

// Residual R - P E of the level-0 system (for convergence monitoring).
void fine_residual(const SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys,
                   SpaceTimeState& out);

}  // namespace pintcl
