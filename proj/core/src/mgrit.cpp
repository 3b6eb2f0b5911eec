#include "pintcl/mgrit.hpp"

#include <cassert>
#include <cstddef>
#include <vector>

namespace pintcl {

namespace {

struct StepScratch {
  CellField src, out;
  explicit StepScratch(int nx)
      : src(static_cast<std::size_t>(nx)), out(static_cast<std::size_t>(nx)) {}
};

// E^n = Phi_{n-1} E^{n-1} + R^n for a single step.
void propagate_into(SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys, int n,
                    StepScratch& s) {
  const auto prev = E.level_span(n - 1);
  s.src.assign(prev.begin(), prev.end());
  sys.apply_step(n - 1, s.src, s.out);
  auto dst = E.level(n);
  const auto rhs = R.level_span(n);
  for (int i = 0; i < sys.nx; ++i) dst[i] = s.out[i] + rhs[i];
}

}  // namespace

void f_relax(SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys,
             const CFSplitting& split) {
  assert(E.nt == sys.n_points && R.nt == sys.n_points);
  StepScratch s(sys.nx);
  for (int j = 0; j + 1 < static_cast<int>(split.c_points.size()); ++j) {
    for (int n = split.c_points[j] + 1; n < split.c_points[j + 1]; ++n) {
      propagate_into(E, R, sys, n, s);
    }
  }
}

void c_relax(SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys,
             const CFSplitting& split) {
  assert(E.nt == sys.n_points && R.nt == sys.n_points);
  StepScratch s(sys.nx);
  {
    auto dst = E.level(0);
    const auto rhs = R.level_span(0);
    for (int i = 0; i < sys.nx; ++i) dst[i] = rhs[i];
  }
  for (std::size_t j = 1; j < split.c_points.size(); ++j) {
    propagate_into(E, R, sys, split.c_points[j], s);
  }
}

void coarse_residual(const SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys,
                     const CFSplitting& split, SpaceTimeState& Rc) {
  const int nc = split.n_coarse();
  assert(Rc.nt == nc && Rc.nx == sys.nx);
  StepScratch s(sys.nx);
  {
    auto dst = Rc.level(0);
    const auto r0 = R.level_span(0);
    const auto e0 = E.level_span(0);
    for (int i = 0; i < sys.nx; ++i) dst[i] = r0[i] - e0[i];
  }
  for (int j = 1; j < nc; ++j) {
    const int c = split.c_points[j];
    const auto prev = E.level_span(c - 1);
    s.src.assign(prev.begin(), prev.end());
    sys.apply_step(c - 1, s.src, s.out);
    auto dst = Rc.level(j);
    const auto rc = R.level_span(c);
    const auto ec = E.level_span(c);
    for (int i = 0; i < sys.nx; ++i) dst[i] = rc[i] - ec[i] + s.out[i];
  }
}

void forward_solve(const LevelSystem& sys, const SpaceTimeState& R, SpaceTimeState& E) {
  assert(E.nt == sys.n_points && R.nt == sys.n_points);
  StepScratch s(sys.nx);
  {
    auto dst = E.level(0);
    const auto rhs = R.level_span(0);
    for (int i = 0; i < sys.nx; ++i) dst[i] = rhs[i];
  }
  for (int n = 1; n < sys.n_points; ++n) propagate_into(E, R, sys, n, s);
}

void fine_residual(const SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys,
                   SpaceTimeState& out) {
  assert(out.nt == sys.n_points && out.nx == sys.nx);
  StepScratch s(sys.nx);
  {
    auto dst = out.level(0);
    const auto r0 = R.level_span(0);
    const auto e0 = E.level_span(0);
    for (int i = 0; i < sys.nx; ++i) dst[i] = r0[i] - e0[i];
  }
  for (int n = 1; n < sys.n_points; ++n) {
    const auto prev = E.level_span(n - 1);
    s.src.assign(prev.begin(), prev.end());
    sys.apply_step(n - 1, s.src, s.out);
    auto dst = out.level(n);
    const auto rn = R.level_span(n);
    const auto en = E.level_span(n);
    for (int i = 0; i < sys.nx; ++i) dst[i] = rn[i] - en[i] + s.out[i];
  }
}

namespace {

void cycle(std::size_t level, std::size_t depth, SpaceTimeState& E, const SpaceTimeState& R,
           const MgritHierarchy& h) {
  const LevelSystem& sys = h.levels[level];
  if (level + 1 == depth) {
    forward_solve(sys, R, E);
    return;
  }
  const CFSplitting& split = h.splits[level];

  const bool fcf = (level > 0) || h.fcf_finest;
  f_relax(E, R, sys, split);
  if (fcf) {
    c_relax(E, R, sys, split);
    f_relax(E, R, sys, split);
  }

  const int nc = split.n_coarse();
  SpaceTimeState Rc(nc, sys.nx);
  coarse_residual(E, R, sys, split, Rc);

  SpaceTimeState Z(nc, sys.nx);  // zero-initialized coarse iterate
  cycle(level + 1, depth, Z, Rc, h);

  for (int j = 0; j < nc; ++j) {
    auto dst = E.level(split.c_points[j]);
    const auto z = Z.level_span(j);
    for (int i = 0; i < sys.nx; ++i) dst[i] += z[i];
  }
  f_relax(E, R, sys, split);
}

}  // namespace

void vcycle_iteration(SpaceTimeState& E, const SpaceTimeState& R, const MgritHierarchy& h) {
  assert(!h.levels.empty());
  cycle(0, h.levels.size(), E, R, h);
}

void two_level_iteration(SpaceTimeState& E, const SpaceTimeState& R, const MgritHierarchy& h) {
  assert(h.levels.size() >= 2);
  cycle(0, 2, E, R, h);
}

}  // namespace pintcl
