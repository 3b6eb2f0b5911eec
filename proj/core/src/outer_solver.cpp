#include "pintcl/outer_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pintcl/semi_lagrangian.hpp"

namespace pintcl {

SolveHistory outer_solve(SpaceTimeState& U, const CellField& u0bar, const Discretization& d,
                         const TimeGrid& tg, const SolverConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  const int nt = tg.nt, nx = d.grid.nx;
  if (U.nt != nt || U.nx != nx) throw std::invalid_argument("outer_solve: iterate shape mismatch");
  if (static_cast<int>(u0bar.size()) != nx)
    throw std::invalid_argument("outer_solve: initial data shape mismatch");
  if (d.k == 2 && cfg.lin_mode == LinMode::exact_k1)
    throw std::invalid_argument("outer_solve: identity reconstruction Jacobian is only exact for k=1");
  if (cfg.m < 2) throw std::invalid_argument("outer_solve: coarsening factor must be at least 2");

  const CFSplitting split = CFSplitting::build(nt, cfg.m);
  const bool k2 = (d.k == 2);

  SpaceTimeState r(nt, nx), e(nt, nx);
  SpaceTimeState stage1, stage2;
  if (k2) {
    stage1 = SpaceTimeState(nt, nx);
    stage2 = SpaceTimeState(nt, nx);
  }

  CellField un(nx), step_out(nx), s1, s2;
  if (k2) {
    s1.resize(nx);
    s2.resize(nx);
  }

  // Nonlinear F-relaxation fused with the residual evaluation: re-propagating
  // across the fine points of each coarse interval makes the residual there
  // exactly zero, so only the C-point residuals survive. With relaxation
  // disabled the residual is evaluated everywhere instead (pure Newton when
  // the inner solve is direct and the Jacobian exact). The Runge-Kutta stage
  // states are captured along the way; they are the states the step's
  // Jacobian is frozen at.
  auto sweep = [&]() -> double {
    {
      double* r0 = r.level(0);
      const double* u0 = U.level(0);
      for (int i = 0; i < nx; ++i) r0[i] = u0bar[i] - u0[i];
    }
    for (int n = 0; n + 1 < nt; ++n) {
      U.copy_level_out(n, un);
      erk_step(un, d, tg.dt, step_out, k2 ? &s1 : nullptr, k2 ? &s2 : nullptr);
      if (k2) {
        stage1.copy_level_in(n, s1);
        stage2.copy_level_in(n, s2);
      }
      double* rn = r.level(n + 1);
      if (!cfg.relaxation_enabled || split.is_c_point(n + 1)) {
        const double* uu = U.level(n + 1);
        for (int i = 0; i < nx; ++i) rn[i] = step_out[i] - uu[i];
      } else {
        U.copy_level_in(n + 1, step_out);
        for (int i = 0; i < nx; ++i) rn[i] = 0.0;
      }
    }
    return space_time_norm(r, NormKind::two);
  };

  SolveHistory hist;
  constexpr double kTinyDenom = 1e-300;  // fixed points of the march have r0 = 0
  NonlinearHierarchy H;

  for (int iter = 0;; ++iter) {
    const double rnorm = sweep();
    hist.residual_norm.push_back(rnorm);
    const double rel = rnorm / std::max(hist.residual_norm.front(), kTinyDenom);
    hist.rel_residual.push_back(rel);
    hist.iters = iter;
    if (!std::isfinite(rnorm) || rel > cfg.divergence_tol) {
      hist.diverged = true;
      break;
    }
    if (rel <= cfg.tol) {
      hist.converged = true;
      break;
    }
    if (iter >= cfg.max_iters) break;

    LinearizedSystem lin(d, tg, cfg.lin_mode, U, k2 ? &stage1 : nullptr, k2 ? &stage2 : nullptr);
    switch (cfg.inner) {
      case InnerSolve::direct:
        solve_linearized_direct(lin, r, e);
        break;
      case InnerSolve::mgrit2:
        build_two_level(lin, cfg, H);
        e.data = r.data;  // warm start from the residual
        two_level_iteration(e, r, H.mg);
        break;
      case InnerSolve::mgritV:
        build_multilevel(lin, cfg, H);
        e.data = r.data;
        vcycle_iteration(e, r, H.mg);
        break;
    }
    for (std::size_t idx = 0; idx < U.data.size(); ++idx) U.data[idx] += e.data[idx];
    if (cfg.iterate_hook) cfg.iterate_hook(iter + 1, U);
  }

  hist.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return hist;
}

void build_two_level(const LinearizedSystem& lin, const SolverConfig& cfg,
                     NonlinearHierarchy& out) {
  const Discretization& d = lin.disc();
  const Grid& g = d.grid;
  const int nt = lin.nt(), nx = lin.nx(), k = d.k;
  const int p = 2 * k - 1;
  const double dt = lin.dt();

  out.mg.levels.clear();
  out.mg.splits.clear();
  out.mg.fcf_finest = false;
  out.coarse_steps.clear();
  out.sigma.clear();

  const CFSplitting split = CFSplitting::build(nt, cfg.m);
  const int nc = split.n_coarse();

  std::vector<CoarseStepData> ops;
  ops.reserve(nc - 1);
  std::vector<LinearizationPoint> pts;
  std::vector<const LinearizationPoint*> ptrs;
  for (int j = 0; j + 1 < nc; ++j) {
    const int a = split.c_points[j];
    const int b = split.c_points[j + 1];
    const int steps = b - a;
    pts.clear();
    pts.reserve(steps + 1);
    for (int lev = a; lev <= b; ++lev) pts.push_back(lin.level_point(lev));

    CoarseStepData op;
    op.p = p;
    op.grid = &g;
    // Characteristic feet: retrace the interval's fine steps backwards, each
    // leg driven by the wave speeds of the level it leaves (b down to a+1).
    ptrs.assign(steps, nullptr);
    for (int s = 0; s < steps; ++s) ptrs[s] = &pts[steps - s];
    op.dep = coarse_departure_offsets(ptrs, g, dt);

    if (cfg.correction_enabled) {
      PeriodicBandMatrix t_dir = assemble_T_direct(op.dep, p, g, cfg.g_norm);
      PeriodicBandMatrix t_id;
      if (k == 1) {
        for (int s = 0; s < steps; ++s) ptrs[s] = &pts[s];  // states steps start from
        t_id = assemble_T_ideal_k1(ptrs, g, dt);
      } else {
        for (int s = 0; s < steps; ++s) ptrs[s] = &pts[s + 1];  // states steps arrive at
        t_id = assemble_T_ideal_k2(ptrs, g, dt, cfg.s_rk, cfg.s_fv);
      }
      op.M = correction_matrix(t_id, t_dir);
      op.solve = CorrectionSolve::lu;
    } else {
      op.solve = CorrectionSolve::none;
    }
    op.finalize();
    ops.push_back(std::move(op));
  }
  out.coarse_steps.push_back(std::move(ops));

  out.mg.levels.push_back(LevelSystem{
      nt, nx, [&lin](int n, const CellField& in, CellField& o) { lin.apply_step(n, in, o); }});
  out.mg.splits.push_back(split);
  auto* level_ops = &out.coarse_steps[0];
  out.mg.levels.push_back(LevelSystem{nc, nx, [level_ops](int j, const CellField& in,
                                                          CellField& o) {
    (*level_ops)[j].apply(in, o);
  }});
}

void build_multilevel(const LinearizedSystem& lin, const SolverConfig& cfg,
                      NonlinearHierarchy& out) {
  const Discretization& d = lin.disc();
  if (d.k != 1)
    throw std::invalid_argument(
        "build_multilevel: the accumulated-weight recursion requires the first-order "
        "discretization");
  const Grid& g = d.grid;
  const int nt = lin.nt(), nx = lin.nx();
  const int p = 1;
  const double dt = lin.dt();
  const double hp1 = g.h * g.h;  // h^{p+1}

  out.mg.levels.clear();
  out.mg.splits.clear();
  out.mg.fcf_finest = false;
  out.coarse_steps.clear();
  out.sigma.clear();

  // Departure walks on every level retrace the underlying fine steps, so keep
  // the fine wave speeds; the per-step ideal weights seed the accumulation.
  std::vector<CellField> alpha(nt);
  std::vector<CellField> step_w(nt > 1 ? nt - 1 : 0);
  for (int n = 0; n < nt; ++n) {
    LinearizationPoint pt = lin.level_point(n);
    if (n + 1 < nt) {
      step_w[n].assign(nx, 0.0);
      accumulate_ideal_step_weight_k1(pt, g, dt, step_w[n]);
    }
    alpha[n] = std::move(pt.alpha_half);
  }

  std::vector<int> fine_of(nt);
  std::iota(fine_of.begin(), fine_of.end(), 0);

  std::vector<CellField> tau;  // current coarse level's per-interval weights
  std::vector<const CellField*> alpha_ptrs;
  int n_points = nt;
  bool from_fine = true;
  while (n_points - 1 > cfg.m) {
    const CFSplitting split = CFSplitting::build(n_points, cfg.m);
    const int nc = split.n_coarse();
    std::vector<int> fine_next(nc);
    for (int j = 0; j < nc; ++j) fine_next[j] = fine_of[split.c_points[j]];

    std::vector<CoarseStepData> ops;
    ops.reserve(nc - 1);
    std::vector<CellField> tau_next(nc - 1);
    std::vector<CellField> sigma_level(nc - 1);
    for (int j = 0; j + 1 < nc; ++j) {
      const int fa = fine_next[j];
      const int fb = fine_next[j + 1];

      // Each interval's ideal weight is the sum of its children's weights.
      CellField& t = tau_next[j];
      t.assign(nx, 0.0);
      if (from_fine) {
        for (int f = fa; f < fb; ++f)
          for (int i = 0; i < nx; ++i) t[i] += step_w[f][i];
      } else {
        for (int c = split.c_points[j]; c < split.c_points[j + 1]; ++c)
          for (int i = 0; i < nx; ++i) t[i] += tau[c][i];
      }

      CoarseStepData op;
      op.p = p;
      op.grid = &g;
      alpha_ptrs.clear();
      for (int f = fb; f > fa; --f) alpha_ptrs.push_back(&alpha[f]);
      op.dep = coarse_departure_offsets_fields(alpha_ptrs, g, dt);

      if (cfg.correction_enabled) {
        CellField& sig = sigma_level[j];
        sig.resize(nx);
        for (int i = 0; i < nx; ++i)
          sig[i] = t[i] + hp1 * g_poly(op.dep.eps[i], p, cfg.g_norm);
        op.M = correction_matrix_from_sigma(sig, p, g);
        op.solve = CorrectionSolve::lu;
      } else {
        op.solve = CorrectionSolve::none;
      }
      op.finalize();
      ops.push_back(std::move(op));
    }

    out.coarse_steps.push_back(std::move(ops));
    out.sigma.push_back(std::move(sigma_level));
    out.mg.splits.push_back(split);
    tau = std::move(tau_next);
    fine_of = std::move(fine_next);
    n_points = nc;
    from_fine = false;
  }

  out.mg.levels.push_back(LevelSystem{
      nt, nx, [&lin](int n, const CellField& in, CellField& o) { lin.apply_step(n, in, o); }});
  for (auto& level_steps : out.coarse_steps) {
    auto* level_ops = &level_steps;
    out.mg.levels.push_back(
        LevelSystem{static_cast<int>(level_steps.size()) + 1, nx,
                    [level_ops](int j, const CellField& in, CellField& o) {
                      (*level_ops)[j].apply(in, o);
                    }});
  }
}

void random_initial_guess(SpaceTimeState& U, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (double& v : U.data) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int cascade_nt(int nt_fine) {
  // ceil((nt-1)/2) + 1 steps-halving; integer identity: ceil((nt-1)/2) == nt/2.
  return nt_fine / 2 + 1;
}

SpaceTimeState prolong_iterate(const SpaceTimeState& coarse, int nt_fine) {
  const int nxc = coarse.nx;
  const int nxf = 2 * nxc;
  const int ntc = coarse.nt;

  // Mass-preserving dyadic interpolation in space, level by level.
  SpaceTimeState wide(ntc, nxf);
  for (int n = 0; n < ntc; ++n) {
    const double* c = coarse.level(n);
    double* f = wide.level(n);
    for (int i = 0; i < nxc; ++i) {
      f[2 * i] = 0.75 * c[i] + 0.25 * c[wrap(i - 1, nxc)];
      f[2 * i + 1] = 0.75 * c[i] + 0.25 * c[wrap(i + 1, nxc)];
    }
  }
  if (nt_fine == ntc) return wide;

  // Linear interpolation in time between the rungs' shared endpoints.
  SpaceTimeState fine(nt_fine, nxf);
  for (int j = 0; j < nt_fine; ++j) {
    const double s = static_cast<double>(j) * (ntc - 1) / (nt_fine - 1);
    const int i0 = std::min(static_cast<int>(s), ntc - 2);
    const double th = s - i0;
    const double* a = wide.level(i0);
    const double* b = wide.level(i0 + 1);
    double* f = fine.level(j);
    for (int i = 0; i < nxf; ++i) f[i] = (1.0 - th) * a[i] + th * b[i];
  }
  return fine;
}

NestedResult nested_solve(const std::function<Discretization(int)>& make_disc,
                          const std::function<CellField(const Grid&)>& ic_averages, int nx_target,
                          int nt_target, double t_final, const SolverConfig& cfg,
                          int coarsest_nx) {
  if (nx_target < coarsest_nx)
    throw std::invalid_argument("nested_solve: target mesh coarser than the ladder base");

  std::vector<std::pair<int, int>> rungs;  // (nx, nt), built finest-first
  int nx = nx_target, nt = nt_target;
  rungs.emplace_back(nx, nt);
  while (nx > coarsest_nx) {
    if (nx % 2 != 0)
      throw std::invalid_argument("nested_solve: nx must halve down to the ladder base");
    nx /= 2;
    nt = cascade_nt(nt);
    rungs.emplace_back(nx, nt);
  }
  std::reverse(rungs.begin(), rungs.end());

  NestedResult res;
  SpaceTimeState U;
  for (std::size_t l = 0; l < rungs.size(); ++l) {
    const auto [rnx, rnt] = rungs[l];
    const Discretization dl = make_disc(rnx);
    const TimeGrid tg = TimeGrid::from_final_time(rnt, t_final);
    const CellField u0 = ic_averages(dl.grid);

    NestedLevel lev;
    lev.nx = rnx;
    lev.nt = rnt;
    if (l == 0) {
      U = time_march(u0, dl, tg);
    } else {
      U = prolong_iterate(U, rnt);
      SolverConfig rung_cfg = cfg;
      if (l + 1 < rungs.size()) rung_cfg.iterate_hook = nullptr;
      lev.history = outer_solve(U, u0, dl, tg, rung_cfg);
    }
    res.ladder.push_back(std::move(lev));
  }
  res.U = std::move(U);
  return res;
}

}  // namespace pintcl
