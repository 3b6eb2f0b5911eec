#include "pintcl/linear_testbed.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "pintcl/mgrit.hpp"
#include "pintcl/outer_solver.hpp"
#include "pintcl/reconstruction.hpp"
#include "pintcl/semi_lagrangian.hpp"

namespace pintcl {

std::function<double(double, double)> alpha_preset(const std::string& name) {
  using std::numbers::pi;
  if (name == "const") {
    return [](double, double) { return 1.0; };
  }
  if (name == "cos2") {
    return [](double x, double) {
      const double c = std::cos(pi * x);
      return 0.5 * (1.0 + c * c);
    };
  }
  if (name == "sin2moving") {
    return [](double x, double t) {
      const double s = std::sin(pi * (x - t));
      return -s * s;
    };
  }
  if (name == "cosxcost") {
    return [](double x, double t) { return std::cos(2.0 * pi * x) * std::cos(2.0 * pi * t); };
  }
  throw std::invalid_argument("alpha_preset: unknown preset '" + name + "'");
}

double sin4_ic(double x) {
  const double s = std::sin(std::numbers::pi * x);
  return s * s * s * s;
}

CellField sin4_ic_averages(const Grid& g) {
  using std::numbers::pi;
  // Primitive of sin^4(pi x) = 3/8 - cos(2 pi x)/2 + cos(4 pi x)/8.
  auto primitive = [](double x) {
    return 3.0 * x / 8.0 - std::sin(2.0 * pi * x) / (4.0 * pi) +
           std::sin(4.0 * pi * x) / (32.0 * pi);
  };
  CellField ub(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double a = Grid::x_left + i * g.h;
    const double b = a + g.h;
    ub[i] = (primitive(b) - primitive(a)) / g.h;
  }
  return ub;
}

namespace {

// Everything the fine stepper needs, with the coefficient frozen per step.
struct TestbedStepData {
  Grid g;
  TimeGrid tg;
  int k = 1;
  int p = 1;
  ReconstructionConfig rc;
  std::vector<CellField> a_if;   // [step][interface] coefficient at t_n + theta*dt
  std::vector<CellField> nu_if;  // [step][interface] dissipation at same time
};

TestbedStepData build_step_data(const LinearTestbedConfig& cfg,
                                const std::function<double(double, double)>& alpha) {
  if (cfg.k != 1 && cfg.k != 2) throw std::invalid_argument("linear testbed: k must be 1 or 2");
  TestbedStepData sd;
  sd.g = Grid(cfg.nx);
  const int steps = static_cast<int>(std::lround(cfg.t_final / (cfg.cfl * sd.g.h)));
  sd.tg = TimeGrid::from_final_time(steps + 1, cfg.t_final);
  sd.k = cfg.k;
  sd.p = 2 * cfg.k - 1;
  sd.rc.k = cfg.k;
  sd.rc.weights = ReconstructionConfig::Weights::optimal;
  sd.rc.clamp01 = false;

  sd.a_if.resize(steps);
  sd.nu_if.resize(steps);
  for (int n = 0; n < steps; ++n) {
    sd.a_if[n].resize(cfg.nx);
    sd.nu_if[n].resize(cfg.nx);
    const double te = sd.tg.t(n) + cfg.theta * sd.tg.dt;
    for (int i = 0; i < cfg.nx; ++i) {
      const double a = alpha(sd.g.interface(i), te);
      sd.a_if[n][i] = a;
      // Every preset has max |alpha| = 1, which is the global coefficient.
      sd.nu_if[n][i] = (cfg.diss == DissipationConfig::Type::glf) ? 1.0 : std::abs(a);
    }
  }
  return sd;
}

void testbed_spatial_op(const CellField& e, const TestbedStepData& sd, int step, CellField& out) {
  const int n = sd.g.nx;
  thread_local InterfaceValues ev;
  thread_local CellField fhat;
  weighted_reconstruct(e, sd.rc, ev);
  fhat.resize(n);
  const CellField& a = sd.a_if[step];
  const CellField& nu = sd.nu_if[step];
  for (int i = 0; i < n; ++i) {
    fhat[i] = linear_lf_flux(a[i], ev.minus[i], a[i], ev.plus[i], nu[i]);
  }
  out.resize(n);
  const double inv_h = 1.0 / sd.g.h;
  for (int i = 0; i < n; ++i) {
    out[i] = -(fhat[i] - fhat[wrap(i - 1, n)]) * inv_h;
  }
}

void testbed_step(const CellField& e, const TestbedStepData& sd, int step, CellField& out) {
  const int n = sd.g.nx;
  const double dt = sd.tg.dt;
  thread_local CellField L, u1, u2;
  testbed_spatial_op(e, sd, step, L);
  if (sd.k == 1) {
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = e[i] + dt * L[i];
    return;
  }
  u1.resize(n);
  for (int i = 0; i < n; ++i) u1[i] = e[i] + dt * L[i];
  testbed_spatial_op(u1, sd, step, L);
  u2.resize(n);
  for (int i = 0; i < n; ++i) u2[i] = 0.75 * e[i] + 0.25 * (u1[i] + dt * L[i]);
  testbed_spatial_op(u2, sd, step, L);
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = (e[i] + 2.0 * (u2[i] + dt * L[i])) / 3.0;
}

struct TestbedHierarchy {
  MgritHierarchy mg;
  std::vector<std::vector<CoarseStepData>> coarse_steps;
  std::vector<std::vector<CellField>> sigma;
};

void build_testbed_hierarchy(const TestbedStepData& sd,
                             const std::function<double(double, double)>& alpha,
                             const LinearTestbedConfig& cfg, TestbedHierarchy& out) {
  const Grid& g = sd.g;
  const int nt = sd.tg.nt, nx = g.nx, k = sd.k, p = sd.p;
  const double dt = sd.tg.dt;
  const double hp1 = std::pow(g.h, p + 1);

  // Per-fine-step closed-form ideal weights.
  std::vector<CellField> step_w(nt - 1);
  CellField apow(nx);
  for (int n = 0; n + 1 < nt; ++n) {
    for (int i = 0; i < nx; ++i) {
      const double a = sd.a_if[n][i];
      const double a2 = a * a;
      apow[i] = (k == 1) ? a2 : a2 * a2;  // alpha^{p+1}
    }
    step_w[n].assign(nx, 0.0);
    accumulate_ideal_weight_linear(sd.nu_if[n], apow, k, g, dt, step_w[n]);
  }

  std::vector<int> fine_of(nt);
  std::iota(fine_of.begin(), fine_of.end(), 0);

  std::vector<CellField> tau;
  std::vector<double> times;
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
      op.gmres_rel_tol = cfg.gmres_rel_tol;
      op.gmres_max_iters = cfg.gmres_max_iters;
      // Backward characteristic trace through the fine steps; each leg is
      // driven by the coefficient at the time level it leaves.
      times.clear();
      for (int f = fb; f > fa; --f) times.push_back(sd.tg.t(f));
      op.dep = coarse_departure_offsets_exact(alpha, times, g, dt);

      if (cfg.correction_enabled) {
        CellField& sig = sigma_level[j];
        sig.resize(nx);
        for (int i = 0; i < nx; ++i)
          sig[i] = t[i] + hp1 * g_poly(op.dep.eps[i], p, cfg.g_norm);
        op.M = correction_matrix_from_sigma(sig, p, g);
        op.solve = CorrectionSolve::gmres;
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

  out.mg.fcf_finest = true;
  out.mg.levels.push_back(LevelSystem{
      nt, nx,
      [&sd](int n, const CellField& in, CellField& o) { testbed_step(in, sd, n, o); }});
  for (auto& level_steps : out.coarse_steps) {
    auto* level_ops = &level_steps;
    out.mg.levels.push_back(
        LevelSystem{static_cast<int>(level_steps.size()) + 1, nx,
                    [level_ops](int j, const CellField& in, CellField& o) {
                      (*level_ops)[j].apply(in, o);
                    }});
  }
}

}  // namespace

SpaceTimeState linear_testbed_march(const LinearTestbedConfig& cfg) {
  const auto alpha = alpha_preset(cfg.preset);
  const TestbedStepData sd = build_step_data(cfg, alpha);
  SpaceTimeState E(sd.tg.nt, sd.g.nx);
  CellField e = sin4_ic_averages(sd.g), next;
  E.copy_level_in(0, e);
  for (int n = 0; n + 1 < sd.tg.nt; ++n) {
    testbed_step(e, sd, n, next);
    E.copy_level_in(n + 1, next);
    e.swap(next);
  }
  return E;
}

LinearTestbedResult run_linear_mgrit(const LinearTestbedConfig& cfg) {
  const auto alpha = alpha_preset(cfg.preset);
  const TestbedStepData sd = build_step_data(cfg, alpha);
  const int nt = sd.tg.nt, nx = sd.g.nx;

  TestbedHierarchy H;
  build_testbed_hierarchy(sd, alpha, cfg, H);

  LinearTestbedResult res;
  res.nt = nt;
  res.dt = sd.tg.dt;
  res.sigma = H.sigma;

  SpaceTimeState B(nt, nx);
  B.copy_level_in(0, sin4_ic_averages(sd.g));

  SpaceTimeState E(nt, nx);
  random_initial_guess(E, cfg.seed);

  SpaceTimeState resid(nt, nx);
  constexpr double kTinyDenom = 1e-300;
  for (int iter = 0;; ++iter) {
    fine_residual(E, B, H.mg.levels[0], resid);
    const double rn = space_time_norm(resid, NormKind::two);
    res.residual_norm.push_back(rn);
    const double rel = rn / std::max(res.residual_norm.front(), kTinyDenom);
    res.rel_residual.push_back(rel);
    res.iters = iter;
    if (!std::isfinite(rn) || rel > cfg.divergence_tol) {
      res.diverged = true;
      break;
    }
    if (rel <= cfg.tol) {
      res.converged = true;
      break;
    }
    if (iter >= cfg.max_iters) break;
    vcycle_iteration(E, B, H.mg);
  }
  res.E = std::move(E);
  return res;
}

}  // namespace pintcl
