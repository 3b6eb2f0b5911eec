#include "pintcl/linearization.hpp"

#include <cassert>

namespace pintcl {

LinearizationPoint build_linearization_point(const CellField& state, const Discretization& d) {
  LinearizationPoint pt;
  pt.ubar = state;
  weighted_reconstruct(state, d.recon, pt.uv, &pt.weights);
  dissipation_coefficients(pt.uv, d.flux, d.diss, pt.nu_half);
  const int n = d.grid.nx;
  pt.dfm.resize(n);
  pt.dfp.resize(n);
  pt.alpha_half.resize(n);
  for (int i = 0; i < n; ++i) {
    pt.dfm[i] = d.flux.df(pt.uv.minus[i]);
    pt.dfp[i] = d.flux.df(pt.uv.plus[i]);
    pt.alpha_half[i] = 0.5 * (pt.dfm[i] + pt.dfp[i]);
  }
  return pt;
}

void linearized_reconstruct(const CellField& e, const LinearizationPoint& pt,
                            const Discretization& d, LinMode mode, InterfaceValues& ev) {
  const int n = d.grid.nx;
  if (mode == LinMode::exact_k1 || d.recon.k == 1) {
    // k=1 reconstruction is the identity; its Jacobian is exact in any mode.
    ev.resize(n);
    for (int i = 0; i < n; ++i) {
      ev.minus[i] = e[i];
      ev.plus[i] = e[wrap(i + 1, n)];
    }
    return;
  }
  if (mode == LinMode::picard) {
    // Frozen weights define a linear map; clamping is not re-applied to the
    // perturbation (it is part of the weight/state freeze, not of the map).
    apply_weights(e, pt.weights, d.recon.k, /*clamp01=*/false, ev);
    return;
  }
  // newton_fd: directional difference of the full reconstruction map,
  // including the weight dependence on the state (and clamping if active).
  thread_local CellField perturbed;
  thread_local InterfaceValues uv_pert;
  perturbed.resize(n);
  for (int i = 0; i < n; ++i) perturbed[i] = pt.ubar[i] + kNewtonFdMu * e[i];
  weighted_reconstruct(perturbed, d.recon, uv_pert);
  ev.resize(n);
  const double inv_mu = 1.0 / kNewtonFdMu;
  for (int i = 0; i < n; ++i) {
    ev.minus[i] = (uv_pert.minus[i] - pt.uv.minus[i]) * inv_mu;
    ev.plus[i] = (uv_pert.plus[i] - pt.uv.plus[i]) * inv_mu;
  }
}

void linearized_spatial_op(const CellField& e, const LinearizationPoint& pt,
                           const Discretization& d, LinMode mode, CellField& out) {
  const int n = d.grid.nx;
  thread_local InterfaceValues ev;
  thread_local CellField fhat;
  linearized_reconstruct(e, pt, d, mode, ev);
  fhat.resize(n);
  for (int i = 0; i < n; ++i) {
    fhat[i] = linear_lf_flux(pt.dfm[i], ev.minus[i], pt.dfp[i], ev.plus[i], pt.nu_half[i]);
  }
  out.resize(n);
  const double inv_h = 1.0 / d.grid.h;
  for (int i = 0; i < n; ++i) {
    out[i] = -(fhat[i] - fhat[wrap(i - 1, n)]) * inv_h;
  }
}

void linearized_step(const CellField& e, const std::array<const LinearizationPoint*, 3>& pts,
                     const Discretization& d, double dt, LinMode mode, CellField& out) {
  const int n = d.grid.nx;
  thread_local CellField L, e1, e2;
  linearized_spatial_op(e, *pts[0], d, mode, L);
  if (d.k == 1) {
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = e[i] + dt * L[i];
    return;
  }
  // Stage-wise derivative of the SSP-RK3 step: each stage applies the spatial
  // Jacobian frozen at the corresponding stage state of the nonlinear step.
  e1.resize(n);
  for (int i = 0; i < n; ++i) e1[i] = e[i] + dt * L[i];
  linearized_spatial_op(e1, *pts[1], d, mode, L);
  e2.resize(n);
  for (int i = 0; i < n; ++i) e2[i] = 0.75 * e[i] + 0.25 * (e1[i] + dt * L[i]);
  linearized_spatial_op(e2, *pts[2], d, mode, L);
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = (e[i] + 2.0 * (e2[i] + dt * L[i])) / 3.0;
}

void LinearizedSystem::apply_step(int n, const CellField& e, CellField& out) const {
  thread_local CellField tmp;
  if (d_->k == 1) {
    LinearizationPoint p0 = level_point(n);
    linearized_step(e, {&p0, nullptr, nullptr}, *d_, tg_.dt, mode_, out);
    return;
  }
  assert(stage1_ && stage2_);
  base_->copy_level_out(n, tmp);
  LinearizationPoint p0 = build_linearization_point(tmp, *d_);
  stage1_->copy_level_out(n, tmp);
  LinearizationPoint p1 = build_linearization_point(tmp, *d_);
  stage2_->copy_level_out(n, tmp);
  LinearizationPoint p2 = build_linearization_point(tmp, *d_);
  linearized_step(e, {&p0, &p1, &p2}, *d_, tg_.dt, mode_, out);
}

LinearizationPoint LinearizedSystem::level_point(int level) const {
  thread_local CellField tmp;
  base_->copy_level_out(level, tmp);
  return build_linearization_point(tmp, *d_);
}

void solve_linearized_direct(const LinearizedSystem& sys, const SpaceTimeState& r,
                             SpaceTimeState& e) {
  const int nt = sys.nt(), nx = sys.nx();
  e = SpaceTimeState(nt, nx);
  CellField cur(nx), out;
  for (int i = 0; i < nx; ++i) cur[i] = r.level(0)[i];
  e.copy_level_in(0, cur);
  for (int n = 0; n < nt - 1; ++n) {
    sys.apply_step(n, cur, out);
    const double* rl = r.level(n + 1);
    for (int i = 0; i < nx; ++i) out[i] += rl[i];
    e.copy_level_in(n + 1, out);
    cur.swap(out);
  }
}

}  // namespace pintcl
