#include "pintcl/time_integration.hpp"

#include <cmath>
#include <stdexcept>

namespace pintcl {

void spatial_operator(const CellField& ubar, const Discretization& d, CellField& out) {
  const int n = d.grid.nx;
  thread_local InterfaceValues uv;
  thread_local CellField nu, fhat;
  weighted_reconstruct(ubar, d.recon, uv);
  dissipation_coefficients(uv, d.flux, d.diss, nu);
  lf_flux(uv, d.flux, nu, fhat);
  out.resize(n);
  const double inv_h = 1.0 / d.grid.h;
  for (int i = 0; i < n; ++i) {
    out[i] = -(fhat[i] - fhat[wrap(i - 1, n)]) * inv_h;
  }
}

void erk_step(const CellField& un, const Discretization& d, double dt, CellField& out,
              CellField* stage1, CellField* stage2) {
  const int n = d.grid.nx;
  thread_local CellField L, s1, s2;
  spatial_operator(un, d, L);
  if (d.k == 1) {
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = un[i] + dt * L[i];
    return;
  }
  // SSP-RK3: u1 = u + dt L(u); u2 = 3/4 u + 1/4 (u1 + dt L(u1));
  //          u_next = 1/3 u + 2/3 (u2 + dt L(u2)).
  s1.resize(n);
  for (int i = 0; i < n; ++i) s1[i] = un[i] + dt * L[i];
  spatial_operator(s1, d, L);
  s2.resize(n);
  for (int i = 0; i < n; ++i) s2[i] = 0.75 * un[i] + 0.25 * (s1[i] + dt * L[i]);
  spatial_operator(s2, d, L);
  out.resize(n);
  for (int i = 0; i < n; ++i) out[i] = (un[i] + 2.0 * (s2[i] + dt * L[i])) / 3.0;
  if (stage1) *stage1 = s1;
  if (stage2) *stage2 = s2;
}

namespace {

void check_bounded(const double* v, int n, int level) {
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(v[i]) || std::abs(v[i]) > 1e10) {
      throw std::runtime_error("time march blew up at time level " + std::to_string(level));
    }
  }
}

}  // namespace

SpaceTimeState time_march(const CellField& u0bar, const Discretization& d, const TimeGrid& tg) {
  SpaceTimeState U(tg.nt, d.grid.nx);
  U.copy_level_in(0, u0bar);
  CellField cur = u0bar, next;
  for (int n = 0; n < tg.nt - 1; ++n) {
    erk_step(cur, d, tg.dt, next);
    check_bounded(next.data(), d.grid.nx, n + 1);
    U.copy_level_in(n + 1, next);
    cur.swap(next);
  }
  return U;
}

void nonlinear_residual(const SpaceTimeState& U, const CellField& u0bar, const Discretization& d,
                        const TimeGrid& tg, SpaceTimeState& r) {
  const int n = d.grid.nx;
  r = SpaceTimeState(tg.nt, n);
  for (int i = 0; i < n; ++i) r.level(0)[i] = u0bar[i] - U.level(0)[i];
  CellField cur(n), out;
  for (int lev = 0; lev < tg.nt - 1; ++lev) {
    U.copy_level_out(lev, cur);
    erk_step(cur, d, tg.dt, out);
    const double* unext = U.level(lev + 1);
    double* rl = r.level(lev + 1);
    for (int i = 0; i < n; ++i) rl[i] = out[i] - unext[i];
  }
}

}  // namespace pintcl
