#pragma once

#include <optional>
#include <span>

#include "pintcl/periodic_band.hpp"
#include "pintcl/semi_lagrangian.hpp"

namespace pintcl {

// Normalization of the degree-(p+1) departure polynomial g_{p+1}. The
// factorial form 1/(p+1)! matches an interpolation-remainder derivation; the
// 1/(p+1) form is a milder scaling exposed for experimentation. They agree
// for p=1.
enum class GNorm { factorial, linear };

// g_{p+1}(z) = norm * prod_{j=-k}^{k-1} (z + j), with p = 2k-1. Vanishes at
// z = 0 and z = 1, so integer-offset departures need no correction.
double g_poly(double eps, int p, GNorm norm = GNorm::factorial);

// First-difference stencils used by the truncation operators, acting on
// interface slots (slot i <-> x_{i+1/2}):
//   D1   y_i = (y_i - y_{i-1})/h          (backward difference)
//   D1^T y_i = (y_i - y_{i+1})/h
//   D2^0 y_i = (y_i - 2y_{i+1} + y_{i+2})/h^2     (~ d^2 at x_{i+1})
//   D2^1 y_i = (y_{i-1} - 2y_i + y_{i+1})/h^2     (~ d^2 at x_i)
//   D3^T y_i = (y_{i-1} - 3y_i + 3y_{i+1} - y_{i+2})/h^3
enum class StencilKind { d1t, d20, d21, d3t };

// A = D1 * diag(w) * B for stencil B; the workhorse for every truncation
// operator here (row i = (w_i * B_i - w_{i-1} * B_{i-1}) / h).
PeriodicBandMatrix compose_d1_diag(const CellField& w, StencilKind b, const Grid& g);

// Truncation-error operator of the semi-Lagrangian step:
// T_direct = -h^{p+1} * D1 * diag(g_{p+1}(eps)) * D_p^T, p in {1, 3}.
PeriodicBandMatrix assemble_T_direct(const DepartureData& dep, int p, const Grid& g,
                                     GNorm norm = GNorm::factorial);

// Truncation-error operator of the ideal (m fine steps) propagator.
//
// k=1 (forward Euler): T = D1 diag(sum_j beta^{n+j}) D1^T with
//   beta_i = -(dt*alpha_i)^2/2 + h*dt*nu_i/2, data frozen at each step's
//   starting level.
PeriodicBandMatrix assemble_T_ideal_k1(std::span<const LinearizationPoint* const> pts_from,
                                       const Grid& g, double dt);

// Adds one step's contribution to the first-order ideal weight field:
// w_i += -(dt*alpha_i)^2/2 + h*dt*nu_i/2 (data frozen at the step's start).
void accumulate_ideal_step_weight_k1(const LinearizationPoint& pt, const Grid& g, double dt,
                                     CellField& w);

// k=2 (SSP-RK3 + weighted reconstruction):
// T = D1 [ diag(sum_j beta0^{n+j}) D2^0 - diag(sum_j beta1^{n+j}) D2^1 ],
//   beta*_i = 3/4 [ s_rk (dt*alpha_i)^4/(24h) + s_fv h^2 dt nu_i/12 ] gamma*_i,
//   gamma0_i = 2*wt0_{i+1} + w0_i, gamma1_i = wt1_{i+1} + 2*w1_i,
// data frozen at each step's arriving level.
PeriodicBandMatrix assemble_T_ideal_k2(std::span<const LinearizationPoint* const> pts_to,
                                       const Grid& g, double dt, double s_rk, double s_fv);

// Closed-form variant for known-wave-speed problems (order p = q = 2k-1):
// T = D1 [ h^p dt c_k diag(sum nu) + (-dt)^{q+1} e_rk diag(sum alpha^{q+1}) ] D_p^T
// with c_k = (-1)^{k+1} k!(k-1)!/(2k)! and e_rk = -1/2 (k=1), -1/24 (k=2).
// With optimal reconstruction weights and unit tuning factors the k=2
// stencil assembly above collapses to exactly this operator.
PeriodicBandMatrix assemble_T_ideal_linear(const CellField& sum_nu,
                                           const CellField& sum_alpha_pow, int k, const Grid& g,
                                           double dt);

// Adds the closed-form linear ideal weight for data (nu_i, alpha_i^{p+1}):
// w_i += h^p dt c_k nu_i + (-dt)^{p+1} e_rk alpha_pow_i. Pass per-step data to
// accumulate over an interval, or pre-summed data for the whole interval.
void accumulate_ideal_weight_linear(const CellField& nu, const CellField& alpha_pow, int k,
                                    const Grid& g, double dt, CellField& w);

// M = I + T_ideal - T_direct, the implicit correction factor of the coarse
// operator Psi = M^{-1} S.
PeriodicBandMatrix correction_matrix(const PeriodicBandMatrix& t_ideal,
                                     const PeriodicBandMatrix& t_direct);

// M = I + D1 diag(sigma) D_p^T: the form used on recursively coarsened
// levels, where sigma accumulates the per-level corrections.
PeriodicBandMatrix correction_matrix_from_sigma(const CellField& sigma, int p, const Grid& g);

// How the correction system M z = S e is solved per coarse step.
enum class CorrectionSolve { lu, gmres, none };

// One coarse time step: semi-Lagrangian transport followed by the implicit
// truncation-error correction.
struct CoarseStepData {
  DepartureData dep;
  int p = 1;
  const Grid* grid = nullptr;
  CorrectionSolve solve = CorrectionSolve::lu;
  PeriodicBandMatrix M;                 // kept for matrix-free GMRES applies
  std::optional<PeriodicBandLU> lu;
  double gmres_rel_tol = 0.01;
  int gmres_max_iters = 10;

  void finalize();  // factor or validate per `solve`
  void apply(const CellField& in, CellField& out) const;
};

}  // namespace pintcl
