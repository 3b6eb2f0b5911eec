#pragma once

#include <array>

#include "pintcl/time_integration.hpp"

namespace pintcl {

// How the reconstruction operator is linearized about a frozen state:
//  - exact_k1: k=1 reconstruction is the identity map; its Jacobian is exact.
//  - newton_fd: directional finite difference of the full (weighted, possibly
//    clamped) reconstruction map, [R(u + mu*e) - R(u)]/mu with fixed mu.
//  - picard: frozen nonlinear weights applied to the perturbation.
// In every mode the dissipation coefficient is frozen at the state (for the
// global variant it is a constant, so freezing it is exact).
enum class LinMode { exact_k1, newton_fd, picard };

inline constexpr double kNewtonFdMu = 0.1;

// Data frozen at one state: reconstructions, weights, interface wave speeds
// f'(u-)/f'(u+), their average (used for characteristic tracing), and the
// dissipation coefficients.
struct LinearizationPoint {
  CellField ubar;
  InterfaceValues uv;
  WenoWeights weights;
  CellField dfm, dfp;     // f' at the two one-sided reconstructions
  CellField alpha_half;   // (dfm + dfp)/2 per interface
  CellField nu_half;      // frozen dissipation per interface
};

LinearizationPoint build_linearization_point(const CellField& state, const Discretization& d);

// Directional derivative of the reconstruction at the point, per mode.
void linearized_reconstruct(const CellField& e, const LinearizationPoint& pt,
                            const Discretization& d, LinMode mode, InterfaceValues& ev);

// Directional derivative of the spatial operator L at the point.
void linearized_spatial_op(const CellField& e, const LinearizationPoint& pt,
                           const Discretization& d, LinMode mode, CellField& out);

// Directional derivative of one time step. k=1 needs the point at the step's
// start; k=2 needs the points at the start state and the two Runge-Kutta
// stage states (pts[1], pts[2]), mirroring the stage structure of the step.
void linearized_step(const CellField& e, const std::array<const LinearizationPoint*, 3>& pts,
                     const Discretization& d, double dt, LinMode mode, CellField& out);

// The block lower-bidiagonal linearized all-at-once system, frozen at a
// space-time iterate. Owns nothing heavy: stage states are borrowed caches
// filled by the caller during the preceding nonlinear sweep; per-step
// linearization points are rebuilt transiently on each application.
class LinearizedSystem {
 public:
  LinearizedSystem(const Discretization& d, const TimeGrid& tg, LinMode mode,
                   const SpaceTimeState& base, const SpaceTimeState* stage1 = nullptr,
                   const SpaceTimeState* stage2 = nullptr)
      : d_(&d), tg_(tg), mode_(mode), base_(&base), stage1_(stage1), stage2_(stage2) {}

  int nt() const { return tg_.nt; }
  int nx() const { return d_->grid.nx; }
  double dt() const { return tg_.dt; }
  LinMode mode() const { return mode_; }
  const Discretization& disc() const { return *d_; }
  const SpaceTimeState& base() const { return *base_; }

  // Applies the linearized step operator taking level n to level n+1.
  void apply_step(int n, const CellField& e, CellField& out) const;

  // Linearization point frozen at the state of time level `level`.
  LinearizationPoint level_point(int level) const;

 private:
  const Discretization* d_;
  TimeGrid tg_;
  LinMode mode_;
  const SpaceTimeState* base_;
  const SpaceTimeState* stage1_;  // k=2: level n holds stage 1 of step n
  const SpaceTimeState* stage2_;
};

// Exact solve of the linearized system by forward substitution:
// e^0 = r^0, e^{n+1} = Phi_lin(e^n) + r^{n+1}.
void solve_linearized_direct(const LinearizedSystem& sys, const SpaceTimeState& r,
                             SpaceTimeState& e);

}  // namespace pintcl
