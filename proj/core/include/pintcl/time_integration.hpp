#pragma once

#include "pintcl/flux.hpp"
#include "pintcl/flux_function.hpp"
#include "pintcl/grid.hpp"
#include "pintcl/reconstruction.hpp"

namespace pintcl {

// Everything needed to evaluate the semi-discrete operator L(u) and step it.
// k couples the spatial order (2k-1, via reconstruction) with the time
// integrator: k=1 -> forward Euler, k=2 -> three-stage SSP Runge-Kutta.
struct Discretization {
  Grid grid;
  FluxFunction flux;
  ReconstructionConfig recon;
  DissipationConfig diss;
  int k = 1;
};

// L(ubar)_i = -(fhat_{i+1/2} - fhat_{i-1/2})/h.
void spatial_operator(const CellField& ubar, const Discretization& d, CellField& out);

// One time step. For k=2 the two intermediate stage states can be captured
// (they are the linearization points of the step's Jacobian).
void erk_step(const CellField& un, const Discretization& d, double dt, CellField& out,
              CellField* stage1 = nullptr, CellField* stage2 = nullptr);

// Sequential march over the whole time grid; throws on NaN or blow-up.
SpaceTimeState time_march(const CellField& u0bar, const Discretization& d, const TimeGrid& tg);

// Residual of the all-at-once system: r^0 = u0bar - U^0,
// r^{n+1} = Phi(U^n) - U^{n+1}.
void nonlinear_residual(const SpaceTimeState& U, const CellField& u0bar, const Discretization& d,
                        const TimeGrid& tg, SpaceTimeState& r);

}  // namespace pintcl
