#pragma once

#include <span>

#include "pintcl/grid.hpp"
#include "pintcl/linearization.hpp"

namespace pintcl {

// Departure data for the characteristics arriving at each interface after one
// coarse step. For arrival interface x_{i+1/2} the foot of the characteristic
// is xi_i = x_{i+1/2} - delta_i * h. Splitting delta into whole cells and a
// remainder gives the east-neighbor interface x-tilde = x_{i+1/2} - shift_i*h
// (shift = floor(delta), signed) and the normalized offset
// eps_i = delta_i - shift_i in [0,1), so xi = x-tilde - h*eps.
struct DepartureData {
  std::vector<double> delta;
  std::vector<int> shift;
  std::vector<double> eps;

  void resize(int nx) {
    delta.assign(nx, 0.0);
    shift.assign(nx, 0);
    eps.assign(nx, 0.0);
  }
  static DepartureData from_delta(const std::vector<double>& delta);
};

// Linear interpolation of per-interface wave speeds at an arbitrary position.
double interface_wave_speed_at(const CellField& alpha_half, const Grid& g, double x);

// One backward-Euler leg of the characteristic trace: x - dt * alpha(x), with
// alpha taken from the linearization point of the time level being left.
double fine_departure_step(double x, const LinearizationPoint& pt, const Grid& g, double dt);

// Compose the fine-level traces across a whole coarse interval. pts_leaving
// lists the linearization points of the levels being left, ordered from the
// latest (first leg of the backward walk) to the earliest.
DepartureData coarse_departure_offsets(std::span<const LinearizationPoint* const> pts_leaving,
                                       const Grid& g, double dt);

// Same walk given just the per-interface wave-speed fields, latest first.
DepartureData coarse_departure_offsets_fields(std::span<const CellField* const> alpha_leaving,
                                              const Grid& g, double dt);

// Same walk with a closed-form wave speed alpha(x, t); times_leaving gives the
// time argument for each leg, latest first.
DepartureData coarse_departure_offsets_exact(const std::function<double(double, double)>& alpha,
                                             std::span<const double> times_leaving, const Grid& g,
                                             double dt);

// Conservative semi-Lagrangian update of cell averages over one coarse step:
// out_i = e_i - (ftil_{i+1/2} - ftil_{i-1/2})/h, where ftil integrates a
// cell-average-preserving reconstruction of degree p-1 from the departure
// point to the arrival interface (whole cells summed exactly, the fractional
// piece via the primitive-interpolant closed form). p in {1, 3}.
void sl_step(const CellField& ebar, const DepartureData& dep, int p, const Grid& g,
             CellField& out);

}  // namespace pintcl
