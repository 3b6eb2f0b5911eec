#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pintcl {

// Scalar flux f(u) with its derivative (the wave speed) and the interior
// critical points of f' (roots of f''), needed to maximize |f'| over an
// interval when choosing Lax-Friedrichs dissipation coefficients.
struct FluxFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::vector<double> df_critical_points;  // roots of f'' inside the state range
};

// f(u) = u^2/2, f'(u) = u. Convex, so f' has no interior critical points.
FluxFunction burgers_flux();

// f(u) = 4u^2 / (4u^2 + (1-u)^2), the classic two-phase fractional-flow
// function. Non-convex on [0,1]: f' rises from 0 to a single interior maximum
// and falls back to 0, so |f'| maximization must look inside the interval.
FluxFunction buckley_leverett_flux();

// max |f'| over [umin, umax]: endpoints plus any critical points of f' inside.
double max_abs_wave_speed(const FluxFunction& fl, double umin, double umax);

// One-time consistency check of the hand-simplified derivative against a
// quotient-rule evaluation of the original rational form; throws on mismatch.
// Cheap (100 sample points); called lazily before first use.
void run_flux_function_self_check();

}  // namespace pintcl
