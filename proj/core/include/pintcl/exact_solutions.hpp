#pragma once

#include "pintcl/grid.hpp"

namespace pintcl {

// Entropy solution of u_t + (u^2/2)_x = 0 on the periodic domain with square
// initial data (1 on (-1/2, 0), 0 elsewhere). Valid for 0 <= t <= 4: the fan
// absorbs the shock at t = 1, the shock leaves the right boundary at t = 2.25
// and re-enters on the left, and at t = 4 it reaches the next fan's head.
double burgers_square_exact(double x, double t);

// Exact cell averages of the above. The profile is piecewise linear in x, so
// midpoint sampling on breakpoint-split subintervals integrates it exactly.
CellField burgers_square_exact_averages(const Grid& g, double t);

// Exact cell averages of the square initial condition (overlap fractions).
CellField square_ic_averages(const Grid& g);

// Smooth initial profile with range inside [0, 1], and its exact averages.
double smooth_ic(double x);
CellField smooth_ic_averages(const Grid& g);

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

// Mesh-weighted error norms of approx - exact over the cells.
ErrorNorms error_norms(const CellField& approx, const CellField& exact, const Grid& g);

}  // namespace pintcl
