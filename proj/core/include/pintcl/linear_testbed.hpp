#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pintcl/coarse_correction.hpp"
#include "pintcl/flux.hpp"
#include "pintcl/grid.hpp"

namespace pintcl {

// Variable-coefficient advection testbed: e_t + (alpha(x,t) e)_x = 0 on the
// periodic domain, discretized with the same finite-volume machinery as the
// nonlinear problems but with the coefficient frozen per step, so the fine
// step is exactly linear. The multilevel solver uses transport-plus-
// correction coarse operators with accumulated weights, FCF cycling on every
// level, and iterative (GMRES) correction solves.

// Named coefficient fields; every preset has max |alpha| = 1.
std::function<double(double, double)> alpha_preset(const std::string& name);

// Initial profile sin^4(pi x) and its exact cell averages.
double sin4_ic(double x);
CellField sin4_ic_averages(const Grid& g);

struct LinearTestbedConfig {
  std::string preset = "const";
  int nx = 64;
  int k = 1;  // 1: first-order + Euler; 2: third-order central + SSP-RK3
  DissipationConfig::Type diss = DissipationConfig::Type::glf;
  double theta = 0.0;  // coefficient freeze point within each step: t_n + theta*dt
  int m = 8;
  double t_final = 4.0;
  double cfl = 0.85;
  bool correction_enabled = true;
  GNorm g_norm = GNorm::factorial;
  double tol = 1e-10;
  int max_iters = 100;
  double divergence_tol = 1e3;
  std::uint64_t seed = 20240817;
  double gmres_rel_tol = 0.01;
  int gmres_max_iters = 10;
};

struct LinearTestbedResult {
  int nt = 0;
  double dt = 0.0;
  std::vector<double> residual_norm;
  std::vector<double> rel_residual;
  int iters = 0;
  bool converged = false;
  bool diverged = false;
  SpaceTimeState E;
  // Accumulated correction weights per coarse level and interval (diagnostic).
  std::vector<std::vector<CellField>> sigma;
};

// Sequential march of the testbed discretization (the discrete reference).
SpaceTimeState linear_testbed_march(const LinearTestbedConfig& cfg);

// Iterate V-cycles on the all-at-once testbed system from a seeded random
// start until the residual (relative to the start) drops below tol.
LinearTestbedResult run_linear_mgrit(const LinearTestbedConfig& cfg);

}  // namespace pintcl
