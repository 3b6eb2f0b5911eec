#pragma once

#include "pintcl/grid.hpp"

namespace pintcl {

// Interface values produced by reconstruction: slot i holds the pair at
// x_{i+1/2}. minus[i] is the limit from cell i (west side), plus[i] the limit
// from cell i+1 (east side).
struct InterfaceValues {
  CellField minus, plus;
  void resize(int nx) {
    minus.assign(nx, 0.0);
    plus.assign(nx, 0.0);
  }
};

struct ReconstructionConfig {
  int k = 1;  // spatial order 2k-1; k in {1, 2}
  enum class Weights { weno, optimal } weights = Weights::weno;
  bool clamp01 = false;     // clamp final interface values to [0,1]
  double weno_eps = 1e-6;   // regularization in the nonlinear weights
};

// Nonlinear weights per cell, k=2 only. w0/w1 weight the two shifted stencils
// for the cell's east-interface value; wt0/wt1 for its west-interface value.
// (Stencil 0 = {i, i+1}, stencil 1 = {i-1, i}.)
struct WenoWeights {
  CellField w0, w1, wt0, wt1;
  void resize(int nx) {
    w0.assign(nx, 0.0);
    w1.assign(nx, 0.0);
    wt0.assign(nx, 0.0);
    wt1.assign(nx, 0.0);
  }
};

inline constexpr double kOptimalRight0 = 2.0 / 3.0;  // d
inline constexpr double kOptimalRight1 = 1.0 / 3.0;
inline constexpr double kOptimalLeft0 = 1.0 / 3.0;   // d-tilde
inline constexpr double kOptimalLeft1 = 2.0 / 3.0;

// Value of shifted-stencil reconstruction ell at the requested side of every
// cell. k=1 has the single zero-width stencil (the cell average itself).
enum class Side { left, right };
void linear_reconstruct(const CellField& ubar, int k, int ell, Side side, CellField& out);

// Jiang-Shu style smoothness indicators; k=2: beta0_i = (u_{i+1}-u_i)^2,
// beta1_i = (u_i-u_{i-1})^2.
void smoothness_indicators(const CellField& ubar, int k, CellField& beta0, CellField& beta1);

// Normalized nonlinear weights for both sides of every cell.
void weno_weights(const CellField& ubar, int k, double eps, WenoWeights& out);

// Fill weights with the mesh-independent optimal values (smooth-data limit).
void optimal_weights(int nx, int k, WenoWeights& out);

// Combine shifted-stencil values with the given per-cell weights.
// Used directly for frozen-weight (Picard) linearizations.
void apply_weights(const CellField& ubar, const WenoWeights& w, int k, bool clamp01,
                   InterfaceValues& out);

// Full reconstruction: weights per config, then combination (and clamping).
void weighted_reconstruct(const CellField& ubar, const ReconstructionConfig& cfg,
                          InterfaceValues& out, WenoWeights* weights_out = nullptr);

// One-time validation of the shifted-stencil coefficient tables against
// direct cell-average-preservation solves; throws on mismatch.
void run_reconstruction_self_check();

}  // namespace pintcl
