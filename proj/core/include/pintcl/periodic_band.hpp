#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "pintcl/grid.hpp"

namespace pintcl {

// Banded matrix with periodic (circulant-pattern) wrap-around: row i has
// entries at columns wrap(i + o) for offsets o in [-kl, ku]. Entries vary per
// row; only the sparsity pattern is circulant.
struct PeriodicBandMatrix {
  int n = 0, kl = 0, ku = 0;
  std::vector<double> band;  // row-major, (kl+ku+1) entries per row

  PeriodicBandMatrix() = default;
  PeriodicBandMatrix(int n_, int kl_, int ku_)
      : n(n_), kl(kl_), ku(ku_), band(static_cast<size_t>(n_) * (kl_ + ku_ + 1), 0.0) {}

  double& at(int i, int o) { return band[static_cast<size_t>(i) * (kl + ku + 1) + (o + kl)]; }
  double at(int i, int o) const { return band[static_cast<size_t>(i) * (kl + ku + 1) + (o + kl)]; }

  static PeriodicBandMatrix identity(int n, int kl, int ku);

  // this += c * other. Bandwidths of `other` must fit inside this one's.
  void add_scaled(const PeriodicBandMatrix& other, double c);

  void matvec(const CellField& x, CellField& y) const;

  // Dense copy (tests, small problems).
  std::vector<double> to_dense() const;  // row-major n*n
};

// LU-based solver for a PeriodicBandMatrix: factors the non-wrapping band
// part with LAPACK and folds the wrap-around corners back in with a
// Sherman-Morrison-Woodbury correction of rank kl+ku.
class PeriodicBandLU {
 public:
  explicit PeriodicBandLU(const PeriodicBandMatrix& a);
  ~PeriodicBandLU();
  PeriodicBandLU(PeriodicBandLU&&) noexcept;
  PeriodicBandLU& operator=(PeriodicBandLU&&) noexcept;
  PeriodicBandLU(const PeriodicBandLU&) = delete;
  PeriodicBandLU& operator=(const PeriodicBandLU&) = delete;

  void solve(CellField& x) const;  // in place

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Unpreconditioned GMRES for a matrix-free operator; stops when the residual
// drops below rel_tol * ||rhs|| or after max_iters Arnoldi steps. x holds the
// initial guess on entry and the approximate solution on exit. Returns the
// number of iterations taken.
int gmres_solve(const std::function<void(const CellField&, CellField&)>& apply,
                const CellField& rhs, CellField& x, double rel_tol, int max_iters);

}  // namespace pintcl
