#include "pintcl/reconstruction.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace pintcl {

namespace {

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Shifted-stencil values for cell i, k=2. Stencil 0 uses {i, i+1}, stencil 1
// uses {i-1, i}; each is the unique linear polynomial preserving the two cell
// averages, evaluated at the east (right) or west (left) interface of cell i.
inline double right0(const CellField& u, int i, int n) { return 0.5 * (u[i] + u[wrap(i + 1, n)]); }
inline double right1(const CellField& u, int i, int n) { return 1.5 * u[i] - 0.5 * u[wrap(i - 1, n)]; }
inline double left0(const CellField& u, int i, int n) { return 1.5 * u[i] - 0.5 * u[wrap(i + 1, n)]; }
inline double left1(const CellField& u, int i, int n) { return 0.5 * (u[wrap(i - 1, n)] + u[i]); }

}  // namespace

void linear_reconstruct(const CellField& ubar, int k, int ell, Side side, CellField& out) {
  const int n = static_cast<int>(ubar.size());
  out.resize(n);
  if (k == 1) {
    out = ubar;
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (side == Side::right) {
      out[i] = (ell == 0) ? right0(ubar, i, n) : right1(ubar, i, n);
    } else {
      out[i] = (ell == 0) ? left0(ubar, i, n) : left1(ubar, i, n);
    }
  }
}

void smoothness_indicators(const CellField& ubar, int k, CellField& beta0, CellField& beta1) {
  const int n = static_cast<int>(ubar.size());
  beta0.resize(n);
  beta1.resize(n);
  if (k == 1) {
    beta0.assign(n, 0.0);
    beta1.assign(n, 0.0);
    return;
  }
  for (int i = 0; i < n; ++i) {
    double dfwd = ubar[wrap(i + 1, n)] - ubar[i];
    double dbwd = ubar[i] - ubar[wrap(i - 1, n)];
    beta0[i] = dfwd * dfwd;
    beta1[i] = dbwd * dbwd;
  }
}

void weno_weights(const CellField& ubar, int k, double eps, WenoWeights& out) {
  const int n = static_cast<int>(ubar.size());
  out.resize(n);
  if (k == 1) {
    out.w0.assign(n, 1.0);
    out.wt0.assign(n, 1.0);
    return;
  }
  for (int i = 0; i < n; ++i) {
    double dfwd = ubar[wrap(i + 1, n)] - ubar[i];
    double dbwd = ubar[i] - ubar[wrap(i - 1, n)];
    double b0 = dfwd * dfwd;
    double b1 = dbwd * dbwd;
    double r0 = 1.0 / ((eps + b0) * (eps + b0));
    double r1 = 1.0 / ((eps + b1) * (eps + b1));
    double a0 = kOptimalRight0 * r0;
    double a1 = kOptimalRight1 * r1;
    double at0 = kOptimalLeft0 * r0;
    double at1 = kOptimalLeft1 * r1;
    out.w0[i] = a0 / (a0 + a1);
    out.w1[i] = a1 / (a0 + a1);
    out.wt0[i] = at0 / (at0 + at1);
    out.wt1[i] = at1 / (at0 + at1);
  }
}

void optimal_weights(int nx, int k, WenoWeights& out) {
  out.resize(nx);
  if (k == 1) {
    out.w0.assign(nx, 1.0);
    out.wt0.assign(nx, 1.0);
    return;
  }
  out.w0.assign(nx, kOptimalRight0);
  out.w1.assign(nx, kOptimalRight1);
  out.wt0.assign(nx, kOptimalLeft0);
  out.wt1.assign(nx, kOptimalLeft1);
}

void apply_weights(const CellField& ubar, const WenoWeights& w, int k, bool clamp,
                   InterfaceValues& out) {
  const int n = static_cast<int>(ubar.size());
  out.resize(n);
  if (k == 1) {
    for (int i = 0; i < n; ++i) {
      out.minus[i] = ubar[i];
      out.plus[i] = ubar[wrap(i + 1, n)];
    }
  } else {
    for (int i = 0; i < n; ++i) {
      // minus side of x_{i+1/2}: east-interface value of cell i
      out.minus[i] = w.w0[i] * right0(ubar, i, n) + w.w1[i] * right1(ubar, i, n);
      // plus side of x_{i+1/2}: west-interface value of cell i+1
      int j = wrap(i + 1, n);
      out.plus[i] = w.wt0[j] * left0(ubar, j, n) + w.wt1[j] * left1(ubar, j, n);
    }
  }
  if (clamp) {
    for (int i = 0; i < n; ++i) {
      out.minus[i] = clamp01(out.minus[i]);
      out.plus[i] = clamp01(out.plus[i]);
    }
  }
}

void weighted_reconstruct(const CellField& ubar, const ReconstructionConfig& cfg,
                          InterfaceValues& out, WenoWeights* weights_out) {
  run_reconstruction_self_check();
  const int n = static_cast<int>(ubar.size());
  thread_local WenoWeights scratch;
  WenoWeights& w = weights_out ? *weights_out : scratch;
  if (cfg.weights == ReconstructionConfig::Weights::optimal) {
    optimal_weights(n, cfg.k, w);
  } else {
    weno_weights(ubar, cfg.k, cfg.weno_eps, w);
  }
  apply_weights(ubar, w, cfg.k, cfg.clamp01, out);
}

void run_reconstruction_self_check() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    // Validate each k=2 shifted stencil against the cell-average-preservation
    // system it is supposed to solve: fit the linear polynomial through two
    // prescribed cell averages and evaluate it at the cell-0 interfaces.
    const double h = 0.1;
    const double data[2] = {0.37, -1.21};
    for (int ell = 0; ell <= 1; ++ell) {
      int a = (ell == 0) ? 0 : -1;  // west-most stencil cell relative to cell 0
      double ua = data[0], ub = data[1];
      // P(x) = c0 + c1*x with cell centers at a*h and (a+1)*h:
      double c1 = (ub - ua) / h;
      double c0 = ua - c1 * (a * h);
      double east = c0 + c1 * (0.5 * h);
      double west = c0 - c1 * (0.5 * h);
      CellField ubar = {0.0, 0.0, 0.0};
      // place the stencil data around cell index 1 of a 3-cell field
      ubar[1 + a + 0] = ua;
      ubar[1 + a + 1] = ub;
      CellField r, l;
      linear_reconstruct(ubar, 2, ell, Side::right, r);
      linear_reconstruct(ubar, 2, ell, Side::left, l);
      if (std::abs(r[1] - east) > 1e-14 || std::abs(l[1] - west) > 1e-14) {
        throw std::logic_error("reconstruction stencil self-check failed");
      }
    }
  });
}

}  // namespace pintcl
