#include "pintcl/coarse_correction.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace pintcl {

double g_poly(double eps, int p, GNorm norm) {
  assert(p == 1 || p == 3);
  const int k = (p + 1) / 2;
  double prod = 1.0;
  for (int j = -k; j <= k - 1; ++j) prod *= (eps + j);
  double scale;
  if (norm == GNorm::factorial) {
    double fact = 1.0;
    for (int j = 2; j <= p + 1; ++j) fact *= j;
    scale = 1.0 / fact;
  } else {
    scale = 1.0 / (p + 1);
  }
  return scale * prod;
}

namespace {

struct StencilTable {
  int lo, hi;          // offsets [lo, hi]
  double coeff[4];     // coefficient at offset lo + idx, scaled by h^{-q}
  int q;               // derivative order (power of h in the denominator)
};

StencilTable stencil_table(StencilKind kind) {
  switch (kind) {
    case StencilKind::d1t:
      return {0, 1, {1.0, -1.0, 0.0, 0.0}, 1};
    case StencilKind::d20:
      return {0, 2, {1.0, -2.0, 1.0, 0.0}, 2};
    case StencilKind::d21:
      return {-1, 1, {1.0, -2.0, 1.0, 0.0}, 2};
    case StencilKind::d3t:
      return {-1, 2, {1.0, -3.0, 3.0, -1.0}, 3};
  }
  throw std::logic_error("unknown stencil");
}

}  // namespace

PeriodicBandMatrix compose_d1_diag(const CellField& w, StencilKind b, const Grid& g) {
  const StencilTable st = stencil_table(b);
  const int n = g.nx;
  assert(static_cast<int>(w.size()) == n);
  // Row i = (w_i * B_i - w_{i-1} * B_{i-1}) / h; the B_{i-1} entries shift by
  // one column, widening the band by one on the low side.
  PeriodicBandMatrix a(n, 1 - st.lo, st.hi);
  const double scale = 1.0 / (g.h * std::pow(g.h, st.q));
  for (int i = 0; i < n; ++i) {
    const double wi = w[i];
    const double wim1 = w[wrap(i - 1, n)];
    for (int o = st.lo; o <= st.hi; ++o) {
      double c = st.coeff[o - st.lo];
      a.at(i, o) += scale * wi * c;
      a.at(i, o - 1) -= scale * wim1 * c;
    }
  }
  return a;
}

PeriodicBandMatrix assemble_T_direct(const DepartureData& dep, int p, const Grid& g, GNorm norm) {
  const int n = g.nx;
  CellField w(n);
  const double hp1 = std::pow(g.h, p + 1);
  for (int i = 0; i < n; ++i) w[i] = -hp1 * g_poly(dep.eps[i], p, norm);
  return compose_d1_diag(w, p == 1 ? StencilKind::d1t : StencilKind::d3t, g);
}

void accumulate_ideal_step_weight_k1(const LinearizationPoint& pt, const Grid& g, double dt,
                                     CellField& w) {
  assert(static_cast<int>(w.size()) == g.nx);
  for (int i = 0; i < g.nx; ++i) {
    double a = dt * pt.alpha_half[i];
    w[i] += -0.5 * a * a + 0.5 * g.h * dt * pt.nu_half[i];
  }
}

PeriodicBandMatrix assemble_T_ideal_k1(std::span<const LinearizationPoint* const> pts_from,
                                       const Grid& g, double dt) {
  CellField w(g.nx, 0.0);
  for (const LinearizationPoint* pt : pts_from) {
    accumulate_ideal_step_weight_k1(*pt, g, dt, w);
  }
  return compose_d1_diag(w, StencilKind::d1t, g);
}

PeriodicBandMatrix assemble_T_ideal_k2(std::span<const LinearizationPoint* const> pts_to,
                                       const Grid& g, double dt, double s_rk, double s_fv) {
  const int n = g.nx;
  CellField b0(n, 0.0), b1(n, 0.0);
  for (const LinearizationPoint* pt : pts_to) {
    for (int i = 0; i < n; ++i) {
      int j = wrap(i + 1, n);
      double a = dt * pt->alpha_half[i];
      double a4 = a * a;
      a4 *= a4;
      double core = 0.75 * (s_rk * a4 / (24.0 * g.h) +
                            s_fv * g.h * g.h * dt * pt->nu_half[i] / 12.0);
      b0[i] += core * (2.0 * pt->weights.wt0[j] + pt->weights.w0[i]);
      b1[i] += core * (pt->weights.wt1[j] + 2.0 * pt->weights.w1[i]);
    }
  }
  PeriodicBandMatrix t = compose_d1_diag(b0, StencilKind::d20, g);
  PeriodicBandMatrix t1 = compose_d1_diag(b1, StencilKind::d21, g);
  // widen t to cover t1's band before subtracting
  PeriodicBandMatrix out(g.nx, std::max(t.kl, t1.kl), std::max(t.ku, t1.ku));
  out.add_scaled(t, 1.0);
  out.add_scaled(t1, -1.0);
  return out;
}

void accumulate_ideal_weight_linear(const CellField& nu, const CellField& alpha_pow, int k,
                                    const Grid& g, double dt, CellField& w) {
  assert(k == 1 || k == 2);
  assert(static_cast<int>(w.size()) == g.nx);
  const int p = 2 * k - 1;
  // c_k = (-1)^{k+1} k!(k-1)!/(2k)!  ->  1/2 (k=1), -1/12 (k=2)
  const double c_k = (k == 1) ? 0.5 : -1.0 / 12.0;
  // Stability-polynomial remainder coefficient of the time integrator.
  const double e_rk = (k == 1) ? -0.5 : -1.0 / 24.0;
  const double hp = std::pow(g.h, p);
  const double dtq1 = std::pow(-dt, p + 1);  // q = p
  for (int i = 0; i < g.nx; ++i) {
    w[i] += hp * dt * c_k * nu[i] + dtq1 * e_rk * alpha_pow[i];
  }
}

PeriodicBandMatrix assemble_T_ideal_linear(const CellField& sum_nu,
                                           const CellField& sum_alpha_pow, int k, const Grid& g,
                                           double dt) {
  const int p = 2 * k - 1;
  CellField w(g.nx, 0.0);
  accumulate_ideal_weight_linear(sum_nu, sum_alpha_pow, k, g, dt, w);
  return compose_d1_diag(w, p == 1 ? StencilKind::d1t : StencilKind::d3t, g);
}

PeriodicBandMatrix correction_matrix(const PeriodicBandMatrix& t_ideal,
                                     const PeriodicBandMatrix& t_direct) {
  int kl = std::max(t_ideal.kl, t_direct.kl);
  int ku = std::max(t_ideal.ku, t_direct.ku);
  PeriodicBandMatrix m = PeriodicBandMatrix::identity(t_ideal.n, kl, ku);
  m.add_scaled(t_ideal, 1.0);
  m.add_scaled(t_direct, -1.0);
  return m;
}

PeriodicBandMatrix correction_matrix_from_sigma(const CellField& sigma, int p, const Grid& g) {
  PeriodicBandMatrix t =
      compose_d1_diag(sigma, p == 1 ? StencilKind::d1t : StencilKind::d3t, g);
  PeriodicBandMatrix m = PeriodicBandMatrix::identity(t.n, t.kl, t.ku);
  m.add_scaled(t, 1.0);
  return m;
}

void CoarseStepData::finalize() {
  if (solve == CorrectionSolve::lu) {
    lu.emplace(M);
  }
}

void CoarseStepData::apply(const CellField& in, CellField& out) const {
  sl_step(in, dep, p, *grid, out);
  switch (solve) {
    case CorrectionSolve::none:
      return;
    case CorrectionSolve::lu:
      lu->solve(out);
      return;
    case CorrectionSolve::gmres: {
      thread_local CellField rhs;
      rhs = out;
      std::fill(out.begin(), out.end(), 0.0);
      gmres_solve([this](const CellField& x, CellField& y) { M.matvec(x, y); }, rhs, out,
                  gmres_rel_tol, gmres_max_iters);
      return;
    }
  }
}

}  // namespace pintcl
