#include <array>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "pintcl/exact_solutions.hpp"
#include "pintcl/linearization.hpp"
#include "support/test_helpers.hpp"

using namespace pintcl;
using test_support::burgers_disc;

namespace {

// Directional FD of the full nonlinear step, used as the Jacobian oracle.
CellField step_directional_fd(const CellField& u, const CellField& e, const Discretization& d,
                              double dt, double mu) {
  CellField up(u.size()), um(u.size()), fp, fm, out(u.size());
  for (size_t i = 0; i < u.size(); ++i) {
    up[i] = u[i] + mu * e[i];
    um[i] = u[i] - mu * e[i];
  }
  erk_step(up, d, dt, fp);
  erk_step(um, d, dt, fm);
  for (size_t i = 0; i < u.size(); ++i) out[i] = (fp[i] - fm[i]) / (2 * mu);
  return out;
}

// One application of the linearized step frozen at state u (stages captured
// from the nonlinear step when k=2).
CellField lin_step(const CellField& u, const CellField& e, const Discretization& d, double dt,
                   LinMode mode) {
  LinearizationPoint p0 = build_linearization_point(u, d);
  CellField out;
  if (d.k == 1) {
    linearized_step(e, {&p0, nullptr, nullptr}, d, dt, mode, out);
  } else {
    CellField s1, s2, dump;
    erk_step(u, d, dt, dump, &s1, &s2);
    LinearizationPoint p1 = build_linearization_point(s1, d);
    LinearizationPoint p2 = build_linearization_point(s2, d);
    linearized_step(e, {&p0, &p1, &p2}, d, dt, mode, out);
  }
  return out;
}

}  // namespace

TEST_CASE("linearized step converges to the true Jacobian action (Richardson)") {
  struct Case {
    int k;
    ReconstructionConfig::Weights w;
    LinMode mode;
  };
  // exact modes: FD error must shrink like mu^2 toward the analytic action
  for (auto [k, w, mode] : {Case{1, ReconstructionConfig::Weights::weno, LinMode::exact_k1},
                            Case{2, ReconstructionConfig::Weights::optimal, LinMode::newton_fd}}) {
    Discretization d = burgers_disc(32, k, DissipationConfig::Type::glf, w);
    auto u = test_support::gauss_averages(d.grid, smooth_ic);
    auto e = test_support::random_field(32, 401, -1.0, 1.0);
    const double dt = 0.4 * d.grid.h;
    auto lin = lin_step(u, e, d, dt, mode);

    // Richardson-extrapolated central difference kills the mu^2 term
    auto fd1 = step_directional_fd(u, e, d, dt, 1e-3);
    auto fd2 = step_directional_fd(u, e, d, dt, 5e-4);
    double dev = 0.0, scale = 1.0;
    for (int i = 0; i < 32; ++i) {
      const double rich = (4.0 * fd2[i] - fd1[i]) / 3.0;
      dev = std::max(dev, std::abs(lin[i] - rich));
      scale = std::max(scale, std::abs(rich));
    }
    CHECK(dev / scale < 1e-6);
  }
}

TEST_CASE("finite-difference mode is the reconstruction secant at its built-in increment") {
  // defining property: ev = [R(u + mu e) - R(u)] / mu with mu = kNewtonFdMu,
  // R the full weighted reconstruction (weights re-evaluated at the shifted
  // state)
  Discretization d = burgers_disc(24, 2, DissipationConfig::Type::glf);
  auto u = test_support::gauss_averages(d.grid, smooth_ic);
  auto e = test_support::random_field(24, 411, -1.0, 1.0);
  auto pt = build_linearization_point(u, d);

  InterfaceValues ev;
  linearized_reconstruct(e, pt, d, LinMode::newton_fd, ev);

  CellField shifted(24);
  for (int i = 0; i < 24; ++i) shifted[i] = u[i] + kNewtonFdMu * e[i];
  InterfaceValues r0, r1;
  weighted_reconstruct(u, d.recon, r0);
  weighted_reconstruct(shifted, d.recon, r1);
  for (int i = 0; i < 24; ++i) {
    CHECK(ev.minus[i] ==
          doctest::Approx((r1.minus[i] - r0.minus[i]) / kNewtonFdMu).epsilon(1e-12));
    CHECK(ev.plus[i] == doctest::Approx((r1.plus[i] - r0.plus[i]) / kNewtonFdMu).epsilon(1e-12));
  }

  // at optimal (state-independent) weights the reconstruction is linear, so
  // the secant coincides with the frozen-weight map
  Discretization dl = burgers_disc(24, 2, DissipationConfig::Type::glf,
                                   ReconstructionConfig::Weights::optimal);
  auto ptl = build_linearization_point(u, dl);
  InterfaceValues ev_fd, ev_frozen;
  linearized_reconstruct(e, ptl, dl, LinMode::newton_fd, ev_fd);
  linearized_reconstruct(e, ptl, dl, LinMode::picard, ev_frozen);
  for (int i = 0; i < 24; ++i) {
    CHECK(ev_fd.minus[i] == doctest::Approx(ev_frozen.minus[i]).epsilon(1e-10));
    CHECK(ev_fd.plus[i] == doctest::Approx(ev_frozen.plus[i]).epsilon(1e-10));
  }
}

TEST_CASE("linearized step is linear in the perturbation where exact") {
  struct Case {
    int k;
    ReconstructionConfig::Weights w;
    LinMode mode;
  };
  for (auto [k, w, mode] : {Case{1, ReconstructionConfig::Weights::weno, LinMode::exact_k1},
                            Case{2, ReconstructionConfig::Weights::optimal, LinMode::newton_fd},
                            Case{2, ReconstructionConfig::Weights::weno, LinMode::picard}}) {
    Discretization d = burgers_disc(28, k, DissipationConfig::Type::glf, w);
    auto u = test_support::gauss_averages(d.grid, smooth_ic);
    auto e1 = test_support::random_field(28, 421, -1.0, 1.0);
    auto e2 = test_support::random_field(28, 422, -1.0, 1.0);
    const double dt = 0.4 * d.grid.h;

    CellField combo(28);
    for (int i = 0; i < 28; ++i) combo[i] = 2.0 * e1[i] - 3.0 * e2[i];
    auto lc = lin_step(u, combo, d, dt, mode);
    auto l1 = lin_step(u, e1, d, dt, mode);
    auto l2 = lin_step(u, e2, d, dt, mode);
    double dev = 0.0, scale = 0.0;
    for (int i = 0; i < 28; ++i) {
      dev = std::max(dev, std::abs(lc[i] - (2.0 * l1[i] - 3.0 * l2[i])));
      scale = std::max(scale, std::abs(lc[i]));
    }
    CHECK(dev <= 1e-12 * std::max(1.0, scale));
  }

  // the finite-difference mode on nonlinear weights is only approximately
  // linear (the secant depends on the direction); deviation stays moderate
  Discretization d = burgers_disc(28, 2, DissipationConfig::Type::glf);
  auto u = test_support::gauss_averages(d.grid, smooth_ic);
  auto e1 = test_support::random_field(28, 431, -1.0, 1.0);
  CellField doubled(28);
  for (int i = 0; i < 28; ++i) doubled[i] = 2.0 * e1[i];
  auto la = lin_step(u, doubled, d, 0.4 * d.grid.h, LinMode::newton_fd);
  auto lb = lin_step(u, e1, d, 0.4 * d.grid.h, LinMode::newton_fd);
  double dev = 0.0, scale = 0.0;
  for (int i = 0; i < 28; ++i) {
    dev = std::max(dev, std::abs(la[i] - 2.0 * lb[i]));
    scale = std::max(scale, std::abs(la[i]));
  }
  CHECK(dev / scale < 0.5);
}

TEST_CASE("linearized step conserves the perturbation's total mass") {
  for (auto mode : {LinMode::exact_k1, LinMode::newton_fd, LinMode::picard}) {
    const int k = (mode == LinMode::exact_k1) ? 1 : 2;
    Discretization d = burgers_disc(26, k, DissipationConfig::Type::llf);
    auto u = test_support::random_field(26, 441);
    auto e = test_support::random_field(26, 442, -1.0, 1.0);
    auto out = lin_step(u, e, d, 0.3 * d.grid.h, mode);
    const double me = std::accumulate(e.begin(), e.end(), 0.0);
    const double mo = std::accumulate(out.begin(), out.end(), 0.0);
    CHECK(mo == doctest::Approx(me).epsilon(1e-12));
  }
}

TEST_CASE("frozen linearization point carries consistent data") {
  Discretization d = burgers_disc(20, 2, DissipationConfig::Type::llf);
  auto u = test_support::random_field(20, 451);
  auto pt = build_linearization_point(u, d);
  CHECK(pt.ubar == u);

  InterfaceValues uv;
  WenoWeights w;
  weighted_reconstruct(u, d.recon, uv, &w);
  CHECK(test_support::max_abs_diff(pt.uv.minus, uv.minus) == 0.0);
  CHECK(test_support::max_abs_diff(pt.uv.plus, uv.plus) == 0.0);
  for (int i = 0; i < 20; ++i) {
    CHECK(pt.dfm[i] == d.flux.df(uv.minus[i]));
    CHECK(pt.dfp[i] == d.flux.df(uv.plus[i]));
    CHECK(pt.alpha_half[i] == doctest::Approx(0.5 * (pt.dfm[i] + pt.dfp[i])).epsilon(1e-15));
    CHECK(pt.nu_half[i] == llf_coefficient(d.flux, uv.minus[i], uv.plus[i]));
    CHECK(pt.weights.w0[i] == w.w0[i]);
  }
}

TEST_CASE("forward substitution solves the linearized all-at-once system") {
  Discretization d = burgers_disc(24, 1, DissipationConfig::Type::glf);
  TimeGrid tg = TimeGrid::from_final_time(17, 0.5);
  auto U = time_march(square_ic_averages(d.grid), d, tg);
  LinearizedSystem sys(d, tg, LinMode::exact_k1, U);

  SpaceTimeState r(17, 24);
  auto rv = test_support::random_field(17 * 24, 461, -1.0, 1.0);
  r.data = rv;

  SpaceTimeState e;
  solve_linearized_direct(sys, r, e);

  // residual of the block bidiagonal system: r^0 - e^0 and
  // r^{n+1} + Phi_lin e^n - e^{n+1} must vanish
  CellField prev(24), step(24);
  double worst = 0.0;
  for (int i = 0; i < 24; ++i) worst = std::max(worst, std::abs(r.level(0)[i] - e.level(0)[i]));
  for (int n = 0; n + 1 < 17; ++n) {
    e.copy_level_out(n, prev);
    sys.apply_step(n, prev, step);
    for (int i = 0; i < 24; ++i)
      worst = std::max(worst, std::abs(r.level(n + 1)[i] + step[i] - e.level(n + 1)[i]));
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("level points match direct construction at each time level") {
  Discretization d = burgers_disc(16, 1, DissipationConfig::Type::llf);
  TimeGrid tg = TimeGrid::from_final_time(5, 0.1);
  auto U = time_march(square_ic_averages(d.grid), d, tg);
  LinearizedSystem sys(d, tg, LinMode::exact_k1, U);
  for (int n = 0; n < 5; ++n) {
    auto pt = sys.level_point(n);
    CellField lvl;
    U.copy_level_out(n, lvl);
    auto ref = build_linearization_point(lvl, d);
    CHECK(test_support::max_abs_diff(pt.ubar, ref.ubar) == 0.0);
    CHECK(test_support::max_abs_diff(pt.nu_half, ref.nu_half) == 0.0);
  }
}
