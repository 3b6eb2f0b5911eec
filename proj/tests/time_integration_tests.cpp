#include <cmath>
#include <numeric>

#include "doctest.h"
#include "pintcl/exact_solutions.hpp"
#include "pintcl/time_integration.hpp"
#include "support/test_helpers.hpp"

using namespace pintcl;
using test_support::burgers_disc;

namespace {

Discretization bl_disc(int nx, int k, DissipationConfig::Type diss) {
  Discretization d;
  d.grid = Grid(nx);
  d.flux = buckley_leverett_flux();
  d.k = k;
  d.recon.k = k;
  d.diss.type = diss;
  if (diss == DissipationConfig::Type::glf) d.diss.set_global_from_range(d.flux, 0.0, 1.0);
  // clamping pairs with local dissipation for the non-convex flux
  d.recon.clamp01 = (diss == DissipationConfig::Type::llf);
  return d;
}

double total_mass(const CellField& u) { return std::accumulate(u.begin(), u.end(), 0.0); }

}  // namespace

TEST_CASE("every step conserves the total cell-average sum to roundoff") {
  // all eight problem/order/dissipation combinations, random data
  int seed = 301;
  for (bool bl : {false, true}) {
    for (int k : {1, 2}) {
      for (auto diss : {DissipationConfig::Type::glf, DissipationConfig::Type::llf}) {
        Discretization d = bl ? bl_disc(32, k, diss) : burgers_disc(32, k, diss);
        auto u = test_support::random_field(32, seed++);
        CellField out;
        erk_step(u, d, 0.01, out);
        CHECK(total_mass(out) == doctest::Approx(total_mass(u)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("spatially constant states are fixed points of the step") {
  for (int k : {1, 2}) {
    Discretization d = burgers_disc(24, k, DissipationConfig::Type::llf);
    CellField u(24, 0.6), out;
    erk_step(u, d, 0.02, out);
    for (double v : out) CHECK(v == doctest::Approx(0.6).epsilon(1e-15));

    CellField l;
    spatial_operator(u, d, l);
    for (double v : l) CHECK(std::abs(v) < 1e-15);
  }
}

TEST_CASE("three-stage step composes the advertised convex updates") {
  Discretization d = burgers_disc(20, 2, DissipationConfig::Type::llf);
  auto u = test_support::random_field(20, 311);
  const double dt = 0.015;

  CellField out, s1, s2;
  erk_step(u, d, dt, out, &s1, &s2);

  CellField l, u1(20), u2(20), ref(20);
  spatial_operator(u, d, l);
  for (int i = 0; i < 20; ++i) u1[i] = u[i] + dt * l[i];
  spatial_operator(u1, d, l);
  for (int i = 0; i < 20; ++i) u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * l[i]);
  spatial_operator(u2, d, l);
  for (int i = 0; i < 20; ++i) ref[i] = (u[i] + 2.0 * (u2[i] + dt * l[i])) / 3.0;

  CHECK(test_support::max_abs_diff(s1, u1) == 0.0);
  CHECK(test_support::max_abs_diff(s2, u2) == 0.0);
  CHECK(test_support::max_abs_diff(out, ref) == 0.0);
}

TEST_CASE("first-order step is a single Euler update") {
  Discretization d = burgers_disc(20, 1, DissipationConfig::Type::glf);
  auto u = test_support::random_field(20, 321);
  const double dt = 0.02;
  CellField out, l;
  erk_step(u, d, dt, out);
  spatial_operator(u, d, l);
  for (int i = 0; i < 20; ++i) CHECK(out[i] == u[i] + dt * l[i]);
}

TEST_CASE("the sequential march satisfies the all-at-once residual exactly") {
  Discretization d = burgers_disc(32, 2, DissipationConfig::Type::llf);
  TimeGrid tg = TimeGrid::from_final_time(41, 1.0);
  auto u0 = square_ic_averages(d.grid);
  auto U = time_march(u0, d, tg);

  CHECK(U.nt == 41);
  CellField lvl0;
  U.copy_level_out(0, lvl0);
  CHECK(test_support::max_abs_diff(lvl0, u0) == 0.0);

  SpaceTimeState r;
  nonlinear_residual(U, u0, d, tg, r);
  double m = 0.0;
  for (double v : r.data) m = std::max(m, std::abs(v));
  CHECK(m == 0.0);

  // mass is conserved across the whole march
  const double m0 = total_mass(u0);
  for (int n = 0; n < U.nt; ++n) {
    auto lv = U.level_span(n);
    CHECK(std::accumulate(lv.begin(), lv.end(), 0.0) == doctest::Approx(m0).epsilon(1e-12));
  }
}

TEST_CASE("trivial march: two instants, one step") {
  Discretization d = burgers_disc(16, 1, DissipationConfig::Type::glf);
  TimeGrid tg = TimeGrid::from_final_time(2, 0.05);
  auto u0 = test_support::random_field(16, 331);
  auto U = time_march(u0, d, tg);
  CellField one, last;
  erk_step(u0, d, tg.dt, one);
  U.copy_level_out(1, last);
  CHECK(test_support::max_abs_diff(last, one) == 0.0);
}

TEST_CASE("the march refuses to continue through a blow-up") {
  Discretization d = burgers_disc(16, 1, DissipationConfig::Type::glf);
  d.diss.nu_global = -50.0;  // anti-dissipation: guaranteed explosion
  TimeGrid tg = TimeGrid::from_final_time(2000, 4.0);
  auto u0 = square_ic_averages(d.grid);
  CHECK_THROWS_AS((void)time_march(u0, d, tg), std::runtime_error);
}

TEST_CASE("shock-capturing march stays within physical bounds") {
  // square pulse under the convex flux: exact solution remains in [0,1];
  // the high-order scheme may overshoot, but only by a hair
  Discretization d = burgers_disc(128, 2, DissipationConfig::Type::llf);
  TimeGrid tg(321, 4.0 / 320.0);
  auto U = time_march(square_ic_averages(d.grid), d, tg);
  double lo = 1e9, hi = -1e9;
  for (double v : U.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo > -0.05);
  CHECK(hi < 1.05);
}

TEST_CASE("marched solution converges to the exact profile at first order") {
  // smooth pre-shock problem, first-order scheme: L1 error halves per doubling
  std::vector<double> errs;
  for (int nx : {64, 128, 256}) {
    Discretization d = burgers_disc(nx, 1, DissipationConfig::Type::glf);
    d.diss.set_global_from_range(d.flux, 0.0, 1.0);
    const double T = 0.2;
    const int nt = static_cast<int>(std::ceil(T / (0.8 * d.grid.h))) + 1;
    TimeGrid tg = TimeGrid::from_final_time(nt, T);
    auto U = time_march(test_support::gauss_averages(d.grid, smooth_ic), d, tg);
    auto lv = U.level(U.nt - 1);
    auto exact = test_support::smooth_burgers_exact_averages(d.grid, T);
    double l1 = 0.0;
    for (int i = 0; i < nx; ++i) l1 += std::abs(lv[i] - exact[i]) * d.grid.h;
    errs.push_back(l1);
  }
  const double slope = std::log2(errs[0] / errs[2]) / 2.0;
  CHECK(slope > 0.75);
  CHECK(slope < 1.25);
}
