#include <cmath>
#include <vector>

#include "doctest.h"
#include "pintcl/mgrit.hpp"
#include "support/test_helpers.hpp"

using namespace pintcl;

namespace {

// Dense step matrix for a synthetic linear time-stepper.
struct DenseStep {
  int n = 0;
  std::vector<double> a;  // row-major n*n

  static DenseStep random_contraction(int n, std::uint64_t seed) {
    DenseStep s;
    s.n = n;
    s.a = test_support::random_field(n * n, seed, -1.0, 1.0);
    for (double& v : s.a) v *= 0.8 / n;  // ||A||_inf < 0.8
    return s;
  }

  void apply(const CellField& x, CellField& y) const {
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[i] += a[static_cast<size_t>(i) * n + j] * x[j];
  }

  void apply_pow(int k, const CellField& x, CellField& y) const {
    CellField cur = x, nxt;
    for (int s = 0; s < k; ++s) {
      apply(cur, nxt);
      cur.swap(nxt);
    }
    y = cur;
  }
};

LevelSystem fine_system(const DenseStep& A, int nt) {
  LevelSystem sys;
  sys.n_points = nt;
  sys.nx = A.n;
  sys.apply_step = [&A](int, const CellField& in, CellField& out) { A.apply(in, out); };
  return sys;
}

// Ideal coarse system: step j applies A^(fine steps in coarse interval j).
LevelSystem ideal_coarse_system(const DenseStep& A, const CFSplitting& split, int pow_scale = 1) {
  LevelSystem sys;
  sys.n_points = split.n_coarse();
  sys.nx = A.n;
  sys.apply_step = [&A, split, pow_scale](int j, const CellField& in, CellField& out) {
    A.apply_pow(pow_scale * split.interval_steps(j), in, out);
  };
  return sys;
}

double residual_inf(const SpaceTimeState& E, const SpaceTimeState& R, const LevelSystem& sys) {
  SpaceTimeState r(sys.n_points, sys.nx);
  fine_residual(E, R, sys, r);
  return space_time_norm(r, NormKind::inf);
}

}  // namespace

TEST_CASE("residual monitor matches the block-bidiagonal definition") {
  auto A = DenseStep::random_contraction(3, 701);
  const int nt = 6;
  auto sys = fine_system(A, nt);
  SpaceTimeState E(nt, 3), R(nt, 3), r(nt, 3);
  E.data = test_support::random_field(nt * 3, 702, -1.0, 1.0);
  R.data = test_support::random_field(nt * 3, 703, -1.0, 1.0);
  fine_residual(E, R, sys, r);

  CellField prev(3), step(3);
  for (int i = 0; i < 3; ++i) CHECK(r.level(0)[i] == R.level(0)[i] - E.level(0)[i]);
  for (int n = 0; n + 1 < nt; ++n) {
    E.copy_level_out(n, prev);
    sys.apply_step(n, prev, step);
    for (int i = 0; i < 3; ++i)
      CHECK(r.level(n + 1)[i] ==
            doctest::Approx(R.level(n + 1)[i] + step[i] - E.level(n + 1)[i]).epsilon(1e-15));
  }
}

TEST_CASE("forward substitution solves the system exactly") {
  auto A = DenseStep::random_contraction(4, 711);
  auto sys = fine_system(A, 9);
  SpaceTimeState R(9, 4), E(9, 4);
  R.data = test_support::random_field(9 * 4, 712, -1.0, 1.0);
  forward_solve(sys, R, E);
  CHECK(residual_inf(E, R, sys) < 1e-14);
}

TEST_CASE("relaxation sweeps zero the residual on their own points") {
  auto A = DenseStep::random_contraction(4, 721);
  const int nt = 13, m = 4;
  auto sys = fine_system(A, nt);
  auto split = CFSplitting::build(nt, m);
  SpaceTimeState E(nt, 4), R(nt, 4), r(nt, 4);
  E.data = test_support::random_field(nt * 4, 722, -1.0, 1.0);
  R.data = test_support::random_field(nt * 4, 723, -1.0, 1.0);

  f_relax(E, R, sys, split);
  fine_residual(E, R, sys, r);
  for (int n = 0; n < nt; ++n) {
    const double row = field_norm(r.level_span(n), NormKind::inf);
    if (!split.is_c_point(n)) CHECK(row < 1e-14);
  }
  // C-point rows are generally still nonzero after an F-sweep
  double cmax = 0.0;
  for (int n : split.c_points) cmax = std::max(cmax, field_norm(r.level_span(n), NormKind::inf));
  CHECK(cmax > 1e-8);

  c_relax(E, R, sys, split);
  fine_residual(E, R, sys, r);
  for (int n : split.c_points) CHECK(field_norm(r.level_span(n), NormKind::inf) < 1e-14);
}

TEST_CASE("two-level cycle with the ideal coarse operator solves in one iteration") {
  auto A = DenseStep::random_contraction(4, 731);
  for (int nt : {17, 11}) {  // aligned and ragged final interval
    const int m = 4;
    auto split = CFSplitting::build(nt, m);
    MgritHierarchy h;
    h.levels.push_back(fine_system(A, nt));
    h.levels.push_back(ideal_coarse_system(A, split));
    h.splits.push_back(split);

    SpaceTimeState R(nt, 4), E(nt, 4);
    R.data = test_support::random_field(nt * 4, 732, -1.0, 1.0);
    E.data = test_support::random_field(nt * 4, 733, -1.0, 1.0);

    two_level_iteration(E, R, h);
    CHECK(residual_inf(E, R, h.levels[0]) < 1e-13);
  }
}

TEST_CASE("depth-two V-cycle and the two-level iteration are the same algorithm") {
  auto A = DenseStep::random_contraction(3, 741);
  const int nt = 21, m = 4;
  auto split = CFSplitting::build(nt, m);

  // a deliberately non-ideal coarse operator (single fine step per interval)
  LevelSystem coarse;
  coarse.n_points = split.n_coarse();
  coarse.nx = 3;
  coarse.apply_step = [&A](int, const CellField& in, CellField& out) { A.apply(in, out); };

  MgritHierarchy h;
  h.levels.push_back(fine_system(A, nt));
  h.levels.push_back(coarse);
  h.splits.push_back(split);

  SpaceTimeState R(nt, 3), E1(nt, 3);
  R.data = test_support::random_field(nt * 3, 742, -1.0, 1.0);
  E1.data = test_support::random_field(nt * 3, 743, -1.0, 1.0);
  SpaceTimeState E2 = E1;

  two_level_iteration(E1, R, h);
  vcycle_iteration(E2, R, h);
  CHECK(test_support::max_abs_diff(E1.data, E2.data) == 0.0);
}

TEST_CASE("three-level V-cycle with ideal operators on every level is direct") {
  auto A = DenseStep::random_contraction(4, 751);
  const int nt = 17, m = 4;
  auto split0 = CFSplitting::build(nt, m);
  auto split1 = CFSplitting::build(split0.n_coarse(), 2);

  MgritHierarchy h;
  h.levels.push_back(fine_system(A, nt));
  h.levels.push_back(ideal_coarse_system(A, split0));
  // level-2 step j spans split1's intervals of level-1 points, each of which
  // is m fine steps wide (the finest split is aligned here)
  h.levels.push_back(ideal_coarse_system(A, split1, m));
  h.splits.push_back(split0);
  h.splits.push_back(split1);

  SpaceTimeState R(nt, 4), E(nt, 4);
  R.data = test_support::random_field(nt * 4, 752, -1.0, 1.0);
  E.data = test_support::random_field(nt * 4, 753, -1.0, 1.0);

  vcycle_iteration(E, R, h);
  CHECK(residual_inf(E, R, h.levels[0]) < 1e-13);
}

TEST_CASE("non-ideal coarse operators still contract the error") {
  auto A = DenseStep::random_contraction(4, 761);
  const int nt = 33, m = 4;
  auto split = CFSplitting::build(nt, m);

  // perturbed coarse operator: ideal power plus a small wobble
  auto wob = DenseStep::random_contraction(4, 762);
  LevelSystem coarse;
  coarse.n_points = split.n_coarse();
  coarse.nx = 4;
  coarse.apply_step = [&A, &wob, split](int j, const CellField& in, CellField& out) {
    A.apply_pow(split.interval_steps(j), in, out);
    CellField w;
    wob.apply(in, w);
    for (int i = 0; i < 4; ++i) out[i] += 0.05 * w[i];
  };

  MgritHierarchy h;
  h.levels.push_back(fine_system(A, nt));
  h.levels.push_back(coarse);
  h.splits.push_back(split);

  SpaceTimeState R(nt, 4), E(nt, 4);
  R.data = test_support::random_field(nt * 4, 763, -1.0, 1.0);
  double prev = 1e300;
  for (int it = 0; it < 4; ++it) {
    two_level_iteration(E, R, h);
    const double res = residual_inf(E, R, h.levels[0]);
    CHECK(res < 0.5 * prev);
    prev = res;
  }
}
