#include "pintcl/exact_solutions.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pintcl {

double burgers_square_exact(double x, double t) {
  if (t > 4.0) throw std::domain_error("burgers_square_exact: profile only valid up to t = 4");
  x = x - 2.0 * std::floor((x + 1.0) / 2.0);  // wrap into [-1, 1)
  if (t <= 0.0) return (x > -0.5 && x < 0.0) ? 1.0 : 0.0;

  if (t < 1.0) {
    // Rarefaction fan from the left edge, plateau, shock at speed 1/2.
    const double fan_foot = t - 0.5;
    const double shock = 0.5 * t;
    if (x <= -0.5) return 0.0;
    if (x < fan_foot) return (x + 0.5) / t;
    if (x < shock) return 1.0;
    return 0.0;
  }

  // Merged fan/shock: the shock rides the fan at position sqrt(t) - 1/2.
  const double xs = std::sqrt(t) - 0.5;
  if (xs <= 1.0) {
    if (x <= -0.5) return 0.0;
    if (x < xs) return (x + 0.5) / t;
    return 0.0;
  }
  // Shock has wrapped through the right boundary (t > 2.25).
  const double xw = xs - 2.0;
  if (x < xw) return (x + 2.5) / t;
  if (x < -0.5) return 0.0;
  return (x + 0.5) / t;
}

CellField burgers_square_exact_averages(const Grid& g, double t) {
  double bks[3];
  int nbk = 0;
  if (t <= 0.0) {
    bks[nbk++] = -0.5;
    bks[nbk++] = 0.0;
  } else if (t < 1.0) {
    bks[nbk++] = -0.5;
    bks[nbk++] = t - 0.5;
    bks[nbk++] = 0.5 * t;
  } else {
    const double xs = std::sqrt(t) - 0.5;
    if (xs <= 1.0) {
      bks[nbk++] = -0.5;
      bks[nbk++] = xs;
    } else {
      bks[nbk++] = xs - 2.0;
      bks[nbk++] = -0.5;
    }
  }

  CellField ub(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double a = Grid::x_left + i * g.h;
    const double b = a + g.h;
    double pts[5];
    int np = 0;
    pts[np++] = a;
    for (int s = 0; s < nbk; ++s) {
      if (bks[s] > a && bks[s] < b) pts[np++] = bks[s];
    }
    pts[np++] = b;
    std::sort(pts, pts + np);
    double acc = 0.0;
    for (int s = 0; s + 1 < np; ++s) {
      const double mid = 0.5 * (pts[s] + pts[s + 1]);
      acc += (pts[s + 1] - pts[s]) * burgers_square_exact(mid, t);
    }
    ub[i] = acc / g.h;
  }
  return ub;
}

CellField square_ic_averages(const Grid& g) {
  CellField ub(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double a = Grid::x_left + i * g.h;
    const double b = a + g.h;
    const double overlap = std::max(0.0, std::min(b, 0.0) - std::max(a, -0.5));
    ub[i] = overlap / g.h;
  }
  return ub;
}

double smooth_ic(double x) {
  using std::numbers::pi;
  return 0.5 + 0.4 * std::cos(pi * x) + 0.1 * std::sin(3.0 * pi * x);
}

CellField smooth_ic_averages(const Grid& g) {
  using std::numbers::pi;
  auto primitive = [](double x) {
    return 0.5 * x + 0.4 * std::sin(pi * x) / pi - 0.1 * std::cos(3.0 * pi * x) / (3.0 * pi);
  };
  CellField ub(g.nx);
  for (int i = 0; i < g.nx; ++i) {
    const double a = Grid::x_left + i * g.h;
    const double b = a + g.h;
    ub[i] = (primitive(b) - primitive(a)) / g.h;
  }
  return ub;
}

ErrorNorms error_norms(const CellField& approx, const CellField& exact, const Grid& g) {
  assert(approx.size() == exact.size());
  ErrorNorms e;
  double sq = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    const double d = std::abs(approx[i] - exact[i]);
    e.l1 += d;
    sq += d * d;
    e.linf = std::max(e.linf, d);
  }
  e.l1 *= g.h;
  e.l2 = std::sqrt(g.h * sq);
  return e;
}

}  // namespace pintcl
