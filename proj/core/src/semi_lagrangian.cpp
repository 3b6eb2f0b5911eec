#include "pintcl/semi_lagrangian.hpp"

#include <cassert>
#include <cmath>

namespace pintcl {

DepartureData DepartureData::from_delta(const std::vector<double>& delta_in) {
  DepartureData d;
  const int n = static_cast<int>(delta_in.size());
  d.resize(n);
  for (int i = 0; i < n; ++i) {
    double delta = delta_in[i];
    double fl = std::floor(delta);
    double eps = delta - fl;
    // Guard against eps rounding up to exactly 1.
    if (eps >= 1.0) {
      fl += 1.0;
      eps = 0.0;
    }
    d.delta[i] = delta;
    d.shift[i] = static_cast<int>(fl);
    d.eps[i] = eps;
  }
  return d;
}

double interface_wave_speed_at(const CellField& alpha_half, const Grid& g, double x) {
  const int n = g.nx;
  // Interface slot i sits at x_left + (i+1)*h; slot coordinate of x:
  double s = (x - Grid::x_left) / g.h - 1.0;
  double fl = std::floor(s);
  double frac = s - fl;
  int i0 = wrap(static_cast<int>(fl), n);
  int i1 = wrap(i0 + 1, n);
  return (1.0 - frac) * alpha_half[i0] + frac * alpha_half[i1];
}

double fine_departure_step(double x, const LinearizationPoint& pt, const Grid& g, double dt) {
  return x - dt * interface_wave_speed_at(pt.alpha_half, g, x);
}

DepartureData coarse_departure_offsets_fields(std::span<const CellField* const> alpha_leaving,
                                              const Grid& g, double dt) {
  const int n = g.nx;
  std::vector<double> delta(n);
  for (int i = 0; i < n; ++i) {
    double arrival = g.interface(i);
    double x = arrival;
    for (const CellField* alpha : alpha_leaving) {
      x -= dt * interface_wave_speed_at(*alpha, g, x);
    }
    delta[i] = (arrival - x) / g.h;
  }
  return DepartureData::from_delta(delta);
}

DepartureData coarse_departure_offsets(std::span<const LinearizationPoint* const> pts_leaving,
                                       const Grid& g, double dt) {
  std::vector<const CellField*> alpha(pts_leaving.size());
  for (std::size_t s = 0; s < pts_leaving.size(); ++s) alpha[s] = &pts_leaving[s]->alpha_half;
  return coarse_departure_offsets_fields(alpha, g, dt);
}

DepartureData coarse_departure_offsets_exact(const std::function<double(double, double)>& alpha,
                                             std::span<const double> times_leaving, const Grid& g,
                                             double dt) {
  const int n = g.nx;
  std::vector<double> delta(n);
  for (int i = 0; i < n; ++i) {
    double arrival = g.interface(i);
    double x = arrival;
    for (double t : times_leaving) {
      x -= dt * alpha(x, t);
    }
    delta[i] = (arrival - x) / g.h;
  }
  return DepartureData::from_delta(delta);
}

namespace {

// Integral of the degree-2 cell-average-preserving reconstruction over the
// fractional interval [xi, x-tilde] of width eps*h, where the reconstruction
// stencil is the three cells centered on the departure cell d. Equals
// Q(x-tilde) - Q(xi) for the cubic Q interpolating the primitive at the four
// stencil interfaces; collapsing the Lagrange form gives per-cell weights.
inline double fractional_integral_p3(double eps, double em1, double e0, double ep1) {
  double cm1 = eps * (eps - 1.0) * (eps + 1.0) / 6.0;
  double c0 = eps * (eps + 1.0) * (5.0 - 2.0 * eps) / 6.0;
  double cp1 = eps * (eps - 1.0) * (eps - 2.0) / 6.0;
  return cm1 * em1 + c0 * e0 + cp1 * ep1;
}

}  // namespace

void sl_step(const CellField& ebar, const DepartureData& dep, int p, const Grid& g,
             CellField& out) {
  assert(p == 1 || p == 3);
  const int n = g.nx;
  thread_local CellField ftil;
  ftil.resize(n);

  double total = 0.0;
  for (double v : ebar) total += v;

  for (int i = 0; i < n; ++i) {
    int s = dep.shift[i];
    // Whole-cell part: integral over [x-tilde, x_{i+1/2}] covers s cells west
    // of (and including) cell i; a negative s integrates eastward with a sign
    // flip; displacements beyond one period wrap around the total mass.
    int wraps = (s >= 0) ? s / n : -((-s + n - 1) / n);
    int rem = s - wraps * n;  // in [0, n)
    double sum = wraps * total;
    for (int c = 0; c < rem; ++c) sum += ebar[wrap(i - c, n)];

    // Fractional part over [xi, x-tilde] inside departure cell d = i - s.
    int dcell = wrap(i - s, n);
    double frac;
    if (p == 1) {
      frac = dep.eps[i] * ebar[dcell];
    } else {
      frac = fractional_integral_p3(dep.eps[i], ebar[wrap(dcell - 1, n)], ebar[dcell],
                                    ebar[wrap(dcell + 1, n)]);
    }
    ftil[i] = g.h * (sum + frac);
  }

  out.resize(n);
  const double inv_h = 1.0 / g.h;
  for (int i = 0; i < n; ++i) {
    out[i] = ebar[i] - (ftil[i] - ftil[wrap(i - 1, n)]) * inv_h;
  }
}

}  // namespace pintcl
