#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pintcl {

// Cell-averaged unknowns (or any per-cell/per-interface scalar field).
using CellField = std::vector<double>;

// Wrap a signed index into [0, n). Works for any magnitude of |i|.
inline int wrap(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

// Uniform periodic mesh on [-1, 1). Cell I_i = [x_left + i*h, x_left + (i+1)*h).
// Interface slot i refers to x_{i+1/2}, the *east* interface of cell i, so that
// per-interface arrays (fluxes, wave speeds, departure offsets) all share the
// same indexing: slot i sits between cells i and i+1 (periodically).
struct Grid {
  int nx = 0;
  double h = 0.0;

  static constexpr double x_left = -1.0;
  static constexpr double x_right = 1.0;

  Grid() = default;
  explicit Grid(int nx_) : nx(nx_), h((x_right - x_left) / nx_) { assert(nx_ > 0); }

  double length() const { return x_right - x_left; }
  double cell_center(int i) const { return x_left + (i + 0.5) * h; }
  double interface(int i) const { return x_left + (i + 1) * h; }  // x_{i+1/2}
};

// Uniform time grid with nt levels t_n = n*dt, n = 0..nt-1 (nt-1 steps).
struct TimeGrid {
  int nt = 0;
  double dt = 0.0;

  TimeGrid() = default;
  TimeGrid(int nt_, double dt_) : nt(nt_), dt(dt_) { assert(nt_ >= 2); }
  static TimeGrid from_final_time(int nt_, double t_final) {
    return TimeGrid(nt_, t_final / (nt_ - 1));
  }

  double t(int n) const { return n * dt; }
  double t_final() const { return (nt - 1) * dt; }
  int steps() const { return nt - 1; }
};

// Dense space-time vector: nt levels of nx values, level-major storage.
struct SpaceTimeState {
  int nt = 0, nx = 0;
  std::vector<double> data;

  SpaceTimeState() = default;
  SpaceTimeState(int nt_, int nx_) : nt(nt_), nx(nx_), data(static_cast<size_t>(nt_) * nx_, 0.0) {}

  double* level(int n) { return data.data() + static_cast<size_t>(n) * nx; }
  const double* level(int n) const { return data.data() + static_cast<size_t>(n) * nx; }
  std::span<double> level_span(int n) { return {level(n), static_cast<size_t>(nx)}; }
  std::span<const double> level_span(int n) const { return {level(n), static_cast<size_t>(nx)}; }

  void copy_level_in(int n, const CellField& v) {
    assert(static_cast<int>(v.size()) == nx);
    double* dst = level(n);
    for (int i = 0; i < nx; ++i) dst[i] = v[i];
  }
  void copy_level_out(int n, CellField& v) const {
    v.assign(level(n), level(n) + nx);
  }
};

enum class NormKind { two, one, inf };

inline double field_norm(std::span<const double> v, NormKind kind) {
  double acc = 0.0;
  switch (kind) {
    case NormKind::two:
      for (double x : v) acc += x * x;
      return std::sqrt(acc);
    case NormKind::one:
      for (double x : v) acc += std::abs(x);
      return acc;
    case NormKind::inf:
      for (double x : v) acc = std::max(acc, std::abs(x));
      return acc;
  }
  return acc;
}

inline double space_time_norm(const SpaceTimeState& v, NormKind kind) {
  return field_norm({v.data.data(), v.data.size()}, kind);
}

// Temporal coarse/fine splitting with factor m: C-points are {0, m, 2m, ...}
// plus the final level nt-1. When nt-1 is not a multiple of m the last coarse
// interval is short (fewer than m fine steps); coarse operators for it are
// built over the actual number of steps they cover.
struct CFSplitting {
  int m = 0;
  int nt = 0;
  std::vector<int> c_points;  // ascending; front() == 0, back() == nt-1

  static CFSplitting build(int nt, int m) {
    assert(nt >= 2 && m >= 2);
    CFSplitting s;
    s.m = m;
    s.nt = nt;
    for (int n = 0; n < nt - 1; n += m) s.c_points.push_back(n);
    s.c_points.push_back(nt - 1);
    return s;
  }

  int n_coarse() const { return static_cast<int>(c_points.size()); }
  // Fine steps covered by coarse interval j: levels c[j] .. c[j+1].
  int interval_steps(int j) const { return c_points[j + 1] - c_points[j]; }
  bool is_c_point(int n) const { return n == nt - 1 || n % m == 0; }
};

}  // namespace pintcl
