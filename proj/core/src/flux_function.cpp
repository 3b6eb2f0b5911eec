#include "pintcl/flux_function.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace pintcl {

namespace {

// Bracketing bisection for a continuous scalar function with a sign change.
double bisect(const std::function<double(double)>& fn, double lo, double hi) {
  double flo = fn(lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double fmid = fn(mid);
    if ((flo < 0) == (fmid < 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FluxFunction burgers_flux() {
  FluxFunction fl;
  fl.name = "burgers";
  fl.f = [](double u) { return 0.5 * u * u; };
  fl.df = [](double u) { return u; };
  return fl;
}

FluxFunction buckley_leverett_flux() {
  FluxFunction fl;
  fl.name = "buckley_leverett";
  // Denominator 4u^2 + (1-u)^2 = 5u^2 - 2u + 1 (> 0 for all u).
  fl.f = [](double u) {
    double d = 5.0 * u * u - 2.0 * u + 1.0;
    return 4.0 * u * u / d;
  };
  // Quotient rule gives f'(u) = [8u*d - 4u^2*(10u-2)]/d^2 = 8u(1-u)/d^2.
  fl.df = [](double u) {
    double d = 5.0 * u * u - 2.0 * u + 1.0;
    return 8.0 * u * (1.0 - u) / (d * d);
  };
  // f''(u) = 8(10u^3 - 15u^2 + 1)/d^3; the cubic has exactly one root in
  // (0,1), the location of the interior maximum of f'.
  auto cubic = [](double u) { return 10.0 * u * u * u - 15.0 * u * u + 1.0; };
  fl.df_critical_points.push_back(bisect(cubic, 0.0, 1.0));
  return fl;
}

double max_abs_wave_speed(const FluxFunction& fl, double umin, double umax) {
  if (umin > umax) std::swap(umin, umax);
  double best = std::max(std::abs(fl.df(umin)), std::abs(fl.df(umax)));
  for (double c : fl.df_critical_points) {
    if (c > umin && c < umax) best = std::max(best, std::abs(fl.df(c)));
  }
  return best;
}

void run_flux_function_self_check() {
  static std::once_flag flag;
  std::call_once(flag, [] {
    FluxFunction bl = buckley_leverett_flux();
    for (int s = 0; s <= 100; ++s) {
      double u = s / 100.0;
      // Quotient-rule evaluation of the original form f = 4u^2/d.
      double d = 5.0 * u * u - 2.0 * u + 1.0;
      double dd = 10.0 * u - 2.0;
      double quotient = (8.0 * u * d - 4.0 * u * u * dd) / (d * d);
      if (std::abs(quotient - bl.df(u)) > 1e-13) {
        throw std::logic_error("wave-speed derivative self-check failed");
      }
    }
  });
}

}  // namespace pintcl
