#pragma once

#include "pintcl/flux_function.hpp"
#include "pintcl/grid.hpp"
#include "pintcl/reconstruction.hpp"

namespace pintcl {

// Lax-Friedrichs dissipation choice. "global" uses one coefficient for the
// whole run, computed from the initial-data range (set_global_from_range);
// "local" maximizes |f'| over the hull of the two interface states.
struct DissipationConfig {
  enum class Type { glf, llf } type = Type::llf;
  double nu_global = 0.0;

  void set_global_from_range(const FluxFunction& fl, double umin, double umax) {
    nu_global = max_abs_wave_speed(fl, umin, umax);
  }
};

// nu for one interface under the local rule: max |f'| over
// [min(um,up), max(um,up)] including interior critical points of f'.
inline double llf_coefficient(const FluxFunction& fl, double um, double up) {
  return max_abs_wave_speed(fl, um, up);
}

// f-hat = (f(um) + f(up))/2 + nu*(um - up)/2.
inline double lf_flux_single(double um, double up, double nu, const FluxFunction& fl) {
  return 0.5 * (fl.f(um) + fl.f(up)) + 0.5 * nu * (um - up);
}

// Per-interface dissipation coefficients for the given interface values.
void dissipation_coefficients(const InterfaceValues& uv, const FluxFunction& fl,
                              const DissipationConfig& cfg, CellField& nu);

// Numerical fluxes for all interfaces; nu as produced above.
void lf_flux(const InterfaceValues& uv, const FluxFunction& fl, const CellField& nu,
             CellField& fhat);

// Linearized flux for a known wave-speed problem (or a frozen linearization):
// fhat_lin = (am*em + ap*ep)/2 + nu*(em - ep)/2, where am/ap are the wave
// speeds multiplying the two one-sided values.
inline double linear_lf_flux(double am, double em, double ap, double ep, double nu) {
  return 0.5 * (am * em + ap * ep) + 0.5 * nu * (em - ep);
}

}  // namespace pintcl
