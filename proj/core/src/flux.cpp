#include "pintcl/flux.hpp"

namespace pintcl {

void dissipation_coefficients(const InterfaceValues& uv, const FluxFunction& fl,
                              const DissipationConfig& cfg, CellField& nu) {
  const int n = static_cast<int>(uv.minus.size());
  nu.resize(n);
  if (cfg.type == DissipationConfig::Type::glf) {
    for (int i = 0; i < n; ++i) nu[i] = cfg.nu_global;
  } else {
    run_flux_function_self_check();
    for (int i = 0; i < n; ++i) nu[i] = llf_coefficient(fl, uv.minus[i], uv.plus[i]);
  }
}

void lf_flux(const InterfaceValues& uv, const FluxFunction& fl, const CellField& nu,
             CellField& fhat) {
  const int n = static_cast<int>(uv.minus.size());
  fhat.resize(n);
  for (int i = 0; i < n; ++i) {
    fhat[i] = lf_flux_single(uv.minus[i], uv.plus[i], nu[i], fl);
  }
}

}  // namespace pintcl
