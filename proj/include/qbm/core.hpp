// core.hpp — model parameters, derived physical scales, quadrature settings.
//
// Everything works in natural units hbar = c = k_B = 1. The CLI attaches
// unit conversions on output only; no kernel ever sees an SI quantity.

#pragma once

#include <optional>
#include <string>

namespace qbm {

// Particle/bath parameters. `mass` and `temperature` are energies, `cutoff`
// is the frequency above which the particle is transparent to bath modes.
struct ModelParams {
  double mass = 1.0;
  double cutoff = 0.1;
  double temperature = 0.0;

  // Throws std::invalid_argument unless m > 0, 0 < cutoff < m, T >= 0.
  void validate() const;
};

// Length/time/velocity scales implied by ModelParams.
struct DerivedScales {
  double lambda;        // de Broglie wavelength, 1/m
  double lambda_tilde;  // inner distribution cutoff, lambda/(sqrt(6) pi)
  double tau;           // short time scale, 1/m
  double v;             // wavefront speed as a fraction of c, 2*cutoff/m
};

DerivedScales derive_scales(const ModelParams& params);

// The closed forms are leading order in cutoff/m; past cutoff/m = 0.1 they
// degrade. Returns a human-readable note in that case, nothing otherwise.
std::optional<std::string> regime_warning(const ModelParams& params);

// Shared knobs for the adaptive quadrature stack.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdiv = 4000;
  // Largest excision half-width used for principal-value poles before the
  // eps -> 0 extrapolation; 0 means "let the caller of the PV routine pick".
  double pole_halfwidth = 0.0;
  double uv_cutoff = 1e3;

  void validate() const;
};

}  // namespace qbm
