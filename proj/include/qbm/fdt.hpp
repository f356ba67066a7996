// fdt.hpp — fluctuation–dissipation conversions between force spectra and
// dissipation kernels, and mean-square-displacement reconstruction from the
// imaginary part of a response function.

#pragma once

#include "qbm/core.hpp"
#include "qbm/spectral.hpp"

namespace qbm::fdt {

// Im chi(w) = tanh(w / 2T) * C_F(w); the T = 0 limit is sgn(w) * C_F(w).
// Output is tagged odd. Throws on T < 0.
SpectralFunction imchi_from_cf(const SpectralFunction& cf, double temperature);

// Exact inverse of imchi_from_cf on the shared domain. The input must be
// odd. At T > 0 a non-finite ratio near w = 0 surfaces as std::domain_error
// when evaluated.
SpectralFunction cf_from_imchi(const SpectralFunction& imchi, double temperature);

// Zero-temperature MSD at time t from Im R:
//   MSD(t) = (2/pi) \int_0^uv dw (1 - cos w t) Im R(w).
// Handles the integrable 1/w infrared behavior of Im R without an IR cutoff.
// Throws ConvergenceError if the quadrature cannot meet cfg's tolerances.
double msd_from_imresponse(const SpectralFunction& im_response, double t,
                           const QuadratureConfig& cfg);

// Least-squares slope of MSD(t) against ln t over `points` log-spaced times
// in [t_lo, t_hi]. The log-growth coefficient of choice for fits and checks.
double msd_log_slope(const SpectralFunction& im_response, double t_lo,
                     double t_hi, int points, const QuadratureConfig& cfg);

// Real-time MSD for the step response R(t') = mobility * Theta(t' - tau),
// evaluated through the principal-value kernel
//   MSD(t) = (mobility/pi) \int_tau^inf dt' [2/t' - 1/(t'+t) - P/(t'-t)].
// Grows as (2 mobility/pi) ln(t/tau) for t >> tau; serves as an independent
// cross-check of the frequency-domain route.
double msd_from_step_response(double mobility, double tau, double t,
                              const QuadratureConfig& cfg);

}  // namespace qbm::fdt
