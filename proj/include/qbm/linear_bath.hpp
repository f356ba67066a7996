// linear_bath.hpp — baseline linearly coupled bath models. Case A couples to
// the field itself (ohmic friction, C_F ~ w), case B to its spatial gradient
// (Abraham–Lorentz friction, C_F ~ w^3). Scaling relations are promoted to
// equalities with unit prefactor; the coupling g^2 carries any prefactor.
//
// Linear baths are Gaussian: this module deliberately exposes second-order
// statistics only. Higher connected cumulants vanish identically.

#pragma once

#include "qbm/core.hpp"
#include "qbm/spectral.hpp"

namespace qbm::linear_bath {

enum class Tag { a, b };

struct LinearCase {
  Tag tag = Tag::a;
  double coupling = 1.0;  // dimensionless g > 0

  void validate() const;
};

// Force power spectral density at w > 0: g^2 w (case A), g^2 w^3 (case B).
double force_psd(const LinearCase& c, double omega);

// Odd extension of the PSD; equals imchi_from_cf(force_psd, T = 0).
double imchi(const LinearCase& c, double omega);

SpectralFunction force_psd_spectral(const LinearCase& c, double uv_cutoff);

// Im R(w) = Im chi / ((m w^2)^2 + (Im chi)^2); Re chi is absorbed into the
// renormalized mass.
SpectralFunction im_response(const LinearCase& c, double mass, double uv_cutoff);

struct MsdResult {
  double value;      // MSD(t)
  double log_slope;  // fitted d MSD / d ln t over [t, 10 t]
};

// Frequency-domain MSD at time t plus the fitted logarithmic growth rate.
MsdResult msd(const LinearCase& c, double mass, double t,
              const QuadratureConfig& cfg);

}  // namespace qbm::linear_bath
