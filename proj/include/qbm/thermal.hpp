// thermal.hpp — finite-temperature correlators, anomalous transport, and the
// overdamped Langevin ensemble with empirical cumulant estimation.
//
// Scaling prefactors are set to unity throughout; ratios and exponents are
// the physical content.

#pragma once

#include <cstdint>
#include <vector>

#include "qbm/core.hpp"
#include "qbm/stats.hpp"

namespace qbm::thermal {

// Field-gradient correlator T^2 csch^2(pi t T); the T = 0 limit is
// 1/(pi^2 t^2). Rejects t = 0 (ultraviolet divergence).
double phi_corr(double t, double temperature);

// Force correlator T^4 csch^4(pi t T) = phi_corr^2 under unit conventions.
double force_corr(double t, double temperature);

// High-temperature small-frequency dissipation kernel T^2 w. Valid for
// |w| << T; use imchi_regime_ok to test the regime.
double imchi(double omega, double temperature);
bool imchi_regime_ok(double omega, double temperature);

// Static (w -> 0) force PSD obtained by Fourier transforming the thermal
// force correlator with its short-time singular terms removed analytically:
//   C_F(0) = 2 \int_0^inf [T^4 csch^4(pi t T) - 1/(pi t)^4 + (2/3) T^2/(pi t)^2] dt
//          = 4 T^3 / (3 pi).
double force_psd_static(double temperature, const QuadratureConfig& cfg);

// Same transform at small |w| <= 0.3 T; the subtracted power-law pieces are
// restored through their finite-part transforms (|w|^3 and |w| terms).
double force_psd(double omega, double temperature, const QuadratureConfig& cfg);

struct Transport {
  double mobility;   // 1/T^2
  double diffusion;  // T * mobility = 1/T
};

// Transport coefficients; rejects T = 0, where the mobility diverges.
Transport transport(double temperature);

// Overdamped Langevin run: friction T^2, white noise of weight T^3, update
// X_{i+1} = X_i + sqrt(dt/T) xi_i.
struct LangevinConfig {
  double temperature = 1.0;
  double dt = 0.05;
  std::int64_t n_steps = 1000;
  std::int64_t n_paths = 1000;
  std::uint64_t seed = 1;
  std::int64_t record_stride = 1;  // must divide n_steps

  double friction() const { return temperature * temperature; }
  double noise_weight() const {
    return temperature * temperature * temperature;
  }
  double step_coeff() const;  // sqrt(noise * dt) / friction
  void validate() const;
};

class TrajectoryEnsemble {
 public:
  TrajectoryEnsemble(LangevinConfig cfg, std::vector<double> times,
                     std::vector<double> data);

  const LangevinConfig& config() const { return cfg_; }
  const std::vector<double>& times() const { return times_; }
  std::int64_t n_paths() const { return cfg_.n_paths; }
  std::size_t n_records() const { return times_.size(); }
  double displacement(std::int64_t path, std::size_t record) const {
    return data_[static_cast<std::size_t>(path) * times_.size() + record];
  }
  // Displacements of every path at one recorded time.
  std::vector<double> column(std::size_t record) const;
  // Index of the recorded time closest to t (throws if off-grid by > 1e-9).
  std::size_t record_index(double t) const;

 private:
  LangevinConfig cfg_;
  std::vector<double> times_;
  std::vector<double> data_;  // path-major [path][record]
};

// Generates the ensemble. Deterministic in (seed, grid, path count) and
// independent of how paths are sharded across worker threads.
TrajectoryEnsemble langevin_ensemble(const LangevinConfig& cfg);

// Unbiased connected cumulant of the displacement at recorded time t with a
// jackknife error bar. Orders 2..4 (odd orders estimate to ~0). Higher
// thermal cumulants are out of scope: the white-noise integrator is
// Gaussian, so its connected orders > 2 vanish by construction.
stats::Estimate empirical_cumulant(const TrajectoryEnsemble& ensemble,
                                   int order, double t);

// Ensemble mean-square displacement at recorded time t (expectation t/T).
stats::Estimate ensemble_msd(const TrajectoryEnsemble& ensemble, double t);

}  // namespace qbm::thermal
