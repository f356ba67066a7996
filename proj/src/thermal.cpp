#include "qbm/thermal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbm/parallel.hpp"
#include "qbm/quadrature.hpp"
#include "qbm/simd/kernels.hpp"

namespace qbm::thermal {

namespace {

constexpr double kPi = std::numbers::pi;

// csch^2(x) = 4 e^{-2x} / (1 - e^{-2x})^2, stable for all x > 0.
double csch2(double x) {
  const double em = std::expm1(-2.0 * x);  // e^{-2x} - 1
  const double e = std::exp(-2.0 * x);
  return 4.0 * e / (em * em);
}

}  // namespace

double phi_corr(double t, double temperature) {
  if (!(t > 0.0))
    throw std::invalid_argument("phi_corr: t = 0 is ultraviolet divergent");
  if (temperature < 0.0)
    throw std::invalid_argument("phi_corr: temperature must be >= 0");
  if (temperature == 0.0) return 1.0 / (kPi * kPi * t * t);
  const double T = temperature;
  return T * T * csch2(kPi * t * T);
}

double force_corr(double t, double temperature) {
  if (!(t > 0.0))
    throw std::invalid_argument("force_corr: t = 0 is ultraviolet divergent");
  if (temperature < 0.0)
    throw std::invalid_argument("force_corr: temperature must be >= 0");
  if (temperature == 0.0) {
    const double p = kPi * t;
    return 1.0 / (p * p * p * p);
  }
  const double T = temperature;
  const double c2 = csch2(kPi * t * T);
  return T * T * T * T * c2 * c2;
}

double imchi(double omega, double temperature) {
  if (temperature < 0.0)
    throw std::invalid_argument("imchi: temperature must be >= 0");
  return temperature * temperature * omega;
}

bool imchi_regime_ok(double omega, double temperature) {
  return std::abs(omega) <= 0.5 * temperature;
}

namespace {

// Thermal force correlator with its short-time singular pieces removed:
// T^4 csch^4(pi t T) - 1/(pi t)^4 + (2/3) T^2 / (pi t)^2. Smooth at t = 0
// (limit 11 T^4 / 45). Below x = pi t T = 0.05 the direct form cancels
// catastrophically, so the series in x takes over there.
double regularized_force_corr(double t, double T) {
  const double x = kPi * t * T;
  const double T4 = T * T * T * T;
  if (x < 0.05) {
    const double x2 = x * x;
    return T4 * (11.0 / 45.0 - 62.0 / 945.0 * x2 + 41.0 / 2835.0 * x2 * x2);
  }
  const double c2 = csch2(x);
  return T4 * (c2 * c2 - 1.0 / (x * x * x * x) + 2.0 / (3.0 * x * x));
}

// Si(y) by its Maclaurin series; used for y = omega * t_max <= ~2.
double si_series(double y) {
  double u = y;  // y^(2k+1) / (2k+1)!
  double sum = y;
  double sign = 1.0;
  for (int k = 1; k <= 10; ++k) {
    u *= y * y / ((2 * k) * (2 * k + 1));
    sign = -sign;
    sum += sign * u / (2 * k + 1);
  }
  return sum;
}

}  // namespace

double force_psd_static(double temperature, const QuadratureConfig& cfg) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("force_psd_static: temperature must be > 0");
  const double T = temperature;
  const double t_series = 0.05 / (kPi * T);
  const double t_max = 6.0 / T;
  QuadratureConfig c = cfg;
  c.rel_tol = std::max(cfg.rel_tol, 1e-11);
  c.abs_tol = 1e-12 * T * T * T;
  const double head = quad::integrate(
      [T](double t) { return regularized_force_corr(t, T); }, 0.0, t_series, c);
  const double body = quad::integrate(
      [T](double t) { return regularized_force_corr(t, T); }, t_series, t_max, c);
  const double tail = -1.0 / (3.0 * std::pow(kPi, 4) * std::pow(t_max, 3)) +
                      2.0 * T * T / (3.0 * kPi * kPi * t_max);
  return 2.0 * (head + body + tail);
}

double force_psd(double omega, double temperature, const QuadratureConfig& cfg) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("force_psd: temperature must be > 0");
  const double w = std::abs(omega);
  if (w == 0.0) return force_psd_static(temperature, cfg);
  if (w > 0.3 * temperature)
    throw std::invalid_argument(
        "force_psd: valid for |omega| <= 0.3 T (small-frequency expansion)");
  const double T = temperature;
  const double t_series = 0.05 / (kPi * T);
  const double t_max = 6.0 / T;
  QuadratureConfig c = cfg;
  c.rel_tol = std::max(cfg.rel_tol, 1e-11);
  c.abs_tol = 1e-12 * T * T * T;
  auto f = [T, w](double t) {
    return regularized_force_corr(t, T) * std::cos(w * t);
  };
  const double body = quad::integrate(f, 0.0, t_series, c) +
                      quad::integrate(f, t_series, t_max, c);

  // Tails of the subtracted power laws beyond t_max (cos-weighted), then the
  // finite-part transforms of the counterterms themselves.
  const double y = w * t_max;
  const double si_rem = 0.5 * kPi - si_series(y);  // pi/2 - Si(y)
  const double cy = std::cos(y), sy = std::sin(y);
  const double int_cos_t2 = cy / t_max - w * si_rem;
  const double int_cos_t4 = cy / (3.0 * std::pow(t_max, 3)) -
                            w * sy / (6.0 * t_max * t_max) -
                            w * w * cy / (6.0 * t_max) +
                            std::pow(w, 3) / 6.0 * si_rem;
  const double tail = -1.0 / std::pow(kPi, 4) * int_cos_t4 +
                      2.0 * T * T / (3.0 * kPi * kPi) * int_cos_t2;

  const double addback = std::pow(w, 3) / (6.0 * std::pow(kPi, 3)) +
                         2.0 * T * T * w / (3.0 * kPi);
  return 2.0 * (body + tail) + addback;
}

Transport transport(double temperature) {
  if (!(temperature > 0.0))
    throw std::invalid_argument(
        "transport: mobility diverges at T = 0 (Lorentz-invariant vacuum)");
  Transport tr;
  tr.mobility = 1.0 / (temperature * temperature);
  tr.diffusion = temperature * tr.mobility;
  return tr;
}

// ------------------------------ Langevin ------------------------------------

double LangevinConfig::step_coeff() const {
  return std::sqrt(noise_weight() * dt) / friction();
}

void LangevinConfig::validate() const {
  if (!(temperature > 0.0))
    throw std::invalid_argument("LangevinConfig: temperature must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("LangevinConfig: dt must be > 0");
  if (!(dt * temperature < 0.1))
    throw std::invalid_argument(
        "LangevinConfig: dt * T must be < 0.1 to resolve the thermal time");
  if (n_steps < 1) throw std::invalid_argument("LangevinConfig: n_steps >= 1");
  if (n_paths < 1) throw std::invalid_argument("LangevinConfig: n_paths >= 1");
  if (record_stride < 1 || n_steps % record_stride != 0)
    throw std::invalid_argument(
        "LangevinConfig: record_stride must be >= 1 and divide n_steps");
}

TrajectoryEnsemble::TrajectoryEnsemble(LangevinConfig cfg,
                                       std::vector<double> times,
                                       std::vector<double> data)
    : cfg_(cfg), times_(std::move(times)), data_(std::move(data)) {}

std::vector<double> TrajectoryEnsemble::column(std::size_t record) const {
  if (record >= times_.size())
    throw std::out_of_range("TrajectoryEnsemble: record out of range");
  std::vector<double> out(static_cast<std::size_t>(cfg_.n_paths));
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = data_[p * times_.size() + record];
  return out;
}

std::size_t TrajectoryEnsemble::record_index(double t) const {
  for (std::size_t i = 0; i < times_.size(); ++i)
    if (std::abs(times_[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
  throw std::invalid_argument(
      "TrajectoryEnsemble: t is not on the recorded time grid");
}

TrajectoryEnsemble langevin_ensemble(const LangevinConfig& cfg) {
  cfg.validate();
  const std::size_t n_rec =
      static_cast<std::size_t>(cfg.n_steps / cfg.record_stride) + 1;
  std::vector<double> times(n_rec);
  for (std::size_t i = 0; i < n_rec; ++i)
    times[i] = static_cast<double>(i) * cfg.record_stride * cfg.dt;
  std::vector<double> data(static_cast<std::size_t>(cfg.n_paths) * n_rec);

  const double coeff = cfg.step_coeff();
  const auto& table = simd::kernels();
  parallel_for_chunks(cfg.n_paths, [&](std::int64_t begin, std::int64_t end) {
    table.run_paths(cfg.seed, static_cast<std::uint64_t>(begin),
                    static_cast<std::size_t>(end - begin), cfg.n_steps,
                    cfg.record_stride, coeff,
                    data.data() + static_cast<std::size_t>(begin) * n_rec,
                    n_rec);
  });
  return TrajectoryEnsemble(cfg, std::move(times), std::move(data));
}

stats::Estimate empirical_cumulant(const TrajectoryEnsemble& ensemble,
                                   int order, double t) {
  if (order < 1 || order > 4)
    throw std::invalid_argument(
        "empirical_cumulant: orders 1..4 only; the white-noise integrator is "
        "Gaussian, higher thermal cumulants need a non-Gaussian noise model");
  const std::vector<double> x = ensemble.column(ensemble.record_index(t));
  return stats::k_statistic_jackknife(x, order);
}

stats::Estimate ensemble_msd(const TrajectoryEnsemble& ensemble, double t) {
  const std::vector<double> x = ensemble.column(ensemble.record_index(t));
  const stats::PowerSums s = stats::power_sums(x);
  const double n = static_cast<double>(s.n);
  const double mean2 = s.s2 / n;
  const double var2 = s.s4 / n - mean2 * mean2;
  return stats::Estimate{mean2, std::sqrt(std::max(var2, 0.0) / (n - 1.0))};
}

}  // namespace qbm::thermal
