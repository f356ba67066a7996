#include "qbm/fdt.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qbm/quadrature.hpp"

namespace qbm::fdt {

SpectralFunction imchi_from_cf(const SpectralFunction& cf, double temperature) {
  if (temperature < 0.0)
    throw std::invalid_argument("imchi_from_cf: temperature must be >= 0");
  if (temperature == 0.0) {
    // sgn(w) C_F(w) restricted to w > 0 is just C_F; odd tag does the rest.
    return cf.map_values([](double, double v) { return v; }, Parity::odd);
  }
  const double beta_half = 0.5 / temperature;
  return cf.map_values(
      [beta_half](double w, double v) { return std::tanh(w * beta_half) * v; },
      Parity::odd);
}

SpectralFunction cf_from_imchi(const SpectralFunction& imchi,
                               double temperature) {
  if (temperature < 0.0)
    throw std::invalid_argument("cf_from_imchi: temperature must be >= 0");
  if (imchi.parity() != Parity::odd)
    throw std::invalid_argument("cf_from_imchi: input must be odd");
  if (temperature == 0.0)
    return imchi.map_values([](double, double v) { return v; }, Parity::even);
  const double beta_half = 0.5 / temperature;
  return imchi.map_values(
      [beta_half](double w, double v) {
        const double r = v / std::tanh(w * beta_half);
        if (!std::isfinite(r))
          throw std::domain_error(
              "cf_from_imchi: Im chi / tanh(w/2T) diverges near w = 0");
        return r;
      },
      Parity::even);
}

double msd_from_imresponse(const SpectralFunction& im_response, double t,
                           const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw std::invalid_argument("msd_from_imresponse: t must be > 0");
  const double uv = std::min(cfg.uv_cutoff, im_response.uv_cutoff());
  const double lo = im_response.domain_lo();
  auto g = [&](double w) { return im_response(w); };
  quad::Result r;
  if (lo == 0.0) {
    r = quad::one_minus_cos_integral(g, uv, t, cfg);
  } else {
    // Tabulated input: integrate over its own support.
    r = quad::integrate_adaptive(
        [&](double w) { return (1.0 - std::cos(w * t)) * g(w); }, lo, uv, cfg);
  }
  if (!r.converged)
    throw ConvergenceError("msd_from_imresponse: quadrature not converged",
                           r.abs_err);
  return 2.0 / std::numbers::pi * r.value;
}

double msd_log_slope(const SpectralFunction& im_response, double t_lo,
                     double t_hi, int points, const QuadratureConfig& cfg) {
  if (!(t_hi > t_lo) || !(t_lo > 0.0) || points < 2)
    throw std::invalid_argument("msd_log_slope: bad fit window");
  std::vector<double> lx(points), y(points);
  const double step = std::log(t_hi / t_lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double t = t_lo * std::exp(step * i);
    lx[i] = std::log(t);
    y[i] = msd_from_imresponse(im_response, t, cfg);
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < points; ++i) {
    mx += lx[i];
    my += y[i];
  }
  mx /= points;
  my /= points;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < points; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

double msd_from_step_response(double mobility, double tau, double t,
                              const QuadratureConfig& cfg) {
  if (!(tau > 0.0) || !(t > tau))
    throw std::invalid_argument("msd_from_step_response: requires t > tau > 0");
  if (mobility == 0.0) return 0.0;

  // Integrand of the real-time kernel for constant response past tau.
  auto k = [t](double tp) {
    return 2.0 / tp - 1.0 / (tp + t) - 1.0 / (tp - t);
  };
  const double t_max = 50.0 * t;
  const double eps0 = std::min(0.125 * (t - tau), 0.05 * t);
  quad::Result pv = quad::principal_value(k, tau, t_max, t, eps0, cfg);
  // Constant-response tail beyond t_max, where the kernel is smooth:
  // \int_X^inf k = ln(1 - t^2/X^2).
  const double tail = std::log1p(-(t / t_max) * (t / t_max));
  if (!pv.converged)
    throw ConvergenceError("msd_from_step_response: PV quadrature not converged",
                           pv.abs_err);
  return mobility / std::numbers::pi * (pv.value + tail);
}

}  // namespace qbm::fdt
