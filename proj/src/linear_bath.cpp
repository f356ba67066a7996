#include "qbm/linear_bath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbm/errors.hpp"
#include "qbm/fdt.hpp"

namespace qbm::linear_bath {

void LinearCase::validate() const {
  if (!(coupling > 0.0))
    throw std::invalid_argument("LinearCase: coupling must be > 0");
}

double force_psd(const LinearCase& c, double omega) {
  c.validate();
  if (!(omega > 0.0))
    throw std::invalid_argument(
        "force_psd: positive-frequency convention, omega must be > 0");
  const double g2 = c.coupling * c.coupling;
  return c.tag == Tag::a ? g2 * omega : g2 * omega * omega * omega;
}

double imchi(const LinearCase& c, double omega) {
  if (omega == 0.0) return 0.0;
  const double v = force_psd(c, std::abs(omega));
  return omega > 0.0 ? v : -v;
}

SpectralFunction force_psd_spectral(const LinearCase& c, double uv_cutoff) {
  c.validate();
  return SpectralFunction([c](double w) { return force_psd(c, w); },
                          Parity::even, uv_cutoff);
}

SpectralFunction im_response(const LinearCase& c, double mass,
                             double uv_cutoff) {
  c.validate();
  if (!(mass > 0.0)) throw std::invalid_argument("im_response: mass must be > 0");
  return SpectralFunction(
      [c, mass](double w) {
        const double ic = imchi(c, w);
        const double inertial = mass * w * w;
        return ic / (inertial * inertial + ic * ic);
      },
      Parity::odd, uv_cutoff);
}

MsdResult msd(const LinearCase& c, double mass, double t,
              const QuadratureConfig& cfg) {
  if (!(t > 0.0)) throw std::invalid_argument("msd: t must be > 0");
  SpectralFunction imr = im_response(c, mass, cfg.uv_cutoff);

  // Five log-spaced samples over [t, 10t]: the first is the requested value,
  // the set fits the growth law a ln t + b and verifies it actually holds.
  constexpr int kPoints = 5;
  double lx[kPoints], y[kPoints];
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double ti = t * std::pow(10.0, i / double(kPoints - 1));
    lx[i] = std::log(ti);
    y[i] = fdt::msd_from_imresponse(imr, ti, cfg);
    mx += lx[i];
    my += y[i];
  }
  mx /= kPoints;
  my /= kPoints;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double worst = 0.0;
  for (int i = 0; i < kPoints; ++i)
    worst = std::max(worst, std::abs(slope * lx[i] + intercept - y[i]));
  const double span = std::abs(y[kPoints - 1] - y[0]);
  if (span > 0.0 && worst > 0.05 * span)
    throw ConvergenceError(
        "msd: growth is not logarithmic over [t, 10t] (is t >> 1/m?)", worst);

  return MsdResult{y[0], slope};
}

}  // namespace qbm::linear_bath
