#include "qbm/core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbm {

void ModelParams::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("ModelParams: mass must be > 0");
  if (!(cutoff > 0.0)) throw std::invalid_argument("ModelParams: cutoff must be > 0");
  if (!(cutoff < mass))
    throw std::invalid_argument(
        "ModelParams: cutoff must be < mass (weak-cutoff regime)");
  if (!(temperature >= 0.0))
    throw std::invalid_argument("ModelParams: temperature must be >= 0");
}

DerivedScales derive_scales(const ModelParams& params) {
  params.validate();
  DerivedScales s;
  s.lambda = 1.0 / params.mass;
  s.lambda_tilde = s.lambda / (std::sqrt(6.0) * std::numbers::pi);
  s.tau = 1.0 / params.mass;
  s.v = 2.0 * params.cutoff / params.mass;
  return s;
}

std::optional<std::string> regime_warning(const ModelParams& params) {
  const double ratio = params.cutoff / params.mass;
  if (ratio > 0.1) {
    return "cutoff/mass = " + std::to_string(ratio) +
           " exceeds 0.1; leading-order closed forms lose accuracy";
  }
  return std::nullopt;
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("QuadratureConfig: tolerances must be > 0");
  if (max_subdiv < 1)
    throw std::invalid_argument("QuadratureConfig: max_subdiv must be >= 1");
  if (pole_halfwidth < 0.0)
    throw std::invalid_argument("QuadratureConfig: pole_halfwidth must be >= 0");
  if (!(uv_cutoff > 0.0))
    throw std::invalid_argument("QuadratureConfig: uv_cutoff must be > 0");
}

}  // namespace qbm
