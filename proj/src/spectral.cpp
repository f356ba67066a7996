#include "qbm/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace qbm {

SpectralFunction SpectralFunction::tabulated(std::vector<double> omega,
                                             std::vector<double> value,
                                             Parity parity) {
  if (omega.size() != value.size() || omega.empty())
    throw std::invalid_argument("SpectralFunction: grid size mismatch or empty");
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!(omega[i] > 0.0))
      throw std::invalid_argument("SpectralFunction: grid frequencies must be > 0");
    if (i > 0 && !(omega[i] > omega[i - 1]))
      throw std::invalid_argument(
          "SpectralFunction: grid frequencies must be strictly increasing");
    if (!std::isfinite(value[i]))
      throw std::invalid_argument("SpectralFunction: grid values must be finite");
  }
  SpectralFunction s;
  s.uv_ = omega.back();
  s.grid_w_ = std::move(omega);
  s.grid_v_ = std::move(value);
  s.parity_ = parity;
  return s;
}

double SpectralFunction::eval_positive(double omega) const {
  if (grid_w_.empty()) return fn_(omega);
  if (omega < grid_w_.front() || omega > grid_w_.back())
    throw std::domain_error("SpectralFunction: frequency outside tabulated grid");
  auto it = std::lower_bound(grid_w_.begin(), grid_w_.end(), omega);
  const std::size_t hi = static_cast<std::size_t>(it - grid_w_.begin());
  if (hi == 0 || grid_w_[hi] == omega) return grid_v_[hi];
  const std::size_t lo = hi - 1;
  const double f = (omega - grid_w_[lo]) / (grid_w_[hi] - grid_w_[lo]);
  return grid_v_[lo] + f * (grid_v_[hi] - grid_v_[lo]);
}

double SpectralFunction::operator()(double omega) const {
  if (omega > 0.0) return eval_positive(omega);
  if (omega == 0.0) {
    if (parity_ == Parity::odd) return 0.0;
    if (grid_w_.empty()) return fn_(0.0);
    throw std::domain_error("SpectralFunction: w = 0 not on tabulated grid");
  }
  switch (parity_) {
    case Parity::odd:
      return -eval_positive(-omega);
    case Parity::even:
      return eval_positive(-omega);
    case Parity::none:
      throw std::domain_error(
          "SpectralFunction: negative frequency without a parity tag");
  }
  return 0.0;  // unreachable
}

SpectralFunction SpectralFunction::map_values(
    std::function<double(double, double)> xf, Parity new_parity) const {
  if (!grid_w_.empty()) {
    std::vector<double> v(grid_v_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = xf(grid_w_[i], grid_v_[i]);
    return tabulated(grid_w_, std::move(v), new_parity);
  }
  auto base = fn_;
  auto wrapped = [base, xf = std::move(xf)](double w) { return xf(w, base(w)); };
  return SpectralFunction(std::move(wrapped), new_parity, uv_);
}

}  // namespace qbm
