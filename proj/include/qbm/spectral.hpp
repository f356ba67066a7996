// spectral.hpp — SpectralFunction: a function of frequency with parity
// metadata, either a closed-form kernel or a sampled grid. Houses force
// spectra C_F(w), dissipation kernels Im chi(w) and response tails Im R(w).

#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qbm {

enum class Parity { odd, even, none };

class SpectralFunction {
 public:
  // Closed-form kernel defined for w in (0, uv_cutoff]; negative frequencies
  // are reached through the parity extension.
  SpectralFunction(std::function<double(double)> fn, Parity parity,
                   double uv_cutoff)
      : fn_(std::move(fn)), parity_(parity), uv_(uv_cutoff) {
    if (!(uv_ > 0.0))
      throw std::invalid_argument("SpectralFunction: uv_cutoff must be > 0");
    if (!fn_) throw std::invalid_argument("SpectralFunction: null kernel");
  }

  // Sampled representation on strictly increasing positive frequencies.
  static SpectralFunction tabulated(std::vector<double> omega,
                                    std::vector<double> value, Parity parity);

  double operator()(double omega) const;

  Parity parity() const noexcept { return parity_; }
  double uv_cutoff() const noexcept { return uv_; }
  bool is_tabulated() const noexcept { return !grid_w_.empty(); }
  // Lowest frequency at which the function is directly defined.
  double domain_lo() const noexcept {
    return grid_w_.empty() ? 0.0 : grid_w_.front();
  }
  const std::vector<double>& grid_omega() const { return grid_w_; }
  const std::vector<double>& grid_value() const { return grid_v_; }

  // New SpectralFunction with values xf(w, old(w)) and the given parity;
  // keeps the representation (grid stays a grid, kernel stays a kernel).
  SpectralFunction map_values(std::function<double(double, double)> xf,
                              Parity new_parity) const;

 private:
  SpectralFunction() = default;

  double eval_positive(double omega) const;

  std::function<double(double)> fn_;
  std::vector<double> grid_w_, grid_v_;
  Parity parity_ = Parity::none;
  double uv_ = 0.0;
};

}  // namespace qbm
