// run_config.hpp — the resolved configuration of one CLI run. Serializes to
// the run manifest and back, so any output can be regenerated from its
// manifest alone.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qbm::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 20200513;

class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sweep syntax: min:max:count:spacing with spacing in {lin, log}.
struct SweepSpec {
  double min = 1.0;
  double max = 10.0;
  int count = 10;
  bool log_spacing = false;

  static SweepSpec parse(const std::string& text);
  std::vector<double> points() const;
  std::string str() const;
  void validate() const;
};

struct RunConfig {
  std::string subcommand;

  // Model parameters.
  double mass = 1.0;
  double cutoff = 0.1;
  double temperature = 0.0;

  // Sweeps (each subcommand uses the ones it needs).
  std::optional<SweepSpec> t_sweep;
  std::optional<SweepSpec> omega_sweep;
  std::optional<SweepSpec> temperature_sweep;
  std::optional<SweepSpec> x_sweep;

  std::vector<int> orders;

  // Distribution geometry (pdf / sample / ck).
  double lambda_tilde = 1.0;
  double outer = 10.0;  // v * t for the truncated power law

  // Chapman–Kolmogorov times.
  double t1 = 10.0;
  double t2 = 10.0;

  // Sampler / Langevin.
  std::int64_t count = 100000;
  double dt = 0.05;
  std::int64_t n_steps = 500;
  std::int64_t n_paths = 10000;
  std::int64_t record_stride = 50;

  bool seminumeric = false;

  // Numerics.
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double uv_cutoff = 1e3;

  std::uint64_t seed = kDefaultSeed;
  std::string format = "csv";  // csv | json
  std::string out_path;        // empty: table to stdout, no manifest file

  void validate() const;
  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

}  // namespace qbm::cli
