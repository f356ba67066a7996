#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include "qbm/core.hpp"
#include "qbm/fdt.hpp"
#include "qbm/linear_bath.hpp"
#include "qbm/parallel.hpp"
#include "qbm/quadratic_bath.hpp"
#include "qbm/simd/kernels.hpp"
#include "qbm/spectral.hpp"
#include "qbm/stats.hpp"
#include "qbm/thermal.hpp"

namespace qbm::cli {

namespace {

namespace qb = qbm::quadratic_bath;
namespace lb = qbm::linear_bath;
namespace th = qbm::thermal;

QuadratureConfig quad_config(const RunConfig& c) {
  QuadratureConfig q;
  q.abs_tol = c.abs_tol;
  q.rel_tol = c.rel_tol;
  q.uv_cutoff = c.uv_cutoff;
  return q;
}

ModelParams model_params(const RunConfig& c) {
  return ModelParams{c.mass, c.cutoff, c.temperature};
}

std::vector<double> sweep_or(const std::optional<SweepSpec>& s,
                             const SweepSpec& fallback) {
  return (s ? *s : fallback).points();
}

Table run_cumulants(const RunConfig& c) {
  const ModelParams p = model_params(c);
  const DerivedScales scales = derive_scales(p);
  const QuadratureConfig q = quad_config(c);
  const std::vector<double> ts = sweep_or(c.t_sweep, {1e2, 1e5, 20, true});
  std::vector<int> orders = c.orders.empty() ? std::vector<int>{4} : c.orders;

  Table t;
  t.columns = {"t", "n", "closed", "loglog_slope_closed"};
  if (c.seminumeric) {
    t.columns.push_back("seminumeric");
    t.columns.push_back("seminumeric_over_closed");
  }
  for (int n : orders) {
    std::vector<double> closed(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
      closed[i] = qb::cumulant_closed(n, ts[i], scales);
    const double slope =
        ts.size() > 1 && n > 2 ? stats::fit_loglog_slope(ts, closed)
                               : (n == 2 ? 0.0 : static_cast<double>(n - 2));

    std::vector<double> semi(ts.size(), 0.0);
    if (c.seminumeric) {
      // Sweep points are independent; spread them over the workers.
      std::vector<double> values(ts.size());
      parallel_for_chunks(
          static_cast<std::int64_t>(ts.size()),
          [&](std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i)
              values[i] = qb::cumulant_seminumeric(n, ts[i], p, q);
          });
      semi = values;
    }
    for (std::size_t i = 0; i < ts.size(); ++i) {
      std::vector<Table::Cell> row = {ts[i], static_cast<std::int64_t>(n),
                                      closed[i], slope};
      if (c.seminumeric) {
        row.push_back(semi[i]);
        row.push_back(semi[i] / closed[i]);
      }
      t.add_row(std::move(row));
    }
  }
  return t;
}

Table run_msd(const RunConfig& c) {
  const QuadratureConfig q = quad_config(c);
  const std::vector<double> ts = sweep_or(c.t_sweep, {1e2, 1e4, 10, true});

  struct Model {
    std::string name;
    SpectralFunction imr;
  };
  std::vector<Model> models;
  models.push_back({"linear_a", lb::im_response({lb::Tag::a, 1.0}, c.mass, q.uv_cutoff)});
  models.push_back({"linear_b", lb::im_response({lb::Tag::b, 1.0}, c.mass, q.uv_cutoff)});
  const double m = c.mass;
  models.push_back({"quadratic",
                    SpectralFunction(
                        [m](double w) {
                          const double ic = qb::imchi(w);
                          const double inertial = m * w * w;
                          return ic / (inertial * inertial + ic * ic);
                        },
                        Parity::odd, q.uv_cutoff)});

  Table t;
  t.columns = {"t", "model", "msd", "log_slope"};
  for (const auto& model : models) {
    for (double time : ts) {
      const double v = fdt::msd_from_imresponse(model.imr, time, q);
      const double slope = fdt::msd_log_slope(model.imr, time, 4.0 * time, 3, q);
      t.add_row({time, model.name, v, slope});
    }
  }
  return t;
}

Table run_pdf(const RunConfig& c) {
  const qb::PositionDistribution d(c.lambda_tilde, c.outer);
  Table t;
  t.columns = {"kind", "arg", "value"};
  t.add_row({std::string("normalization"), 0.0, d.total_mass()});
  std::vector<int> orders = c.orders.empty() ? std::vector<int>{2, 4, 6} : c.orders;
  for (int n : orders)
    t.add_row({std::string("moment"), static_cast<double>(n), d.moment(n)});
  if (c.x_sweep)
    for (double x : c.x_sweep->points())
      t.add_row({std::string("density"), x, d.pdf(x)});
  return t;
}

Table run_sample(const RunConfig& c) {
  const qb::PositionDistribution d(c.lambda_tilde, c.outer);
  if (c.count < 1) throw UsageError("sample: count must be >= 1");
  const auto xs = qb::pdf_sample(d, static_cast<std::size_t>(c.count), c.seed);
  Table t;
  t.columns = {"x"};
  t.rows.reserve(xs.size());
  for (double x : xs) t.add_row({x});
  return t;
}

Table run_langevin(const RunConfig& c) {
  th::LangevinConfig lc;
  lc.temperature = c.temperature > 0.0 ? c.temperature : 1.0;
  lc.dt = c.dt;
  lc.n_steps = c.n_steps;
  lc.n_paths = c.n_paths;
  lc.seed = c.seed;
  lc.record_stride = c.record_stride;
  const th::TrajectoryEnsemble ens = th::langevin_ensemble(lc);

  Table t;
  t.columns = {"t",    "msd",  "msd_err", "cum2", "cum2_err",
               "cum3", "cum3_err", "cum4", "cum4_err"};
  for (std::size_t r = 1; r < ens.n_records(); ++r) {
    const double time = ens.times()[r];
    const auto msd = th::ensemble_msd(ens, time);
    const auto k2 = th::empirical_cumulant(ens, 2, time);
    const auto k3 = th::empirical_cumulant(ens, 3, time);
    const auto k4 = th::empirical_cumulant(ens, 4, time);
    t.add_row({time, msd.value, msd.error, k2.value, k2.error, k3.value,
               k3.error, k4.value, k4.error});
  }
  return t;
}

Table run_fdt_check(const RunConfig& c) {
  const QuadratureConfig q = quad_config(c);
  Table t;
  t.columns = {"check", "T", "residual"};

  // Round trip on a deterministic pseudo-random grid at several T.
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> uval(0.1, 5.0);
  std::vector<double> w, v;
  double acc = 0.0;
  for (int i = 0; i < 64; ++i) {
    acc += uval(rng) * 0.1;
    w.push_back(acc);
    v.push_back(uval(rng));
  }
  const SpectralFunction cf = SpectralFunction::tabulated(w, v, Parity::even);
  const std::vector<double> temps =
      c.temperature_sweep ? c.temperature_sweep->points()
                          : std::vector<double>{0.0, 0.5, 1.0, 2.0};
  for (double T : temps) {
    const SpectralFunction back = fdt::cf_from_imchi(fdt::imchi_from_cf(cf, T), T);
    double resid = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      resid = std::max(resid, std::abs(back(w[i]) - v[i]) / v[i]);
    t.add_row({std::string("roundtrip"), T, resid});
  }

  // T = 0 closure of the quadratic model: Im chi = sgn(w) C_F identically.
  double closure = 0.0;
  for (double x = 0.05; x < q.uv_cutoff; x *= 1.31)
    closure = std::max(closure, std::abs(qb::imchi(x) - qb::force_psd(x)));
  t.add_row({std::string("quadratic_closure"), 0.0, closure});

  // Thermal PSD static law against the closed constant 4T^3/3pi.
  for (double T : {0.5, 1.0}) {
    const double num = th::force_psd_static(T, q);
    const double ref = 4.0 * T * T * T / (3.0 * std::numbers::pi);
    t.add_row({std::string("thermal_psd_static"), T,
               std::abs(num - ref) / ref});
  }
  return t;
}

Table run_diagrams(const RunConfig& c) {
  const QuadratureConfig q = quad_config(c);
  std::vector<int> orders =
      c.orders.empty() ? std::vector<int>{2, 4, 6, 8} : c.orders;
  const std::vector<double> omegas = sweep_or(c.omega_sweep, {1.0, 1.0, 1, false});
  Table t;
  t.columns = {"n", "omega", "closed", "bruteforce", "rel_err"};
  for (int n : orders) {
    for (double w : omegas) {
      const double closed = qb::diagram_kernel_closed(n, w);
      const double brute = qb::diagram_kernel_bruteforce(n, w, q);
      t.add_row({static_cast<std::int64_t>(n), w, closed, brute,
                 std::abs(brute - closed) / closed});
    }
  }
  return t;
}

Table run_transport(const RunConfig& c) {
  const std::vector<double> temps =
      sweep_or(c.temperature_sweep, {0.5, 4.0, 8, true});
  Table t;
  t.columns = {"T", "mobility", "diffusion"};
  for (double T : temps) {
    const th::Transport tr = th::transport(T);
    t.add_row({T, tr.mobility, tr.diffusion});
  }
  return t;
}

Table run_ck(const RunConfig& c) {
  const QuadratureConfig q = quad_config(c);
  // Geometry directly from lambda_tilde and outer radii: v = 1 convention,
  // with t1/t2 the wavefront radii in units of length.
  DerivedScales s;
  s.lambda_tilde = c.lambda_tilde;
  s.lambda = c.lambda_tilde * std::sqrt(6.0) * std::numbers::pi;
  s.tau = 1e-3 * c.lambda_tilde;
  s.v = 1.0;
  const double r = qb::ck_residual(c.t1, c.t2, s, q);
  Table t;
  t.columns = {"t1", "t2", "residual", "abs_tol"};
  t.add_row({c.t1, c.t2, r, q.abs_tol});
  return t;
}

}  // namespace

RunOutput execute(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  if (const auto warn = regime_warning(model_params(config));
      warn && (config.subcommand == "cumulants" || config.subcommand == "msd"))
    std::cerr << "warning: " << *warn << '\n';

  RunOutput out;
  if (config.subcommand == "cumulants")
    out.table = run_cumulants(config);
  else if (config.subcommand == "msd")
    out.table = run_msd(config);
  else if (config.subcommand == "pdf")
    out.table = run_pdf(config);
  else if (config.subcommand == "sample")
    out.table = run_sample(config);
  else if (config.subcommand == "langevin")
    out.table = run_langevin(config);
  else if (config.subcommand == "fdt-check")
    out.table = run_fdt_check(config);
  else if (config.subcommand == "diagrams")
    out.table = run_diagrams(config);
  else if (config.subcommand == "transport")
    out.table = run_transport(config);
  else if (config.subcommand == "ck")
    out.table = run_ck(config);
  else
    throw UsageError("unknown subcommand '" + config.subcommand + "'");

  const auto stop = std::chrono::steady_clock::now();
  const double wall_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();

  out.manifest = {{"tool", "qbm"},
                  {"version", kToolVersion},
                  {"config", config.to_json()},
                  {"seed", config.seed},
                  {"isa", simd::isa_name(simd::active_isa())},
                  {"threads", worker_count()},
                  {"wall_time_ms", wall_ms},
                  {"rows", out.table.rows.size()}};
  return out;
}

void write_outputs(const RunOutput& output, const RunConfig& config) {
  std::string payload;
  if (config.format == "csv") {
    payload = output.table.to_csv();
  } else {
    nlohmann::json doc = {{"manifest", output.manifest},
                          {"data", output.table.to_json_rows()}};
    payload = doc.dump(2);
    payload += '\n';
  }
  if (config.out_path.empty()) {
    std::cout << payload;
    return;
  }
  {
    std::ofstream f(config.out_path, std::ios::binary);
    if (!f) throw IoError("cannot open output path '" + config.out_path + "'");
    f << payload;
    if (!f) throw IoError("failed writing '" + config.out_path + "'");
  }
  const std::string mpath = config.out_path + ".manifest.json";
  std::ofstream mf(mpath, std::ios::binary);
  if (!mf) throw IoError("cannot open manifest path '" + mpath + "'");
  mf << output.manifest.dump(2) << '\n';
  if (!mf) throw IoError("failed writing '" + mpath + "'");
}

RunConfig config_from_manifest_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read manifest '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("manifest is not valid JSON: " + std::string(e.what()));
  }
  if (!j.contains("config")) throw UsageError("manifest has no config object");
  return RunConfig::from_json(j.at("config"));
}

}  // namespace qbm::cli
