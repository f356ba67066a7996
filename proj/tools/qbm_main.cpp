// qbm — quantum Brownian motion toolkit for nonlinearly coupled baths.
//
// Subcommands expose every computation as a reproducible run: one
// header-bearing table (csv or json) plus a JSON run manifest from which the
// run can be replayed bit-for-bit (see `qbm rerun`).
//
// Exit codes: 0 success, 2 usage/validation error, 3 numerical-convergence
// failure, 4 I/O error. QBM_THREADS picks the worker count (default: auto).

#include <algorithm>
#include <deque>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "qbm/errors.hpp"
#include "../src/cli/commands.hpp"
#include "../src/cli/run_config.hpp"

namespace {

using qbm::cli::RunConfig;
using qbm::cli::SweepSpec;
using qbm::cli::UsageError;

// Sweep flags arrive as min:max:count:spacing strings and are parsed after
// CLI11 finishes, so config-file values get identical treatment. The deque
// keeps the bound strings at stable addresses.
using SweepSlots = std::deque<std::pair<std::string, std::optional<SweepSpec>*>>;

void add_sweep(CLI::App* cmd, const std::string& flag, const std::string& help,
               SweepSlots& slots, std::optional<SweepSpec>& target) {
  slots.emplace_back(std::string{}, &target);
  cmd->add_option(flag, slots.back().first, help);
}

// Turns a plain key=value config file into --key=value tokens, spliced in
// right after the subcommand so explicit flags (parsed last, TakeLast
// policy) override file values.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(f, line)) {
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line is not key=value: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError("config line has empty key: '" + line + "'");
    tokens.push_back("--" + key + "=" + value);
  }
  // Splice after the subcommand (first non-flag token).
  auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) {
    return !a.empty() && a[0] != '-';
  });
  if (sub == args.end()) return args;
  args.insert(sub + 1, tokens.begin(), tokens.end());
  return args;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  static std::string ignored_config_path;
  cmd->add_option("--config", ignored_config_path,
                  "key=value config file (flags override)");
  cmd->add_option("--m", cfg.mass, "particle mass (natural units)");
  cmd->add_option("--gamma", cfg.cutoff, "transparency cutoff frequency");
  cmd->add_option("--T", cfg.temperature, "temperature");
  cmd->add_option("--seed", cfg.seed, "RNG seed (default 20200513)");
  cmd->add_option("--format", cfg.format, "output format: csv|json");
  cmd->add_option("--out", cfg.out_path,
                  "output file (also writes <out>.manifest.json); stdout if "
                  "omitted");
  cmd->add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance");
  cmd->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance");
  cmd->add_option("--uv", cfg.uv_cutoff, "ultraviolet frequency cutoff");
}

int run_all(int argc, char** argv) {
  CLI::App app{"quantum Brownian motion with nonlinear bath coupling"};
  app.require_subcommand(1);
  // Later occurrences win, so config-file tokens yield to explicit flags.
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RunConfig cfg;
  SweepSlots sweeps;
  std::string manifest_path, rerun_out;

  auto* cumulants = app.add_subcommand(
      "cumulants",
      "closed-form (and optionally reassembled) displacement cumulants");
  add_common(cumulants, cfg);
  cumulants->add_option("--n", cfg.orders, "even cumulant orders")->delimiter(',');
  add_sweep(cumulants, "--t", "time sweep min:max:count:lin|log", sweeps,
            cfg.t_sweep);
  cumulants->add_flag("--seminumeric", cfg.seminumeric,
                      "also evaluate the numeric cumulant pipeline");

  auto* msd = app.add_subcommand(
      "msd", "mean-square displacement of the linear and quadratic models");
  add_common(msd, cfg);
  add_sweep(msd, "--t", "time sweep min:max:count:lin|log", sweeps, cfg.t_sweep);

  auto* pdf = app.add_subcommand(
      "pdf", "truncated power-law density: normalization, moments, table");
  add_common(pdf, cfg);
  pdf->add_option("--lambda-tilde", cfg.lambda_tilde, "inner cutoff");
  pdf->add_option("--vt", cfg.outer, "outer cutoff (wavefront radius)");
  pdf->add_option("--moments", cfg.orders, "moment orders")->delimiter(',');
  add_sweep(pdf, "--x", "density sweep min:max:count:lin|log", sweeps, cfg.x_sweep);

  auto* sample = app.add_subcommand("sample", "draw from the power-law density");
  add_common(sample, cfg);
  sample->add_option("--lambda-tilde", cfg.lambda_tilde, "inner cutoff");
  sample->add_option("--vt", cfg.outer, "outer cutoff");
  sample->add_option("--count", cfg.count, "number of samples");

  auto* langevin = app.add_subcommand(
      "langevin", "overdamped thermal ensemble: MSD and cumulants vs t");
  add_common(langevin, cfg);
  langevin->add_option("--dt", cfg.dt, "time step (dt * T < 0.1)");
  langevin->add_option("--steps", cfg.n_steps, "steps per path");
  langevin->add_option("--paths", cfg.n_paths, "trajectories");
  langevin->add_option("--record-stride", cfg.record_stride,
                       "record every k-th step");

  auto* fdtc = app.add_subcommand(
      "fdt-check", "fluctuation-dissipation round-trip and closure residuals");
  add_common(fdtc, cfg);
  add_sweep(fdtc, "--T-sweep", "temperature sweep min:max:count:lin|log", sweeps,
            cfg.temperature_sweep);

  auto* diagrams = app.add_subcommand(
      "diagrams", "diagram kernel: closed form vs explicit enumeration");
  add_common(diagrams, cfg);
  diagrams->add_option("--n", cfg.orders, "even orders")->delimiter(',');
  add_sweep(diagrams, "--omega", "frequency sweep min:max:count:lin|log", sweeps,
            cfg.omega_sweep);

  auto* transport = app.add_subcommand(
      "transport", "mobility and diffusion constant over a temperature sweep");
  add_common(transport, cfg);
  add_sweep(transport, "--T-sweep", "temperature sweep min:max:count:lin|log",
            sweeps, cfg.temperature_sweep);

  auto* ck = app.add_subcommand(
      "ck", "Chapman-Kolmogorov sup-norm residual (non-Markovianity)");
  add_common(ck, cfg);
  ck->add_option("--lambda-tilde", cfg.lambda_tilde, "inner cutoff");
  ck->add_option("--t1", cfg.t1, "first interval (wavefront radius, v = 1)");
  ck->add_option("--t2", cfg.t2, "second interval");

  auto* rerun = app.add_subcommand("rerun", "replay a run from its JSON manifest");
  rerun->add_option("manifest", manifest_path, "path to <out>.manifest.json")
      ->required();
  rerun->add_option("--out", rerun_out, "override the output path");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());  // parse(vector) wants reversed
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.get_name() << ": " << e.what() << '\n';
    return 2;
  }

  for (const auto& [text, target] : sweeps)
    if (!text.empty()) *target = SweepSpec::parse(text);

  if (rerun->parsed()) {
    RunConfig replay = qbm::cli::config_from_manifest_file(manifest_path);
    if (!rerun_out.empty()) replay.out_path = rerun_out;
    qbm::cli::write_outputs(qbm::cli::execute(replay), replay);
    return 0;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  qbm::cli::write_outputs(qbm::cli::execute(cfg), cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_all(argc, argv);
  } catch (const qbm::cli::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 4;
  } catch (const qbm::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
