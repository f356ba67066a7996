#include "run_config.hpp"

#include <cmath>
#include <sstream>

namespace qbm::cli {

SweepSpec SweepSpec::parse(const std::string& text) {
  SweepSpec s;
  std::istringstream in(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 4)
    throw UsageError("sweep must be min:max:count:spacing, got '" + text + "'");
  try {
    s.min = std::stod(parts[0]);
    s.max = std::stod(parts[1]);
    s.count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("sweep has non-numeric fields: '" + text + "'");
  }
  if (parts[3] == "lin")
    s.log_spacing = false;
  else if (parts[3] == "log")
    s.log_spacing = true;
  else
    throw UsageError("sweep spacing must be lin or log, got '" + parts[3] + "'");
  s.validate();
  return s;
}

void SweepSpec::validate() const {
  if (count < 1) throw UsageError("sweep count must be >= 1");
  if (count > 1 && !(max > min))
    throw UsageError("sweep needs max > min for count > 1");
  if (log_spacing && !(min > 0.0))
    throw UsageError("log sweep needs min > 0");
}

std::vector<double> SweepSpec::points() const {
  validate();
  std::vector<double> p(static_cast<std::size_t>(count));
  if (count == 1) {
    p[0] = min;
    return p;
  }
  if (log_spacing) {
    const double step = std::log(max / min) / (count - 1);
    for (int i = 0; i < count; ++i) p[i] = min * std::exp(step * i);
  } else {
    const double step = (max - min) / (count - 1);
    for (int i = 0; i < count; ++i) p[i] = min + step * i;
  }
  p.back() = max;
  return p;
}

std::string SweepSpec::str() const {
  std::ostringstream out;
  out.precision(17);
  out << min << ':' << max << ':' << count << ':' << (log_spacing ? "log" : "lin");
  return out.str();
}

void RunConfig::validate() const {
  if (format != "csv" && format != "json")
    throw UsageError("format must be csv or json, got '" + format + "'");
  if (t_sweep) t_sweep->validate();
  if (omega_sweep) omega_sweep->validate();
  if (temperature_sweep) temperature_sweep->validate();
  if (x_sweep) x_sweep->validate();
  for (int n : orders)
    if (n < 1) throw UsageError("orders must be positive integers");
}

namespace {

nlohmann::json sweep_json(const std::optional<SweepSpec>& s) {
  if (!s) return nullptr;
  return {{"min", s->min},
          {"max", s->max},
          {"count", s->count},
          {"spacing", s->log_spacing ? "log" : "lin"}};
}

std::optional<SweepSpec> sweep_from_json(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  SweepSpec s;
  s.min = j.at("min").get<double>();
  s.max = j.at("max").get<double>();
  s.count = j.at("count").get<int>();
  s.log_spacing = j.at("spacing").get<std::string>() == "log";
  return s;
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  return {{"subcommand", subcommand},
          {"mass", mass},
          {"cutoff", cutoff},
          {"temperature", temperature},
          {"t_sweep", sweep_json(t_sweep)},
          {"omega_sweep", sweep_json(omega_sweep)},
          {"temperature_sweep", sweep_json(temperature_sweep)},
          {"x_sweep", sweep_json(x_sweep)},
          {"orders", orders},
          {"lambda_tilde", lambda_tilde},
          {"outer", outer},
          {"t1", t1},
          {"t2", t2},
          {"count", count},
          {"dt", dt},
          {"n_steps", n_steps},
          {"n_paths", n_paths},
          {"record_stride", record_stride},
          {"seminumeric", seminumeric},
          {"abs_tol", abs_tol},
          {"rel_tol", rel_tol},
          {"uv_cutoff", uv_cutoff},
          {"seed", seed},
          {"format", format},
          {"out_path", out_path}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  c.subcommand = j.at("subcommand").get<std::string>();
  c.mass = j.at("mass").get<double>();
  c.cutoff = j.at("cutoff").get<double>();
  c.temperature = j.at("temperature").get<double>();
  c.t_sweep = sweep_from_json(j.at("t_sweep"));
  c.omega_sweep = sweep_from_json(j.at("omega_sweep"));
  c.temperature_sweep = sweep_from_json(j.at("temperature_sweep"));
  c.x_sweep = sweep_from_json(j.at("x_sweep"));
  c.orders = j.at("orders").get<std::vector<int>>();
  c.lambda_tilde = j.at("lambda_tilde").get<double>();
  c.outer = j.at("outer").get<double>();
  c.t1 = j.at("t1").get<double>();
  c.t2 = j.at("t2").get<double>();
  c.count = j.at("count").get<std::int64_t>();
  c.dt = j.at("dt").get<double>();
  c.n_steps = j.at("n_steps").get<std::int64_t>();
  c.n_paths = j.at("n_paths").get<std::int64_t>();
  c.record_stride = j.at("record_stride").get<std::int64_t>();
  c.seminumeric = j.at("seminumeric").get<bool>();
  c.abs_tol = j.at("abs_tol").get<double>();
  c.rel_tol = j.at("rel_tol").get<double>();
  c.uv_cutoff = j.at("uv_cutoff").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.format = j.at("format").get<std::string>();
  c.out_path = j.at("out_path").get<std::string>();
  c.validate();
  return c;
}

}  // namespace qbm::cli
