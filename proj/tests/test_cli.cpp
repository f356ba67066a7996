#include "doctest.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../src/cli/commands.hpp"
#include "../src/cli/run_config.hpp"
#include "../src/cli/table.hpp"

using namespace qbm::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("qbm_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> parse_csv_numbers(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec == std::errc() && res.ptr == cell.data() + cell.size())
        row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("sweep spec: parse, points, validation") {
  const SweepSpec s = SweepSpec::parse("1e2:1e5:4:log");
  CHECK(s.count == 4);
  CHECK(s.log_spacing);
  const auto p = s.points();
  CHECK(p.front() == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(p.back() == 100000.0);
  CHECK(p[1] == doctest::Approx(1000.0).epsilon(1e-12));

  const auto lin = SweepSpec::parse("0:10:11:lin").points();
  CHECK(lin[3] == doctest::Approx(3.0).epsilon(1e-14));

  CHECK_THROWS_AS(SweepSpec::parse("1:2:3"), UsageError);
  CHECK_THROWS_AS(SweepSpec::parse("2:1:5:lin"), UsageError);
  CHECK_THROWS_AS(SweepSpec::parse("0:1:5:log"), UsageError);
  CHECK_THROWS_AS(SweepSpec::parse("a:1:5:lin"), UsageError);
}

TEST_CASE("format_double: 17 significant digits, round-trip exact") {
  for (double v : {1.0 / 3.0, 6.02214076e23, -1.25e-17, 0.0, 12345.678901234567}) {
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
    CHECK(s.find(',') == std::string::npos);
  }
}

TEST_CASE("table: header first line, width checks") {
  Table t;
  t.columns = {"a", "b"};
  t.add_row({1.5, std::string("x")});
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  const std::string csv = t.to_csv();
  CHECK(csv.substr(0, 4) == "a,b\n");
  CHECK(csv.find("1.5,x\n") != std::string::npos);
}

TEST_CASE("execute: diagrams table matches the closed kernel to 1e-8") {
  RunConfig c;
  c.subcommand = "diagrams";
  c.orders = {2, 4, 6, 8};
  c.omega_sweep = SweepSpec{1.0, 1.0, 1, false};
  const RunOutput out = execute(c);
  CHECK(out.table.rows.size() == 4);
  for (const auto& row : out.table.rows) {
    const double rel = std::get<double>(row[4]);
    CHECK(rel < 1e-8);
  }
  CHECK(out.manifest.at("tool") == "qbm");
  CHECK(out.manifest.at("config").at("subcommand") == "diagrams");
}

TEST_CASE("execute: cumulants table carries the exact power-law slope") {
  RunConfig c;
  c.subcommand = "cumulants";
  c.orders = {4};
  c.t_sweep = SweepSpec{1e2, 1e5, 20, true};
  const RunOutput out = execute(c);
  CHECK(out.table.rows.size() == 20);
  for (const auto& row : out.table.rows)
    CHECK(std::get<double>(row[3]) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("execute: unknown subcommand and invalid ranges are usage errors") {
  RunConfig c;
  c.subcommand = "frobnicate";
  CHECK_THROWS_AS(execute(c), UsageError);
  c.subcommand = "cumulants";
  c.format = "xml";
  CHECK_THROWS_AS(execute(c), UsageError);
}

TEST_CASE("reproducibility: identical configs give byte-identical tables") {
  RunConfig c;
  c.subcommand = "langevin";
  c.temperature = 1.0;
  c.dt = 0.05;
  c.n_steps = 100;
  c.n_paths = 500;
  c.record_stride = 50;
  c.seed = 7;
  const std::string a = execute(c).table.to_csv();
  const std::string b = execute(c).table.to_csv();
  CHECK(a == b);

  c.seed = 8;
  CHECK(execute(c).table.to_csv() != a);
}

TEST_CASE("format parity: csv and json carry identical values") {
  RunConfig c;
  c.subcommand = "transport";
  c.temperature_sweep = SweepSpec{0.5, 4.0, 7, true};
  const RunOutput out = execute(c);
  const auto csv_rows = parse_csv_numbers(out.table.to_csv());
  const auto json_rows = out.table.to_json_rows();
  REQUIRE(csv_rows.size() == json_rows.size());
  for (std::size_t i = 0; i < csv_rows.size(); ++i) {
    const auto& jr = json_rows[i];
    REQUIRE(csv_rows[i].size() == 3);
    // Bitwise equality after the text round trip.
    CHECK(csv_rows[i][0] == jr.at("T").get<double>());
    CHECK(csv_rows[i][1] == jr.at("mobility").get<double>());
    CHECK(csv_rows[i][2] == jr.at("diffusion").get<double>());
  }
}

TEST_CASE("write_outputs + rerun from manifest reproduce the table exactly") {
  TempDir dir;
  RunConfig c;
  c.subcommand = "sample";
  c.count = 5000;
  c.seed = 99;
  c.lambda_tilde = 1.0;
  c.outer = 10.0;
  c.format = "csv";
  c.out_path = (dir.path / "samples.csv").string();
  write_outputs(execute(c), c);

  const fs::path manifest = dir.path / "samples.csv.manifest.json";
  REQUIRE(fs::exists(manifest));
  const std::string original = slurp(c.out_path);
  CHECK(original.substr(0, 2) == "x\n");

  RunConfig replay = config_from_manifest_file(manifest.string());
  replay.out_path = (dir.path / "replayed.csv").string();
  write_outputs(execute(replay), replay);
  CHECK(slurp(replay.out_path) == original);
}

TEST_CASE("json format embeds manifest and data keys") {
  RunConfig c;
  c.subcommand = "pdf";
  c.lambda_tilde = 1.0;
  c.outer = 10.0;
  c.orders = {2, 4, 6};
  c.format = "json";
  const RunOutput out = execute(c);
  nlohmann::json doc = {{"manifest", out.manifest},
                        {"data", out.table.to_json_rows()}};
  CHECK(doc.contains("manifest"));
  CHECK(doc.contains("data"));
  // normalization row: 1 - (1/10)^2.
  CHECK(doc["data"][0]["value"].get<double>() == doctest::Approx(0.99).epsilon(1e-14));
  // moment rows match the analytic values.
  CHECK(doc["data"][2]["value"].get<double>() == doctest::Approx(99.0).epsilon(1e-12));
}

TEST_CASE("write_outputs: unwritable path raises IoError") {
  RunConfig c;
  c.subcommand = "transport";
  c.temperature_sweep = SweepSpec{1.0, 2.0, 2, false};
  c.out_path = "/nonexistent_dir_qbm/out.csv";
  CHECK_THROWS_AS(write_outputs(execute(c), c), IoError);
}
