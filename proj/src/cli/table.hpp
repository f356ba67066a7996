// table.hpp — the one header-bearing table every run emits, with locale-free
// CSV and JSON encodings that round-trip to the same doubles.

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qbm::cli {

// 17 significant digits, '.' decimal separator, no locale involvement.
std::string format_double(double v);

struct Table {
  using Cell = std::variant<double, std::int64_t, std::string>;

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);

  std::string to_csv() const;
  // Array of one object per row, keyed by column name.
  nlohmann::json to_json_rows() const;
};

}  // namespace qbm::cli
