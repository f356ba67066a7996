#include "table.hpp"

#include <charconv>
#include <stdexcept>

namespace qbm::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("Table: row width does not match header");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (const double* d = std::get_if<double>(&row[c]))
        out += format_double(*d);
      else if (const std::int64_t* i = std::get_if<std::int64_t>(&row[c]))
        out += std::to_string(*i);
      else
        out += std::get<std::string>(row[c]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json Table::to_json_rows() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json obj;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const double* d = std::get_if<double>(&row[c]))
        obj[columns[c]] = *d;
      else if (const std::int64_t* i = std::get_if<std::int64_t>(&row[c]))
        obj[columns[c]] = *i;
      else
        obj[columns[c]] = std::get<std::string>(row[c]);
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

}  // namespace qbm::cli
