#include "momsjump/linmodel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace momsjump {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string_view rest(line);
  while (true) {
    auto comma = rest.find(',');
    cells.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

CsvTable read_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (table.header.empty()) {
      table.header = split_line(line);
      continue;
    }
    auto cells = split_line(line);
    if (cells.size() != table.header.size())
      throw DataError(source + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(table.header.size()) + " cells, found " +
                      std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parse_double(cells[j], row[j]))
        throw DataError(source + ":" + std::to_string(line_no) + ": non-numeric value '" + cells[j] +
                        "' in column '" + table.header[j] + "'");
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw DataError(source + ": empty input");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return read_csv(in, path);
}

RegressionData<double> load_data(const CsvTable& table, const std::string& response_column) {
  if (table.header.empty()) throw DataError("table has no columns");
  if (table.rows.size() < 2) throw DataError("at least two data rows are required");

  std::size_t response = table.header.size() - 1;
  if (!response_column.empty()) {
    auto it = std::find(table.header.begin(), table.header.end(), response_column);
    if (it == table.header.end()) throw DataError("response column '" + response_column + "' not found");
    response = static_cast<std::size_t>(it - table.header.begin());
  }

  const auto n = static_cast<Eigen::Index>(table.rows.size());
  const auto p = static_cast<Eigen::Index>(table.header.size() - 1);
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  std::vector<std::string> names;
  for (std::size_t j = 0; j < table.header.size(); ++j)
    if (j != response) names.push_back(table.header[j]);

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    Eigen::Index c = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j == response)
        y(i) = row[j];
      else
        X(i, c++) = row[j];
    }
  }
  return make_regression_data<double>(X, y, std::move(names), table.header[response]);
}

RegressionData<double> load_data_file(const std::string& path, const std::string& response_column) {
  return load_data(read_csv_file(path), response_column);
}

}  // namespace momsjump
