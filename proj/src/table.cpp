#include "bem/io/table.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bem::io {

std::size_t Table::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end())
    throw std::runtime_error("missing required column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  Table t;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '#') {
      if (!have_header) t.comments.push_back(line.substr(1));
      continue;
    }
    auto cells = split(line);
    if (!have_header) {
      t.columns = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.columns.size())
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected " + std::to_string(t.columns.size()) +
                               " columns, got " + std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
    t.line_numbers.push_back(lineno);
  }
  if (!have_header) throw std::runtime_error(path + ": missing header row");
  return t;
}

double parse_double(const std::string& cell, const std::string& path,
                    std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(cell, &pos);
    if (pos != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(path + ":" + std::to_string(line) +
                             ": not a number: '" + cell + "'");
  }
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace bem::io
