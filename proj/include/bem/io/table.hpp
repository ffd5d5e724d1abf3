#pragma once
// Minimal delimited-text tables: comma separated, '#' comment lines, one
// required header row. Loaders report the offending line number.

#include <cstdint>
#include <string>
#include <vector>

namespace bem::io {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line per row
  std::vector<std::string> comments;      // leading '#' lines, without '#'

  std::size_t column(const std::string& name) const;  // throws if absent
};

Table read_table(const std::string& path);

double parse_double(const std::string& cell, const std::string& path,
                    std::size_t line);

// FNV-1a, for config hashes embedded in output headers.
std::uint64_t fnv1a(const std::string& s);

}  // namespace bem::io
