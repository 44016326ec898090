#pragma once

// Minimal numeric CSV: a header row of column names followed by rows of
// doubles printed with shortest round-trip formatting.

#include <string>
#include <vector>

namespace vwave {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Throws std::runtime_error on malformed files.
CsvTable read_csv(const std::string& path);

}  // namespace vwave
