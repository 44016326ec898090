#include "vwave/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace vwave {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) out << ',';
    out << header[k];
  }
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::runtime_error("csv row width does not match header: " + path);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out << ',';
      out << format_double(row[k]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failure: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t comma = line.find(',', start);
      std::size_t end = comma == std::string::npos ? line.size() : comma;
      const char* first = line.data() + start;
      const char* last = line.data() + end;
      double v = 0.0;
      if (first == last) {
        throw std::runtime_error("empty csv cell in: " + path);
      }
      // std::from_chars for doubles is available in GCC 11.
      auto res = std::from_chars(first, last, v);
      if (res.ec != std::errc() || res.ptr != last)
        throw std::runtime_error("bad numeric cell '" +
                                 std::string(first, last) + "' in: " + path);
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row.size() != table.header.size())
      throw std::runtime_error("csv row width mismatch in: " + path);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace vwave
