#include "hpr/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "hpr/types.hpp"

namespace hpr {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw Error("write_csv: cannot open " + path);
  }
  file << to_csv(table);
  if (!file) {
    throw Error("write_csv: write failed for " + path);
  }
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidArgument("parse_csv: missing header");
  }
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) table.header.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      const char* comma = p;
      while (comma < end && *comma != ',') ++comma;
      double v = 0.0;
      const auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc() || res.ptr != comma) {
        throw InvalidArgument("parse_csv: bad number in '" + line + "'");
      }
      row.push_back(v);
      p = comma + 1;
    }
    if (row.size() != table.header.size()) {
      throw InvalidArgument("parse_csv: row width differs from header");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error("read_csv: cannot open " + path);
  }
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_csv(buf.str());
}

}  // namespace hpr
