// Minimal CSV writing and reading with round-trip exact doubles.
#pragma once

#include <string>
#include <vector>

namespace hpr {

/// Shortest form at 17 significant digits; parses back to the same double.
[[nodiscard]] std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
[[nodiscard]] std::string to_csv(const CsvTable& table);
[[nodiscard]] CsvTable read_csv(const std::string& path);
[[nodiscard]] CsvTable parse_csv(const std::string& text);

}  // namespace hpr
