#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace shocklab {

/// Shortest round-trip decimal form; identical inputs always give identical text.
std::string format_number(double value);

struct CsvTable {
  std::vector<std::string> header;  ///< empty when the file has no header line
  std::vector<std::vector<double>> rows;
};

/// Numeric CSV reader. A first line that does not parse as numbers is taken as the header.
CsvTable read_csv(const std::filesystem::path& path);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(std::initializer_list<double> values);
  void row(std::span<const double> values);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace shocklab
