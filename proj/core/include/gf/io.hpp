#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace gf::io {

// 17 significant digits: doubles round-trip exactly through the CSVs.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void header(const std::vector<std::string>& names);
  void row(std::span<const double> values);
  void raw_row(const std::vector<std::string>& cells);

 private:
  std::ofstream os_;
};

}  // namespace gf::io
