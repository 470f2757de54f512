#pragma once
// CSV emission with a fixed float format (17 significant digits) so output
// files are byte-identical across runs and thread counts.

#include <fstream>
#include <string>
#include <vector>

namespace ltmc {

std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void header(const std::vector<std::string>& cols);
  void row(const std::vector<double>& vals);
  void row_raw(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
};

}  // namespace ltmc
