#include "ltmc/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace ltmc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open output file: " + path);
}

void CsvWriter::header(const std::vector<std::string>& cols) { row_raw(cols); }

void CsvWriter::row(const std::vector<double>& vals) {
  std::vector<std::string> cells;
  cells.reserve(vals.size());
  for (double v : vals) cells.push_back(format_double(v));
  row_raw(cells);
}

void CsvWriter::row_raw(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace ltmc
