// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/io/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace boltzkit {

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open '" + path + "' for write");
  for (std::size_t i = 0; i < header.size(); ++i)
    out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

std::string CsvWriter::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::logic_error("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format(values[i]);
  out_ << '\n';
}

void CsvWriter::row_mixed(const std::vector<std::string>& cells) {
  if (cells.size() != columns_)
    throw std::logic_error("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
}

}  // namespace boltzkit
