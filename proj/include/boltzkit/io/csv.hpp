// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace boltzkit {

/// CSV writer emitting full-precision decimal floats (17 significant
/// digits) so re-runs are byte comparable across languages.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& cells);
  static std::string format(double v);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace boltzkit
