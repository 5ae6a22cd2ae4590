// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Acceptance runner: executes the verification suite (optionally a subset
// via --criterion N, repeatable) and exits nonzero when any selected
// criterion fails.

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "boltzkit/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> filter;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      filter.push_back(std::atoi(argv[++i]));
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]...\n";
      return 2;
    }
  }
  const auto results = boltzkit::run_verification(std::cout, filter);
  if (results.empty()) {
    std::cerr << "no criteria selected\n";
    return 2;
  }
  return boltzkit::verification_exit_code(results);
}
