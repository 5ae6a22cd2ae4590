// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/cli.hpp"

int main(int argc, char** argv) { return boltzkit::run_cli(argc, argv); }
