// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

namespace boltzkit {

/// Entry point behind the boltzkit binary. Exit codes: 0 success,
/// 1 bound/assertion failure, 2 configuration error.
int run_cli(int argc, char** argv);

}  // namespace boltzkit
