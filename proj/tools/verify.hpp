// Copyright 2026 The methylq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace methylq::cli {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int samples = 100;
  /// Magnitude of noise added to P+ before the checks; 0 disables.
  double perturb = 0.0;
  bool gates_only = false;
};

/// Invariant suite behind the `verify` and `gates` subcommands.
std::vector<CheckResult> run_invariant_checks(const VerifyOptions& options);

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace methylq::cli
