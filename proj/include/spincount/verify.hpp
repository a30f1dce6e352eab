/* Copyright 2026 The Spincount Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <string>
#include <vector>

#include "spincount/spin_system.hpp"

namespace spincount {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Cross-module consistency suite used by the CLI's verify subcommand: timing
// constraints, iterate spectra, eigensystem closed forms, compiled-block
// propagators and the pulse-vs-gate pipeline equivalence, all evaluated on
// the supplied spin system.  Checks that cannot run (e.g. infeasible
// timing) are reported as failures with the error message as detail.
std::vector<CheckResult> run_verification(const SpinSystem& sys);

}  // namespace spincount
