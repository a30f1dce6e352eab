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

#include "spincount/spin_system.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spincount {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

void check(const SpinSystem& sys) {
  require(std::isfinite(sys.omega) && sys.omega > 0.0,
          "spin system: omega must be positive and finite");
  require(std::isfinite(sys.j) && sys.j > 0.0,
          "spin system: j must be positive and finite");
  require(sys.t2 > 0.0 && !std::isnan(sys.t2),
          "spin system: t2 must be positive (+inf allowed)");
  require(std::isfinite(sys.omega1) && sys.omega1 > 0.0,
          "spin system: omega1 must be positive and finite");
  require(std::isfinite(sys.b1_sigma) && sys.b1_sigma >= 0.0,
          "spin system: b1_sigma must be non-negative");
  require(sys.ensemble_samples >= 1,
          "spin system: ensemble_samples must be at least 1");
  require(std::isfinite(sys.pseudo_pure_purity) &&
              sys.pseudo_pure_purity >= 0.0 && sys.pseudo_pure_purity <= 1.0,
          "spin system: pseudo_pure_purity must lie in [0, 1]");
  require(std::isfinite(sys.receiver_phase_error),
          "spin system: receiver_phase_error must be finite");
  require(sys.zq_filter_steps >= 1,
          "spin system: zq_filter_steps must be at least 1");
}

std::optional<std::string> weak_coupling_warning(const SpinSystem& sys) {
  const double nu = sys.omega / (2.0 * M_PI);
  if (nu >= 10.0 * sys.j) return std::nullopt;
  std::ostringstream os;
  os << "weak-coupling model is questionable: frequency splitting " << nu
     << " Hz is less than 10*J = " << 10.0 * sys.j << " Hz";
  return os.str();
}

}  // namespace spincount
