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

#include <cstdint>
#include <optional>
#include <string>

namespace spincount {

enum class PulseMode { ideal, realistic };

// Two homonuclear spins I (control) and S (target) in the rotating frame at
// the midpoint of their resonances: I precesses at +omega/2, S at -omega/2,
// weakly coupled through J.  Angular quantities are rad/s except j (Hz).
struct SpinSystem {
  double omega = 2.0 * 3.14159265358979323846 * 700.0;   // rad/s splitting
  double j = 7.0;                                        // Hz coupling
  double t2 = 1.5;                                       // s, may be +inf
  double omega1 = 2.0 * 3.14159265358979323846 * 1.0e4;  // rad/s RF field
  double b1_sigma = 0.05;        // relative pulse-amplitude spread
  int ensemble_samples = 64;     // members of the B1 ensemble
  PulseMode pulse_mode = PulseMode::ideal;
  std::uint64_t rng_seed = 1;
  double pseudo_pure_purity = 1.0;      // weight of |00><00| over I/4
  double receiver_phase_error = 0.0;    // rad, phase-cycle imperfection
  int zq_filter_steps = 4;              // delays averaged by the filter
};

// Throws std::invalid_argument when a parameter is out of range
// (omega, j, omega1 > 0; t2 > 0 (inf allowed); b1_sigma >= 0;
// ensemble_samples >= 1; purity in [0, 1]; zq_filter_steps >= 1).
void check(const SpinSystem& sys);

// Non-fatal advice: the free-evolution model assumes weak coupling, which
// wants omega/2pi >= 10*j.
std::optional<std::string> weak_coupling_warning(const SpinSystem& sys);

}  // namespace spincount
