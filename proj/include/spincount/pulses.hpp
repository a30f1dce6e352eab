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

#include "spincount/circuit.hpp"
#include "spincount/spin_system.hpp"

namespace spincount {

struct InfeasibleTiming : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EventKind { hard_pulse, delay, gradient_crush };

// One entry of a pulse program.  Hard pulses hit both spins; selectivity is
// only ever achieved by composites of hard pulses and delays.  Phases follow
// the usual quadrature convention: x=0, y=90, -x=180, -y=270 degrees.
struct PulseEvent {
  EventKind kind = EventKind::delay;
  double angle_deg = 0.0;
  double phase_deg = 0.0;
  double duration_s = 0.0;

  static PulseEvent pulse(double angle_deg, double phase_deg);
  static PulseEvent wait(double seconds);
  static PulseEvent crush();
};

struct PulseSequence {
  std::string label;
  std::vector<PulseEvent> events;
};

// Delays only in ideal mode; in realistic mode each pulse additionally costs
// angle/omega1 seconds.
double total_duration(const PulseSequence& seq, const SpinSystem& sys);

// Echo-sandwich delays for the controlled phase gate and the short
// precession periods used by the selective composites:
//   4*delta + eps270 = 1/(2 j),  eps270 = 3 pi/omega,  eps45 = pi/(2 omega).
struct TimingSolution {
  double delta;
  double eps270;
  double eps45;
};

// Throws InfeasibleTiming when 1/(2 j) <= 3 pi/omega (delta would not be
// positive).
TimingSolution solve_timing(const SpinSystem& sys);

enum class Spin { I, S };
enum class Axis { x, y };
enum class AxisSign { plus_x, minus_x, plus_y, minus_y };

// 90-degree rotation of one spin about a signed transverse axis, synthesized
// from a hard 45 about that axis plus a hard-90 sandwich around an eps45
// delay (during which the two spins precess by +/-45 about z; the small
// coupling is neglected over eps45).
PulseSequence compile_selective_90(Spin target, AxisSign axis,
                                   const SpinSystem& sys);

// Two selective 90s back to back.
PulseSequence compile_selective_180(Spin target, Axis axis,
                                    const SpinSystem& sys);

// Controlled phase gate for a one-bit oracle, control = spin I:
//   f01 -> diag(1,1,-1,1): delay/180/delay/180/delay echo that retains the
//          full J evolution while leaving a net 270-degree z precession;
//   f10 -> diag(1,1,1,-1): the f01 block flanked by selective 180s on S;
//   f00 -> diag(1,1,-1,-1): composite z-180 on I from two selective 180s;
//   f11 -> identity: empty sequence.
PulseSequence compile_controlled_oracle(const OracleSpec& f,
                                        const SpinSystem& sys);

// Controlled phase flip of the target |0>: identical matrix to the f01 gate
// on a one-bit target.
PulseSequence compile_controlled_u0(const SpinSystem& sys);

// Full counting experiment: hard 90_y, then r repetitions of
// [oracle block, selective 90(S,-y), controlled-U0 block, selective
// 90(S,+y)], then hard 90_-y.  Readout events are appended by the engine,
// not here.
PulseSequence compile_counting_sequence(const OracleSpec& f, int r,
                                        const SpinSystem& sys);

// One event per line: "PULSE <angle>deg <phase>deg", "DELAY <seconds>",
// "CRUSH"; reals carry 12 significant digits.
std::string format_sequence(const PulseSequence& seq);

}  // namespace spincount
