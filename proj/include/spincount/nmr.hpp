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

#include "spincount/counting.hpp"
#include "spincount/pulses.hpp"

namespace spincount {

// exp(-i H t) for the free two-spin Hamiltonian
//   H = (omega/2) Iz - (omega/2) Sz + pi*j * 2 Iz Sz
// (Iz = sz/2 on the control, Sz = sz/2 on the target; weak coupling).  H is
// diagonal, so the propagator is written down directly; phases are reduced
// mod 2pi in extended precision because omega*t can reach 1e9 rad for the
// very weakly coupled configurations used in verification.
Operator free_propagator(const SpinSystem& sys, double t);

// Hard pulse on both spins.  Ideal mode: exp(-i*theta*b1*(Fx cos p + Fy sin
// p)) with F the total spin operators, i.e. an instantaneous rotation whose
// angle scales with the B1 factor.  Realistic mode: evolve under the full
// Hamiltonian plus the RF term omega1*b1*(Fx cos p + Fy sin p) for
// t = theta/omega1, which tilts the rotation axis off resonance.
Operator pulse_propagator(const SpinSystem& sys, double angle_deg,
                          double phase_deg, double b1_scale = 1.0);

// Scale every off-diagonal element by exp(-t/T2).
DensityMatrix apply_t2(const DensityMatrix& rho, const SpinSystem& sys,
                       double t);

// Field-gradient crusher: zero all off-diagonals except the gradient-immune
// zero-quantum pair |01><10| / |10><01|.
DensityMatrix gradient_crush(const DensityMatrix& rho);

// Average the state over zq_filter_steps free-evolution delays uniformly
// spanning one zero-quantum period 2pi/omega; intended to run after
// gradient_crush, where it cancels the surviving zero-quantum element while
// leaving the diagonal untouched.
DensityMatrix zero_quantum_filter(const DensityMatrix& rho,
                                  const SpinSystem& sys);

// Apply a single event to a state: pulses via pulse_propagator (plus T2 over
// the pulse duration in realistic mode), delays via free_propagator plus T2,
// crush via gradient_crush.
DensityMatrix apply_event(const SpinSystem& sys, const DensityMatrix& rho,
                          const PulseEvent& ev, double b1_scale = 1.0);

DensityMatrix run_sequence(const SpinSystem& sys, const DensityMatrix& rho0,
                           const PulseSequence& seq, double b1_scale = 1.0);

enum class Readout {
  sigma_z,      // Tr(rho * sz x 1), no pulses
  nmr_readout,  // crush, zero-quantum filter, hard 90_y, Tr(rho * sx x 1)
};

double measure_signal(const SpinSystem& sys, const DensityMatrix& rho,
                      Readout method);

// (1 - p) * I/4 + p * |00><00|.
DensityMatrix pseudo_pure_initial(const SpinSystem& sys);

// Per-member B1 scales ~ Normal(1, b1_sigma), derived deterministically from
// (rng_seed, member index) so the same molecules are reused across every
// (oracle, r) acquisition.
std::vector<double> ensemble_b1_scales(const SpinSystem& sys);

// Raw transverse signal for the compiled counting sequence at repetition r:
// ensemble average over B1 members of the four-step phase-cycled readout
// (readout pulse and receiver reference advanced by 90 degrees together).
// The parallel version maps members across OpenMP threads and reduces in
// fixed member order, so its result is bit-identical to the serial one.
double nmr_signal(const SpinSystem& sys, const OracleSpec& f, int r);
double nmr_signal_serial(const SpinSystem& sys, const OracleSpec& f, int r);

// Adapter for the counting layer; one-bit oracles only.
SignalBackend nmr_backend(const SpinSystem& sys);

struct ReadoutRecord {
  std::string oracle_id;
  int r = 0;
  double raw = 0.0;
  double normalized = 0.0;
};

// How an exact propagator product should treat the eps45 delays of the
// selective composites: `full` keeps the J coupling on everywhere (what the
// engine itself integrates); `neglected` zeroes J during those delays, the
// approximation the composites are built on, which is the right reference
// when checking a compiled block against its target gate.
enum class SelectiveDelayCoupling { full, neglected };

// Product of instantaneous ideal pulse propagators and exact free-evolution
// propagators; no relaxation, no crush events allowed.
Operator ideal_sequence_propagator(
    const SpinSystem& sys, const PulseSequence& seq,
    SelectiveDelayCoupling coupling = SelectiveDelayCoupling::full);

}  // namespace spincount
