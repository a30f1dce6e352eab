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

#include "spincount/operators.hpp"

namespace spincount {

struct NegativeRepetitions : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Boolean function on n bits given as a truth table indexed by the integer
// value of the input string.  The four one-bit oracles carry their
// conventional names: f00 (no match), f01 (x=1 matches), f10 (x=0 matches),
// f11 (both match).
struct OracleSpec {
  int n = 1;
  std::vector<bool> table;
  std::string label;

  static OracleSpec named(const std::string& id);     // f00/f01/f10/f11
  static OracleSpec from_table(std::vector<bool> t, std::string label = "");

  int domain_size() const { return 1 << n; }
  int match_count() const;
  bool operator()(int x) const { return table.at(static_cast<size_t>(x)); }
};

enum class BasisGate { hadamard, pseudo_hadamard };

// Phase-flip oracle: |x> -> (-1)^(f(x)+1)|x>, so matching inputs keep their
// sign and non-matching inputs are negated.  For f11 this is the identity.
Operator oracle_unitary(const OracleSpec& f);

// diag(-1, 1, ..., 1) on n qubits: phase flip on |0...0> only.
Operator u0_unitary(int n);

// G = B * U0 * B^-1 * Uf (Uf applied first), with B the n-fold tensor power
// of the chosen basis gate.  Acts on the target register only.
Operator grover_iterate(const OracleSpec& f, BasisGate basis);

struct Eigenphase {
  double phi = 0.0;  // in [0, pi], cos(phi) = 1 - 2k/N
  int k = 0;
  int big_n = 0;
};

struct GroverEigensystem {
  Eigenphase phase;
  Vector psi_plus;   // eigenvalue exp(+i*phi)
  Vector psi_minus;  // eigenvalue exp(-i*phi)
};

// Closed-form eigenpair of the iterate on the span of matching/non-matching
// uniform superpositions, phased so that (psi_plus + psi_minus)/sqrt(2)
// equals the uniform superposition over the whole domain.  For k = 0 and
// k = N the pair degenerates to that single uniform state.
GroverEigensystem grover_eigensystem(const OracleSpec& f);

// Reduced control state of the phase-kickback counting circuit: both
// registers start in |0>, B is applied to both, then r repetitions of
// [controlled-Uf, B^-1 on target, controlled-U0, B on target], then B^-1 on
// both; the target register is traced out.
DensityMatrix counting_circuit_state(const OracleSpec& f, int r,
                                     BasisGate basis = BasisGate::hadamard);

// Same kickback experiment but with the target seeded directly in psi_plus
// and Hadamards on the control; the reduced control state is then the full
// [[1+cos, i sin], [-i sin, 1-cos]]/2 matrix including off-diagonals, which
// a ground-seeded target only reproduces on the diagonal for 0 < k < N.
DensityMatrix eigenvector_seeded_control_state(const OracleSpec& f, int r);

// cos(r * arccos(1 - 2k/N)).
double ideal_signal(int k, int big_n, int r);

// <sigma_z> of counting_circuit_state: the gate-level signal backend.
double measured_signal(const OracleSpec& f, int r,
                       BasisGate basis = BasisGate::hadamard);

}  // namespace spincount
