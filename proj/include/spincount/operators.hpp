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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spincount {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonHermitianObservable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NonHermitianInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Dense complex square matrix of dimension 2^n (n >= 1).  Everything in this
// toolkit lives on at most two coupled registers, so dense storage is both
// simpler and faster than any sparse representation.
struct Operator {
  Matrix mat;

  Operator() = default;
  explicit Operator(Matrix m);
  int dim() const { return static_cast<int>(mat.rows()); }
};

// Same structural constraints as Operator; semantically a quantum state.
// Physical validity (hermiticity, unit trace, positivity) is checked on
// demand via assert_valid_density rather than on every arithmetic step.
struct DensityMatrix {
  Matrix mat;

  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m);
  int dim() const { return static_cast<int>(mat.rows()); }
};

Operator operator*(const Operator& a, const Operator& b);
Operator adjoint(const Operator& a);

Operator identity_op(int dim);
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

// exp(-i*theta*(cos(phase)*sx + sin(phase)*sy)/2): a single-qubit rotation by
// `theta` radians about the transverse axis at `phase` radians from +x.
Operator rotation_gate(double theta, double phase);

// 2x2 Hadamard and the 90-degree +y rotation that replaces it at the pulse
// level (both map |0> to the uniform superposition).
Operator hadamard_gate();
Operator pseudo_hadamard_gate();

Vector basis_vector(int dim, int index);
DensityMatrix pure_state(const Vector& v);

// Kronecker product, first factor = most significant (control-first).
Operator tensor(const Operator& a, const Operator& b);
Vector tensor(const Vector& a, const Vector& b);

// U rho U^dagger.
DensityMatrix evolve(const DensityMatrix& rho, const Operator& u);

// Trace out the trailing (target) register of n_target qubits, keeping the
// leading one-qubit control register.  rho.dim must equal 2*2^n_target.
DensityMatrix partial_trace_target(const DensityMatrix& rho, int n_target);

// Tr(rho * obs) for a Hermitian observable; the imaginary residue must be
// below 1e-10 and is discarded.
double expectation(const DensityMatrix& rho, const Operator& obs);

// exp(-i*h*t) for Hermitian h, computed by eigendecomposition so that the
// result is unitary to machine precision at these dimensions.
Operator expm_hermitian(const Operator& h, double t);

// True when u = exp(i*alpha)*v entrywise within tol, with alpha read off the
// largest-magnitude entry of v^dagger * u.
bool equal_up_to_global_phase(const Operator& u, const Operator& v, double tol);

bool is_unitary(const Operator& u, double tol = 1e-12);

// Throws std::runtime_error when rho is not Hermitian (1e-12), unit-trace
// (1e-12) or positive semidefinite (eigenvalues >= -1e-10).
void assert_valid_density(const DensityMatrix& rho,
                          double herm_tol = 1e-12,
                          double trace_tol = 1e-12,
                          double psd_tol = 1e-10);
bool is_valid_density(const DensityMatrix& rho,
                      double herm_tol = 1e-12,
                      double trace_tol = 1e-12,
                      double psd_tol = 1e-10);

}  // namespace spincount
