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

#include "spincount/circuit.hpp"

#include <cmath>

namespace spincount {

namespace {

constexpr Complex kI{0.0, 1.0};

Operator basis_gate_1q(BasisGate basis) {
  return basis == BasisGate::hadamard ? hadamard_gate()
                                      : pseudo_hadamard_gate();
}

Operator tensor_power(const Operator& g, int n) {
  Operator out = g;
  for (int i = 1; i < n; ++i) out = tensor(out, g);
  return out;
}

// |0><0| x I + |1><1| x u, control first.
Operator controlled(const Operator& u) {
  const int d = u.dim();
  Matrix out = Matrix::Zero(2 * d, 2 * d);
  out.topLeftCorner(d, d) = Matrix::Identity(d, d);
  out.bottomRightCorner(d, d) = u.mat;
  return Operator(std::move(out));
}

void require_nonnegative_r(int r) {
  if (r < 0) throw NegativeRepetitions("repetition count must be >= 0");
}

void check_k_range(int k, int big_n) {
  if (big_n < 2 || (big_n & (big_n - 1)) != 0) {
    throw std::invalid_argument("domain size must be a power of two >= 2");
  }
  if (k < 0 || k > big_n) {
    throw std::invalid_argument("match count must lie in [0, N]");
  }
}

// Inner loop of the kickback circuit: (1 x B) CU0 (1 x B^-1) CUf, which
// multiplies out to controlled-G exactly because the uncontrolled basis
// gates cancel on the control-0 block.
Operator kickback_loop(const OracleSpec& f, BasisGate basis) {
  const int n = f.n;
  const Operator bt = tensor_power(basis_gate_1q(basis), n);
  const Operator i2 = identity_op(2);
  return tensor(i2, bt) * controlled(u0_unitary(n)) *
         tensor(i2, adjoint(bt)) * controlled(oracle_unitary(f));
}

}  // namespace

OracleSpec OracleSpec::named(const std::string& id) {
  OracleSpec f;
  f.n = 1;
  f.label = id;
  if (id == "f00") {
    f.table = {false, false};
  } else if (id == "f01") {
    f.table = {false, true};
  } else if (id == "f10") {
    f.table = {true, false};
  } else if (id == "f11") {
    f.table = {true, true};
  } else {
    throw std::invalid_argument("unknown oracle name: " + id);
  }
  return f;
}

OracleSpec OracleSpec::from_table(std::vector<bool> t, std::string label) {
  const size_t size = t.size();
  if (size < 2 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("oracle table size must be a power of two >= 2");
  }
  OracleSpec f;
  f.n = 0;
  for (size_t s = size; s > 1; s >>= 1) ++f.n;
  f.table = std::move(t);
  if (label.empty()) {
    label.reserve(size);
    for (bool b : f.table) label.push_back(b ? '1' : '0');
  }
  f.label = std::move(label);
  return f;
}

int OracleSpec::match_count() const {
  int k = 0;
  for (bool b : table) k += b ? 1 : 0;
  return k;
}

Operator oracle_unitary(const OracleSpec& f) {
  const int d = f.domain_size();
  Matrix m = Matrix::Zero(d, d);
  for (int x = 0; x < d; ++x) {
    m(x, x) = f(x) ? 1.0 : -1.0;  // (-1)^(f(x)+1)
  }
  return Operator(std::move(m));
}

Operator u0_unitary(int n) {
  if (n < 1) throw DimensionMismatch("u0_unitary: n must be >= 1");
  const int d = 1 << n;
  Matrix m = Matrix::Identity(d, d);
  m(0, 0) = -1.0;
  return Operator(std::move(m));
}

Operator grover_iterate(const OracleSpec& f, BasisGate basis) {
  const Operator b = tensor_power(basis_gate_1q(basis), f.n);
  return b * u0_unitary(f.n) * adjoint(b) * oracle_unitary(f);
}

GroverEigensystem grover_eigensystem(const OracleSpec& f) {
  const int big_n = f.domain_size();
  const int k = f.match_count();
  GroverEigensystem out;
  out.phase.k = k;
  out.phase.big_n = big_n;
  out.phase.phi = std::acos(1.0 - 2.0 * static_cast<double>(k) / big_n);

  if (k == 0 || k == big_n) {
    // Degenerate span: the uniform state itself is the eigenvector, with
    // eigenvalue exp(i*0) = +1 (k=0) or exp(i*pi) = -1 (k=N).
    Vector uniform = Vector::Constant(big_n, 1.0 / std::sqrt(double(big_n)));
    out.psi_plus = uniform;
    out.psi_minus = uniform;
    return out;
  }

  Vector match = Vector::Zero(big_n);
  Vector rest = Vector::Zero(big_n);
  for (int x = 0; x < big_n; ++x) {
    (f(x) ? match : rest)(x) = 1.0;
  }
  match /= std::sqrt(static_cast<double>(k));
  rest /= std::sqrt(static_cast<double>(big_n - k));

  // Phased so that (psi_plus + psi_minus)/sqrt(2) is the uniform state.
  const Complex ph = std::exp(kI * (out.phase.phi / 2.0));
  out.psi_plus = ph * (rest - kI * match) / std::sqrt(2.0);
  out.psi_minus = std::conj(ph) * (rest + kI * match) / std::sqrt(2.0);
  return out;
}

DensityMatrix counting_circuit_state(const OracleSpec& f, int r,
                                     BasisGate basis) {
  require_nonnegative_r(r);
  const int n = f.n;
  const Operator bc = basis_gate_1q(basis);
  const Operator bt = tensor_power(basis_gate_1q(basis), n);
  const Operator loop = kickback_loop(f, basis);

  Operator u = tensor(bc, bt);
  for (int i = 0; i < r; ++i) u = loop * u;
  u = tensor(adjoint(bc), adjoint(bt)) * u;

  const Vector ground = basis_vector(2 * f.domain_size(), 0);
  return partial_trace_target(evolve(pure_state(ground), u), n);
}

DensityMatrix eigenvector_seeded_control_state(const OracleSpec& f, int r) {
  require_nonnegative_r(r);
  const GroverEigensystem es = grover_eigensystem(f);
  const Operator h_on_control = tensor(hadamard_gate(),
                                       identity_op(f.domain_size()));
  const Operator loop = kickback_loop(f, BasisGate::hadamard);

  Operator u = h_on_control;
  for (int i = 0; i < r; ++i) u = loop * u;
  u = h_on_control * u;

  const Vector seed = tensor(basis_vector(2, 0), es.psi_plus);
  return partial_trace_target(evolve(pure_state(seed), u), f.n);
}

double ideal_signal(int k, int big_n, int r) {
  check_k_range(k, big_n);
  require_nonnegative_r(r);
  const double phi = std::acos(1.0 - 2.0 * static_cast<double>(k) / big_n);
  return std::cos(r * phi);
}

double measured_signal(const OracleSpec& f, int r, BasisGate basis) {
  return expectation(counting_circuit_state(f, r, basis), pauli_z());
}

}  // namespace spincount
