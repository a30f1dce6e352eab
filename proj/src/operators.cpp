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

#include "spincount/operators.hpp"

#include <cmath>

namespace spincount {

namespace {

constexpr Complex kI{0.0, 1.0};

bool power_of_two_dim(Eigen::Index d) {
  return d >= 2 && (d & (d - 1)) == 0;
}

void check_shape(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || !power_of_two_dim(m.rows())) {
    throw DimensionMismatch(std::string(what) +
                            ": matrix must be square with dimension 2^n, n>=1");
  }
}

double herm_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

Operator::Operator(Matrix m) : mat(std::move(m)) {
  check_shape(mat, "Operator");
}

DensityMatrix::DensityMatrix(Matrix m) : mat(std::move(m)) {
  check_shape(mat, "DensityMatrix");
}

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("operator product: dimensions differ");
  }
  return Operator(a.mat * b.mat);
}

Operator adjoint(const Operator& a) { return Operator(a.mat.adjoint()); }

Operator identity_op(int dim) {
  return Operator(Matrix::Identity(dim, dim));
}

Operator pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return Operator(m);
}

Operator pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return Operator(m);
}

Operator pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return Operator(m);
}

Operator rotation_gate(double theta, double phase) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix m(2, 2);
  m << c, -kI * s * std::exp(-kI * phase),
      -kI * s * std::exp(kI * phase), c;
  return Operator(m);
}

Operator hadamard_gate() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  m << r, r, r, -r;
  return Operator(m);
}

Operator pseudo_hadamard_gate() {
  return rotation_gate(M_PI / 2.0, M_PI / 2.0);  // 90 about +y
}

Vector basis_vector(int dim, int index) {
  if (index < 0 || index >= dim) {
    throw DimensionMismatch("basis_vector: index out of range");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

DensityMatrix pure_state(const Vector& v) {
  return DensityMatrix(v * v.adjoint());
}

Operator tensor(const Operator& a, const Operator& b) {
  const int da = a.dim(), db = b.dim();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.mat(i, j) * b.mat;
    }
  }
  return Operator(std::move(out));
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

DensityMatrix evolve(const DensityMatrix& rho, const Operator& u) {
  if (rho.dim() != u.dim()) {
    throw DimensionMismatch("evolve: state and operator dimensions differ");
  }
  return DensityMatrix(u.mat * rho.mat * u.mat.adjoint());
}

DensityMatrix partial_trace_target(const DensityMatrix& rho, int n_target) {
  if (n_target < 1) {
    throw DimensionMismatch("partial_trace_target: n_target must be >= 1");
  }
  const int t_dim = 1 << n_target;
  if (rho.dim() != 2 * t_dim) {
    throw DimensionMismatch(
        "partial_trace_target: state dimension must be 2*2^n_target");
  }
  Matrix out = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Complex acc = 0.0;
      for (int t = 0; t < t_dim; ++t) {
        acc += rho.mat(i * t_dim + t, j * t_dim + t);
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

double expectation(const DensityMatrix& rho, const Operator& obs) {
  if (rho.dim() != obs.dim()) {
    throw DimensionMismatch("expectation: dimensions differ");
  }
  if (herm_defect(obs.mat) > 1e-10) {
    throw NonHermitianObservable("expectation: observable is not Hermitian");
  }
  const Complex tr = (rho.mat * obs.mat).trace();
  if (std::abs(tr.imag()) > 1e-10) {
    throw std::runtime_error(
        "expectation: imaginary residue exceeds 1e-10; state is corrupt");
  }
  return tr.real();
}

Operator expm_hermitian(const Operator& h, double t) {
  if (herm_defect(h.mat) > 1e-10) {
    throw NonHermitianInput("expm_hermitian: generator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  }
  const auto& lam = es.eigenvalues();
  const Matrix& v = es.eigenvectors();
  Vector phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    phases(i) = std::exp(-kI * (lam(i) * t));
  }
  return Operator(v * phases.asDiagonal() * v.adjoint());
}

bool equal_up_to_global_phase(const Operator& u, const Operator& v,
                              double tol) {
  if (u.dim() != v.dim()) {
    throw DimensionMismatch("equal_up_to_global_phase: dimensions differ");
  }
  const Matrix overlap = v.mat.adjoint() * u.mat;
  Eigen::Index mi = 0, mj = 0;
  overlap.cwiseAbs().maxCoeff(&mi, &mj);
  const Complex top = overlap(mi, mj);
  if (std::abs(top) < 1e-300) return false;
  const Complex phase = top / std::abs(top);
  return (u.mat - phase * v.mat).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Operator& u, double tol) {
  const Matrix d = u.mat * u.mat.adjoint() -
                   Matrix::Identity(u.dim(), u.dim());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_valid_density(const DensityMatrix& rho, double herm_tol,
                      double trace_tol, double psd_tol) {
  if (herm_defect(rho.mat) > herm_tol) return false;
  if (std::abs(rho.mat.trace().real() - 1.0) > trace_tol ||
      std::abs(rho.mat.trace().imag()) > trace_tol) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat);
  return es.eigenvalues().minCoeff() >= -psd_tol;
}

void assert_valid_density(const DensityMatrix& rho, double herm_tol,
                          double trace_tol, double psd_tol) {
  if (!is_valid_density(rho, herm_tol, trace_tol, psd_tol)) {
    throw std::runtime_error("density matrix failed validity check");
  }
}

}  // namespace spincount
