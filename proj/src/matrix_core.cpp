// Copyright 2026 The ncdisint Authors
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

#include "ncdisint/matrix_core.hpp"

namespace ncdisint::core {

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("size mismatch in comparison");
  return max_abs(a - b);
}

bool is_hermitian(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint().eval()) <= tol.eps_eq;
}

Eigh eigh(const CMatrix& a, const Tolerance& tol) {
  if (!is_hermitian(a, tol)) throw DomainError("eigh requires a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw DomainError("eigendecomposition failed to converge");
  const Eigen::Index n = a.rows();
  Eigh out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order; flip to descending.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = solver.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

bool is_psd(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) return false;
  if (!is_hermitian(a, tol)) return false;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) return false;
  return solver.eigenvalues().minCoeff() >= -tol.eps_psd;
}

bool is_projection(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) return false;
  if (!is_hermitian(a, tol)) return false;
  return max_abs(a * a - a) <= tol.eps_eq;
}

bool is_unitary(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols()) return false;
  const CMatrix gram = a * a.adjoint();
  return max_abs(gram - CMatrix::Identity(a.rows(), a.cols())) <= tol.eps_eq;
}

CMatrix matrix_unit(Eigen::Index dim, Eigen::Index a, Eigen::Index b) {
  if (a < 0 || b < 0 || a >= dim || b >= dim)
    throw DimensionError("matrix unit index out of range");
  CMatrix e = CMatrix::Zero(dim, dim);
  e(a, b) = Complex(1.0, 0.0);
  return e;
}

}  // namespace ncdisint::core
