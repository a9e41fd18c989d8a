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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ncdisint::core {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Shape or block-structure mismatch in an input.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input violates a numerical precondition (not Hermitian, not PSD, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The problem data is inconsistent (states do not match along the given map).
struct IllPosedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Comparison thresholds. eps_eq: entrywise absolute equality; eps_psd:
// eigenvalue floor for positivity; eps_rank: eigenvalue cut for support/rank
// extraction and for treating a probability weight as zero.
struct Tolerance {
  double eps_eq = 1e-9;
  double eps_psd = 1e-9;
  double eps_rank = 1e-8;

  [[nodiscard]] Tolerance scaled(double factor) const {
    return Tolerance{eps_eq * factor, eps_psd * factor, eps_rank * factor};
  }
  void validate() const {
    auto ok = [](double e) { return e > 0.0 && e <= 1e-3; };
    if (!ok(eps_eq) || !ok(eps_psd) || !ok(eps_rank))
      throw DomainError("tolerance fields must lie in (0, 1e-3]");
  }
};

// Kronecker product with the (i,j) block of the result equal to a_ij * b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<
      typename DerivedA::Scalar, typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(
      a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Trace over the left tensor factor: for a (p*n) x (p*n) matrix viewed as a
// p x p grid of n x n blocks, returns the sum of the diagonal blocks, so that
// kron(c, b) maps to tr(c) * b.
template <typename Derived>
auto partial_trace_left(const Eigen::MatrixBase<Derived>& a, Eigen::Index p,
                        Eigen::Index n) {
  if (p < 1 || n < 1 || a.rows() != p * n || a.cols() != p * n)
    throw DimensionError("bad block structure");
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic,
                    Eigen::Dynamic>::Zero(n, n);
  for (Eigen::Index j = 0; j < p; ++j) out += a.block(j * n, j * n, n, n);
  return out;
}

[[nodiscard]] double max_abs(const CMatrix& a);
[[nodiscard]] double max_abs_diff(const CMatrix& a, const CMatrix& b);

[[nodiscard]] bool is_hermitian(const CMatrix& a, const Tolerance& tol = {});

// Hermitian eigendecomposition with eigenvalues sorted descending;
// a = vectors * diag(values) * vectors.adjoint(). Eigenvectors of degenerate
// eigenvalues carry no canonical choice; only spectral projectors are stable.
struct Eigh {
  Eigen::VectorXd values;
  CMatrix vectors;
};
[[nodiscard]] Eigh eigh(const CMatrix& a, const Tolerance& tol = {});

[[nodiscard]] bool is_psd(const CMatrix& a, const Tolerance& tol = {});
[[nodiscard]] bool is_projection(const CMatrix& a, const Tolerance& tol = {});
[[nodiscard]] bool is_unitary(const CMatrix& a, const Tolerance& tol = {});

// Square matrix unit E_ab (zero except for a 1 at row a, column b).
[[nodiscard]] CMatrix matrix_unit(Eigen::Index dim, Eigen::Index a,
                                  Eigen::Index b);

}  // namespace ncdisint::core
