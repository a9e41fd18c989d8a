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

#include <vector>

#include "ncdisint/matrix_core.hpp"

namespace ncdisint::algebra {

using core::CMatrix;
using core::Complex;
using core::Tolerance;

// A finite direct sum of full matrix algebras, identified by its block
// dimensions (n_1, ..., n_t).
struct Algebra {
  std::vector<Eigen::Index> dims;

  [[nodiscard]] Eigen::Index blocks() const {
    return static_cast<Eigen::Index>(dims.size());
  }
  [[nodiscard]] Eigen::Index total_dim() const;
  [[nodiscard]] bool operator==(const Algebra& other) const {
    return dims == other.dims;
  }
  void validate() const;
};

// One element per block; block j is dims[j] x dims[j].
struct AlgebraElement {
  Algebra algebra;
  std::vector<CMatrix> blocks;

  void validate() const;
};

[[nodiscard]] AlgebraElement zero_element(const Algebra& a);
[[nodiscard]] AlgebraElement identity_element(const Algebra& a);
[[nodiscard]] AlgebraElement add(const AlgebraElement& a,
                                 const AlgebraElement& b);
[[nodiscard]] AlgebraElement scale(Complex c, const AlgebraElement& a);
[[nodiscard]] AlgebraElement mul(const AlgebraElement& a,
                                 const AlgebraElement& b);
[[nodiscard]] AlgebraElement dagger(const AlgebraElement& a);
[[nodiscard]] double element_max_abs_diff(const AlgebraElement& a,
                                          const AlgebraElement& b);

// A state in normal form: block weights q_j >= 0 summing to 1 and one density
// matrix per block. Blocks with q_j = 0 still store a density (the maximally
// mixed one, by convention); consumers must not rely on that choice.
struct State {
  Algebra algebra;
  std::vector<double> weights;
  std::vector<CMatrix> densities;
};

// Blockwise support of a state; block j is the zero matrix when q_j = 0.
struct SupportProjection {
  Algebra algebra;
  std::vector<CMatrix> blocks;
};

// Weight at or below eps_rank counts as zero.
[[nodiscard]] bool is_zero_weight(double q, const Tolerance& tol = {});

// Normal form from a tuple of non-negative blocks with total trace 1:
// q_j = tr(block_j) and sigma_j = block_j / q_j (maximally mixed when q_j = 0).
[[nodiscard]] State state_from_density(const Algebra& a,
                                       const std::vector<CMatrix>& blocks,
                                       const Tolerance& tol = {});

[[nodiscard]] SupportProjection support(const State& s,
                                        const Tolerance& tol = {});

// True iff the state vanishes on element* x element, equivalently iff
// element * support(state) = 0.
[[nodiscard]] bool in_null_space(const State& s, const AlgebraElement& a,
                                 const Tolerance& tol = {});

// sum_j q_j tr(sigma_j b_j).
[[nodiscard]] Complex eval_state(const State& s, const AlgebraElement& b);

// The tuple (q_j sigma_j), the unambiguous data of a state.
[[nodiscard]] std::vector<CMatrix> weighted_densities(const State& s);

// Max absolute entry difference between weighted density tuples. Null-block
// densities cancel out, so states differing only there compare equal.
[[nodiscard]] double state_distance(const State& a, const State& b);

}  // namespace ncdisint::algebra
