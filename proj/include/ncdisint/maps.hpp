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

#include <functional>
#include <optional>
#include <vector>

#include "ncdisint/algebra.hpp"

namespace ncdisint::maps {

using algebra::Algebra;
using algebra::AlgebraElement;
using algebra::State;
using core::CMatrix;
using core::Complex;
using core::Tolerance;

// Linear map between direct-sum algebras, stored componentwise as Choi
// matrices. choi[j][i] represents the component from source block i
// (dimension m) to target block j (dimension n) as an m-by-m grid of n-by-n
// blocks, where grid cell (a,b) is the image of the matrix unit E_ab.
struct BlockMap {
  Algebra source;
  Algebra target;
  std::vector<std::vector<CMatrix>> choi;

  void validate() const;
};

// Operator-sum form: ops[j][i] is a list of n_j-by-m_i operators V acting as
// A -> sum V A V*. Not unique; use the Choi form for equality tests.
struct KrausSet {
  Algebra source;
  Algebra target;
  std::vector<std::vector<std::vector<CMatrix>>> ops;
};

// Unital *-homomorphism in multiplicity form. Block i of the image is
// U_i * diag(B_1 x c_i1, ..., B_t x c_it) * U_i^adj, so the target dimensions
// satisfy m_i = sum_j c_ij n_j.
struct BratteliHom {
  Algebra source;
  Algebra target;
  std::vector<std::vector<Eigen::Index>> multiplicities;
  std::vector<CMatrix> unitaries;

  void validate(const Tolerance& tol = {}) const;
};

// Contraction of one Choi component against a source matrix.
[[nodiscard]] CMatrix apply_component(const CMatrix& choi, const CMatrix& a);

[[nodiscard]] AlgebraElement apply(const BlockMap& map,
                                   const AlgebraElement& a);

// Assembles the Choi grid of an arbitrary linear action by evaluating it on
// every matrix unit of the source.
[[nodiscard]] BlockMap from_action(
    const Algebra& source, const Algebra& target,
    const std::function<AlgebraElement(const AlgebraElement&)>& action);

[[nodiscard]] BlockMap identity_map(const Algebra& a);

// Max absolute entry difference across the two Choi grids.
[[nodiscard]] double choi_max_abs_diff(const BlockMap& f, const BlockMap& g);

// Complete positivity, equivalent to every Choi component being PSD.
[[nodiscard]] bool is_cp(const BlockMap& map, const Tolerance& tol = {});

[[nodiscard]] double unitality_residual(const BlockMap& map);
[[nodiscard]] bool is_unital(const BlockMap& map, const Tolerance& tol = {});

// Applies the map to `samples` random PSD inputs and checks the outputs stay
// PSD. A failure disproves positivity; success does not prove it.
[[nodiscard]] bool is_positive_heuristic(const BlockMap& map, int samples,
                                         const Tolerance& tol = {});

// Operator-sum form from the spectral decomposition of each Choi component,
// keeping eigenvalues above eps_rank. Requires a CP map.
[[nodiscard]] KrausSet kraus_from_choi(const BlockMap& map,
                                       const Tolerance& tol = {});

[[nodiscard]] BlockMap kraus_to_choi(const KrausSet& kraus);

// Hilbert-Schmidt adjoint: <B, map(A)> = <adjoint(map)(B), A> entrywise.
// The component grid transposes, so the result maps target to source.
[[nodiscard]] BlockMap adjoint(const BlockMap& map);

// g after f; requires f.target = g.source.
[[nodiscard]] BlockMap compose(const BlockMap& g, const BlockMap& f);

// The state omega composed with the map, computed through the adjoint acting
// on weighted densities. Requires a unital map whose adjoint sends the given
// density tuple to a density tuple.
[[nodiscard]] State pullback_state(const BlockMap& map, const State& omega,
                                   const Tolerance& tol = {});

struct AeWitness {
  Eigen::Index block = 0;
  Eigen::Index row = 0;
  Eigen::Index col = 0;
};

struct AeComparison {
  bool ae_equal = false;
  bool equal = false;
  double ae_residual = 0.0;
  double eq_residual = 0.0;
  // First source matrix unit (block-major, then row-major) violating a.e.
  // equality, or plain equality when only that fails; absent if both hold.
  std::optional<AeWitness> witness;
};

// Equality after right-multiplication by the support of xi, checked on every
// source matrix unit. xi lives on the shared target algebra of f and g.
[[nodiscard]] AeComparison ae_compare(const BlockMap& f, const BlockMap& g,
                                      const State& xi,
                                      const Tolerance& tol = {});
[[nodiscard]] bool ae_equal(const BlockMap& f, const BlockMap& g,
                            const State& xi, const Tolerance& tol = {});

[[nodiscard]] AlgebraElement bratteli_apply(const BratteliHom& hom,
                                            const AlgebraElement& b);

[[nodiscard]] BlockMap bratteli_to_blockmap(const BratteliHom& hom);

// Unital, adjoint-preserving, and multiplicative on all pairs of matrix
// units. Complete at these dimensions because matrix units span.
[[nodiscard]] bool verify_hom(const BlockMap& map, const Tolerance& tol = {});

}  // namespace ncdisint::maps
