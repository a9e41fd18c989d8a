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

#include "ncdisint/classical.hpp"
#include "ncdisint/disintegration.hpp"

namespace ncdisint::measure {

using core::CMatrix;
using core::Tolerance;
using maps::BratteliHom;

// Hermitian matrix with its spectral decomposition: distinct eigenvalues in
// descending order and the matching orthogonal projectors, which sum to the
// identity.
struct Observable {
  CMatrix matrix;
  std::vector<double> spectrum;
  std::vector<CMatrix> projectors;
};

// Spectral decomposition with clustering: eigenvalues closer than
// 100 * eps_rank merge into one spectral point whose projector spans the
// combined eigenspace.
[[nodiscard]] Observable make_observable(const CMatrix& a,
                                         const Tolerance& tol = {});

// The hom from functions on the spectrum into the matrix algebra, sending
// the indicator of each eigenvalue to its projector.
[[nodiscard]] BratteliHom spectral_hom(const Observable& obs,
                                       const Tolerance& tol = {});

// Born probabilities q_lambda = tr(rho P_lambda).
[[nodiscard]] classical::FinProb outcome_distribution(const Observable& obs,
                                                      const CMatrix& rho,
                                                      const Tolerance& tol = {});

// Post-measurement state when the outcome is forgotten:
// sum_lambda P_lambda rho P_lambda.
[[nodiscard]] CMatrix luders(const Observable& obs, const CMatrix& rho,
                             const Tolerance& tol = {});

// Retrodiction kernel for the measurement. A disintegration exists exactly
// when rho survives the Lüders projection unchanged; each component of the
// constructed map evaluates against the renormalized collapsed state, with
// the normalized trace standing in on outcomes of probability zero.
[[nodiscard]] disint::DisintegrationResult measurement_disintegration(
    const Observable& obs, const CMatrix& rho, const Tolerance& tol = {});

}  // namespace ncdisint::measure
