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

#include <optional>
#include <string>
#include <vector>

#include "ncdisint/maps.hpp"

namespace ncdisint::disint {

using algebra::Algebra;
using algebra::AlgebraElement;
using algebra::State;
using core::CMatrix;
using core::Tolerance;
using maps::BlockMap;
using maps::BratteliHom;

// A state-preserving hom together with the states on both ends. The source
// state must be the target state seen through the hom; solvers reject the
// problem otherwise.
struct DisintegrationProblem {
  BratteliHom hom;
  State omega;  // on hom.target
  State xi;     // on hom.source
};

// Conditioning weight for one (source block j, target block i) pair, a
// c_ij x c_ij matrix. `unconstrained` marks the placeholder stored when the
// source block carries no weight; any PSD matrix of unit total trace would
// do there.
struct TauEntry {
  CMatrix value;
  bool unconstrained = false;
};

// Indexed [source block][target block]; absent where the multiplicity is 0.
using TauGrid = std::vector<std::vector<std::optional<TauEntry>>>;

struct CertificateCheck {
  std::string name;
  double residual = 0.0;
  bool pass = true;
};

// Residuals of the individual existence conditions; `violated` names the
// first failing one and stays empty on success.
struct Certificate {
  std::vector<CertificateCheck> checks;
  std::string violated;
};

struct DisintegrationResult {
  bool exists = false;
  std::optional<BlockMap> map;
  std::optional<TauGrid> tau;
  Certificate certificate;
};

struct VerifyReport {
  bool cp = false;
  double unitality_residual = 0.0;
  bool unital = false;
  double state_residual = 0.0;
  bool state_preserving = false;
  double section_residual = 0.0;
  bool section_ae_id = false;
  bool pass = false;
};

// Single-block case along the embedding B -> I_p tensor B. Decides whether
// rho factors as tau tensor sigma, extracts the candidate tau, and returns
// the partial-trace disintegration on success.
[[nodiscard]] DisintegrationResult disintegrate_matrix_case(
    const CMatrix& rho, const CMatrix& sigma, Eigen::Index p,
    const Tolerance& tol = {});

// Same decision after conjugating rho back through the given unitary; the
// returned map pre-conjugates its input accordingly.
[[nodiscard]] DisintegrationResult disintegrate_matrix_unitary_case(
    const CMatrix& rho, const CMatrix& sigma, Eigen::Index p, const CMatrix& u,
    const Tolerance& tol = {});

// Full direct-sum case. Extracts every candidate tau block from the diagonal
// superblocks of the conjugated weighted densities, checks reconstruction,
// positivity, and the per-block trace condition, and on success assembles
// the canonical completely positive unital section.
[[nodiscard]] DisintegrationResult disintegrate(
    const DisintegrationProblem& problem, const Tolerance& tol = {});

// Checks a candidate against the three defining conditions: CP/unitality,
// state preservation, and being a section of the hom up to the source
// state's null space.
[[nodiscard]] VerifyReport verify_disintegration(
    const DisintegrationProblem& problem, const BlockMap& candidate,
    const Tolerance& tol = {});

// Two valid disintegrations must agree entrywise on every source block of
// positive weight and everywhere up to the null space.
[[nodiscard]] bool uniqueness_check(const DisintegrationProblem& problem,
                                    const BlockMap& r1, const BlockMap& r2,
                                    const Tolerance& tol = {});

}  // namespace ncdisint::disint
