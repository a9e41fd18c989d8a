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

#include "ncdisint/measurement.hpp"

#include <cmath>
#include <utility>

namespace ncdisint::measure {

using algebra::Algebra;
using core::DimensionError;
using core::DomainError;

namespace {

void require_density(const CMatrix& rho, const Tolerance& tol) {
  if (!core::is_psd(rho, tol)) {
    throw DomainError("rho is not positive semidefinite");
  }
  if (std::abs(rho.trace().real() - 1.0) > 10 * tol.eps_eq) {
    throw DomainError("rho does not have unit trace");
  }
}

void require_compatible(const Observable& obs, const CMatrix& rho) {
  if (rho.rows() != obs.matrix.rows() || rho.cols() != obs.matrix.cols()) {
    throw DimensionError("rho does not match the observable's dimension");
  }
}

Eigen::Index projector_rank(const CMatrix& p) {
  return static_cast<Eigen::Index>(std::llround(p.trace().real()));
}

}  // namespace

Observable make_observable(const CMatrix& a, const Tolerance& tol) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionError("observable must be a square matrix");
  }
  if (!core::is_hermitian(a, tol)) {
    throw DomainError("observable must be Hermitian");
  }
  const core::Eigh ed = core::eigh(a, tol);
  const Eigen::Index m = a.rows();

  Observable obs{a, {}, {}};
  Eigen::Index start = 0;
  while (start < m) {
    Eigen::Index end = start + 1;
    while (end < m &&
           ed.values(end - 1) - ed.values(end) <= 100 * tol.eps_rank) {
      ++end;
    }
    double mean = 0.0;
    CMatrix proj = CMatrix::Zero(m, m);
    for (Eigen::Index k = start; k < end; ++k) {
      mean += ed.values(k);
      proj += ed.vectors.col(k) * ed.vectors.col(k).adjoint();
    }
    obs.spectrum.push_back(mean / static_cast<double>(end - start));
    obs.projectors.push_back(std::move(proj));
    start = end;
  }
  return obs;
}

BratteliHom spectral_hom(const Observable& obs, const Tolerance& tol) {
  const Eigen::Index m = obs.matrix.rows();
  const auto t = static_cast<Eigen::Index>(obs.spectrum.size());
  BratteliHom hom;
  hom.source = Algebra{std::vector<Eigen::Index>(static_cast<std::size_t>(t), 1)};
  hom.target = Algebra{{m}};
  hom.multiplicities.assign(
      1, std::vector<Eigen::Index>(static_cast<std::size_t>(t), 0));

  // Column block for eigenvalue lambda: an orthonormal basis of its
  // eigenspace, read off the projector's spectral decomposition.
  CMatrix u(m, m);
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < obs.projectors.size(); ++k) {
    const Eigen::Index rank = projector_rank(obs.projectors[k]);
    hom.multiplicities[0][k] = rank;
    const core::Eigh ed = core::eigh(obs.projectors[k], tol);
    for (Eigen::Index r = 0; r < rank; ++r) {
      u.col(col++) = ed.vectors.col(r);
    }
  }
  if (col != m) {
    throw DomainError("projector ranks do not fill the space");
  }
  hom.unitaries.push_back(std::move(u));
  return hom;
}

classical::FinProb outcome_distribution(const Observable& obs,
                                        const CMatrix& rho,
                                        const Tolerance& tol) {
  require_compatible(obs, rho);
  require_density(rho, tol);
  classical::FinProb q;
  for (const CMatrix& p : obs.projectors) {
    q.weights.push_back(std::max(0.0, (rho * p).trace().real()));
  }
  return q;
}

CMatrix luders(const Observable& obs, const CMatrix& rho,
               const Tolerance& tol) {
  require_compatible(obs, rho);
  require_density(rho, tol);
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const CMatrix& p : obs.projectors) {
    out += p * rho * p;
  }
  return out;
}

disint::DisintegrationResult measurement_disintegration(const Observable& obs,
                                                        const CMatrix& rho,
                                                        const Tolerance& tol) {
  require_compatible(obs, rho);
  require_density(rho, tol);
  const Eigen::Index m = rho.rows();
  const auto t = static_cast<Eigen::Index>(obs.spectrum.size());
  const classical::FinProb q = outcome_distribution(obs, rho, tol);

  const double residual = core::max_abs_diff(rho, luders(obs, rho, tol));
  const bool pass = residual <= 10 * tol.eps_eq;

  disint::DisintegrationResult result;
  result.exists = pass;
  result.certificate.checks.push_back({"luders_projection", residual, pass});
  if (!pass) result.certificate.violated = "luders_projection";

  // Candidate conditioning weights: the eigenspace blocks of rho in a
  // spectral basis, renormalized per outcome.
  const BratteliHom hom = spectral_hom(obs, tol);
  const CMatrix conj =
      hom.unitaries[0].adjoint() * rho * hom.unitaries[0];
  disint::TauGrid tau(static_cast<std::size_t>(t));
  Eigen::Index off = 0;
  for (Eigen::Index k = 0; k < t; ++k) {
    const Eigen::Index rank = hom.multiplicities[0][static_cast<std::size_t>(k)];
    const double qk = q.weights[static_cast<std::size_t>(k)];
    if (algebra::is_zero_weight(qk, tol)) {
      tau[k].push_back(disint::TauEntry{
          CMatrix::Identity(rank, rank) / static_cast<double>(rank), true});
    } else {
      tau[k].push_back(disint::TauEntry{
          conj.block(off, off, rank, rank) / qk, false});
    }
    off += rank;
  }
  result.tau = std::move(tau);
  if (!pass) return result;

  // Each component reads out one outcome: the Choi grid of B -> tr(D B) on
  // a scalar target is the transpose of D.
  maps::BlockMap map{Algebra{{m}},
                     Algebra{std::vector<Eigen::Index>(
                         static_cast<std::size_t>(t), 1)},
                     {}};
  map.choi.resize(static_cast<std::size_t>(t));
  for (Eigen::Index k = 0; k < t; ++k) {
    const double qk = q.weights[static_cast<std::size_t>(k)];
    CMatrix d;
    if (algebra::is_zero_weight(qk, tol)) {
      d = CMatrix::Identity(m, m) / static_cast<double>(m);
    } else {
      const CMatrix& p = obs.projectors[static_cast<std::size_t>(k)];
      d = p * rho * p / qk;
    }
    map.choi[k].push_back(d.transpose());
  }
  result.map = std::move(map);
  return result;
}

}  // namespace ncdisint::measure
