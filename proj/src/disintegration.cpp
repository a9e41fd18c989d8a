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

#include "ncdisint/disintegration.hpp"

#include <cmath>
#include <utility>

namespace ncdisint::disint {

using core::DimensionError;
using core::DomainError;
using core::IllPosedError;

namespace {

void require_density(const CMatrix& a, const char* name, const Tolerance& tol) {
  if (!core::is_psd(a, tol)) {
    throw DomainError(std::string(name) + " is not positive semidefinite");
  }
  if (std::abs(a.trace().real() - 1.0) > 10 * tol.eps_eq) {
    throw DomainError(std::string(name) + " does not have unit trace");
  }
}

// Distance from the PSD cone: the most negative eigenvalue, or the
// hermiticity gap if there is one.
double psd_violation(const CMatrix& a, const Tolerance& tol) {
  if (!core::is_hermitian(a, tol)) {
    return core::max_abs_diff(a, a.adjoint());
  }
  const core::Eigh ed = core::eigh(a, tol);
  const double lambda_min = ed.values(ed.values.size() - 1);
  return std::max(0.0, -lambda_min);
}

Certificate make_certificate(double recon, double psd, double trace,
                             bool recon_ok, bool psd_ok, bool trace_ok) {
  Certificate cert;
  cert.checks.push_back({"reconstruction", recon, recon_ok});
  cert.checks.push_back({"tau_psd", psd, psd_ok});
  cert.checks.push_back({"tau_trace", trace, trace_ok});
  for (const auto& c : cert.checks) {
    if (!c.pass) {
      cert.violated = c.name;
      break;
    }
  }
  return cert;
}

}  // namespace

DisintegrationResult disintegrate_matrix_case(const CMatrix& rho,
                                              const CMatrix& sigma,
                                              Eigen::Index p,
                                              const Tolerance& tol) {
  const Eigen::Index n = sigma.rows();
  if (n < 1 || sigma.cols() != n) throw DimensionError("sigma must be square");
  if (p < 1) throw DomainError("multiplicity must be positive");
  if (rho.rows() != p * n || rho.cols() != p * n) {
    throw DimensionError("rho must be square of size multiplicity times "
                         "sigma's dimension");
  }
  require_density(rho, "rho", tol);
  require_density(sigma, "sigma", tol);

  const CMatrix induced = core::partial_trace_left(rho, p, n);
  if (core::max_abs_diff(induced, sigma) > 10 * tol.eps_eq) {
    throw IllPosedError("sigma does not match the state induced by rho");
  }

  // If rho = tau (x) sigma, each n-by-n cell of rho is a multiple of sigma
  // and the inner product against sigma recovers the coefficient.
  const double purity = (sigma * sigma).trace().real();
  CMatrix tau(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index k = 0; k < p; ++k) {
      tau(j, k) =
          (sigma * rho.block(j * n, k * n, n, n)).trace() / purity;
    }
  }

  const double recon = core::max_abs_diff(core::kron(tau, sigma), rho);
  const double psd = psd_violation(tau, tol);
  const double trace = std::abs(tau.trace().real() - 1.0);
  const bool recon_ok = recon <= 10 * tol.eps_eq;
  const bool psd_ok = core::is_psd(tau, tol);
  const bool trace_ok = trace <= 10 * tol.eps_eq;

  DisintegrationResult result;
  result.certificate =
      make_certificate(recon, psd, trace, recon_ok, psd_ok, trace_ok);
  result.exists = recon_ok && psd_ok && trace_ok;
  result.tau = TauGrid{{TauEntry{tau, false}}};
  if (result.exists) {
    const Algebra big{{p * n}};
    const Algebra small{{n}};
    const CMatrix weights = core::kron(tau, CMatrix::Identity(n, n));
    result.map = maps::from_action(
        big, small, [&, weights](const AlgebraElement& a) {
          AlgebraElement out = algebra::zero_element(small);
          out.blocks[0] =
              core::partial_trace_left((weights * a.blocks[0]).eval(), p, n);
          return out;
        });
  }
  return result;
}

DisintegrationResult disintegrate_matrix_unitary_case(const CMatrix& rho,
                                                      const CMatrix& sigma,
                                                      Eigen::Index p,
                                                      const CMatrix& u,
                                                      const Tolerance& tol) {
  if (u.rows() != rho.rows() || u.cols() != rho.cols()) {
    throw DimensionError("conjugating matrix must match rho's shape");
  }
  if (!core::is_unitary(u, tol)) {
    throw DomainError("conjugating matrix is not unitary");
  }
  const CMatrix conjugated = u.adjoint() * rho * u;
  DisintegrationResult result =
      disintegrate_matrix_case(conjugated, sigma, p, tol);
  if (result.exists) {
    const Algebra big{{rho.rows()}};
    const BlockMap pre = maps::from_action(
        big, big, [&u](const AlgebraElement& a) {
          AlgebraElement out = a;
          out.blocks[0] = u.adjoint() * a.blocks[0] * u;
          return out;
        });
    result.map = maps::compose(*result.map, pre);
  }
  return result;
}

DisintegrationResult disintegrate(const DisintegrationProblem& problem,
                                  const Tolerance& tol) {
  problem.hom.validate(tol);
  const Algebra& small = problem.hom.source;
  const Algebra& big = problem.hom.target;
  if (!(problem.omega.algebra == big)) {
    throw DimensionError("omega must live on the hom's target algebra");
  }
  if (!(problem.xi.algebra == small)) {
    throw DimensionError("xi must live on the hom's source algebra");
  }
  const BlockMap hom_map = maps::bratteli_to_blockmap(problem.hom);
  const State pulled = maps::pullback_state(hom_map, problem.omega, tol);
  if (algebra::state_distance(problem.xi, pulled) > 10 * tol.eps_eq) {
    throw IllPosedError("xi does not match the state induced by omega");
  }

  const Eigen::Index s = big.blocks();
  const Eigen::Index t = small.blocks();
  const auto& mult = problem.hom.multiplicities;

  // Weighted densities conjugated into the plain block-diagonal frame.
  std::vector<CMatrix> weighted(static_cast<std::size_t>(s));
  for (Eigen::Index i = 0; i < s; ++i) {
    const CMatrix& u = problem.hom.unitaries[i];
    weighted[i] = problem.omega.weights[i] *
                  (u.adjoint() * problem.omega.densities[i] * u).eval();
  }
  std::vector<std::vector<Eigen::Index>> offset(
      static_cast<std::size_t>(s),
      std::vector<Eigen::Index>(static_cast<std::size_t>(t), 0));
  for (Eigen::Index i = 0; i < s; ++i) {
    Eigen::Index off = 0;
    for (Eigen::Index j = 0; j < t; ++j) {
      offset[i][j] = off;
      off += mult[i][j] * small.dims[j];
    }
  }

  TauGrid tau(static_cast<std::size_t>(t),
              std::vector<std::optional<TauEntry>>(
                  static_cast<std::size_t>(s)));
  double psd = 0.0;
  bool psd_ok = true;
  for (Eigen::Index j = 0; j < t; ++j) {
    const Eigen::Index n = small.dims[j];
    const double q = problem.xi.weights[j];
    const bool null_block = algebra::is_zero_weight(q, tol);
    const CMatrix& sigma = problem.xi.densities[j];
    const double purity = (sigma * sigma).trace().real();
    for (Eigen::Index i = 0; i < s; ++i) {
      const Eigen::Index c = mult[i][j];
      if (c == 0) continue;
      if (null_block) {
        tau[j][i] = TauEntry{
            CMatrix::Identity(c, c) / static_cast<double>(s * c), true};
        continue;
      }
      const Eigen::Index off = offset[i][j];
      CMatrix entry(c, c);
      for (Eigen::Index gamma = 0; gamma < c; ++gamma) {
        for (Eigen::Index eta = 0; eta < c; ++eta) {
          entry(gamma, eta) =
              (sigma *
               weighted[i].block(off + gamma * n, off + eta * n, n, n))
                  .trace() /
              (q * purity);
        }
      }
      psd = std::max(psd, psd_violation(entry, tol));
      psd_ok = psd_ok && core::is_psd(entry, tol);
      tau[j][i] = TauEntry{std::move(entry), false};
    }
  }

  double recon = 0.0;
  for (Eigen::Index i = 0; i < s; ++i) {
    CMatrix assembled = CMatrix::Zero(big.dims[i], big.dims[i]);
    for (Eigen::Index j = 0; j < t; ++j) {
      const Eigen::Index c = mult[i][j];
      const double q = problem.xi.weights[j];
      if (c == 0 || algebra::is_zero_weight(q, tol)) continue;
      const Eigen::Index n = small.dims[j];
      assembled.block(offset[i][j], offset[i][j], c * n, c * n) =
          q * core::kron(tau[j][i]->value, problem.xi.densities[j]);
    }
    recon = std::max(recon, core::max_abs_diff(weighted[i], assembled));
  }

  double trace = 0.0;
  for (Eigen::Index j = 0; j < t; ++j) {
    if (algebra::is_zero_weight(problem.xi.weights[j], tol)) continue;
    double total = 0.0;
    for (Eigen::Index i = 0; i < s; ++i) {
      if (tau[j][i]) total += tau[j][i]->value.trace().real();
    }
    trace = std::max(trace, std::abs(total - 1.0));
  }

  const bool recon_ok = recon <= 10 * tol.eps_eq;
  const bool trace_ok = trace <= 10 * tol.eps_eq;

  DisintegrationResult result;
  result.certificate =
      make_certificate(recon, psd, trace, recon_ok, psd_ok, trace_ok);
  result.exists = recon_ok && psd_ok && trace_ok;
  result.tau = tau;
  if (!result.exists) return result;

  // Canonical section. On blocks of positive weight, contract the (j,j)
  // diagonal superblock of the conjugated input against tau with the grid
  // indices swapped: coefficient (eta,gamma) multiplies cell (gamma,eta).
  // On null blocks, fall back to the normalized trace.
  const auto& hom = problem.hom;
  const std::vector<double> q = problem.xi.weights;
  result.map = maps::from_action(
      big, small, [&hom, &small, &big, q, tau, offset, s, t,
                   &tol](const AlgebraElement& a) {
        AlgebraElement out = algebra::zero_element(small);
        for (Eigen::Index i = 0; i < s; ++i) {
          const CMatrix& u = hom.unitaries[i];
          const CMatrix conj = u.adjoint() * a.blocks[i] * u;
          for (Eigen::Index j = 0; j < t; ++j) {
            const Eigen::Index n = small.dims[j];
            if (algebra::is_zero_weight(q[j], tol)) {
              out.blocks[j] += conj.trace() /
                               static_cast<double>(s * big.dims[i]) *
                               CMatrix::Identity(n, n);
              continue;
            }
            const Eigen::Index c = hom.multiplicities[i][j];
            if (c == 0) continue;
            const Eigen::Index off = offset[i][j];
            const CMatrix& w = tau[j][i]->value;
            for (Eigen::Index gamma = 0; gamma < c; ++gamma) {
              for (Eigen::Index eta = 0; eta < c; ++eta) {
                out.blocks[j] +=
                    w(eta, gamma) *
                    conj.block(off + gamma * n, off + eta * n, n, n);
              }
            }
          }
        }
        return out;
      });
  return result;
}

VerifyReport verify_disintegration(const DisintegrationProblem& problem,
                                   const BlockMap& candidate,
                                   const Tolerance& tol) {
  if (!(candidate.source == problem.hom.target) ||
      !(candidate.target == problem.hom.source)) {
    throw DimensionError("candidate must map the hom's target to its source");
  }
  const double threshold = 10 * tol.eps_eq;
  VerifyReport report;
  report.cp = maps::is_cp(candidate, tol);
  report.unitality_residual = maps::unitality_residual(candidate);
  report.unital = report.unitality_residual <= threshold;

  const AlgebraElement xi_density{
      candidate.target, algebra::weighted_densities(problem.xi)};
  const AlgebraElement pulled =
      maps::apply(maps::adjoint(candidate), xi_density);
  const std::vector<CMatrix> expected =
      algebra::weighted_densities(problem.omega);
  double state_residual = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    state_residual = std::max(
        state_residual, core::max_abs_diff(pulled.blocks[i], expected[i]));
  }
  report.state_residual = state_residual;
  report.state_preserving = state_residual <= threshold;

  const BlockMap hom_map = maps::bratteli_to_blockmap(problem.hom);
  const maps::AeComparison section = maps::ae_compare(
      maps::compose(candidate, hom_map),
      maps::identity_map(problem.hom.source), problem.xi, tol);
  report.section_residual = section.ae_residual;
  report.section_ae_id = section.ae_equal;

  report.pass = report.cp && report.unital && report.state_preserving &&
                report.section_ae_id;
  return report;
}

bool uniqueness_check(const DisintegrationProblem& problem, const BlockMap& r1,
                      const BlockMap& r2, const Tolerance& tol) {
  if (!maps::ae_equal(r1, r2, problem.xi, tol)) return false;
  for (Eigen::Index j = 0; j < problem.hom.source.blocks(); ++j) {
    if (algebra::is_zero_weight(problem.xi.weights[j], tol)) continue;
    for (Eigen::Index i = 0; i < problem.hom.target.blocks(); ++i) {
      if (core::max_abs_diff(r1.choi[j][i], r2.choi[j][i]) >
          10 * tol.eps_eq) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace ncdisint::disint
