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

#include "ncdisint/algebra.hpp"

#include <numeric>
#include <string>

namespace ncdisint::algebra {

using core::DimensionError;
using core::DomainError;

Eigen::Index Algebra::total_dim() const {
  Eigen::Index t = 0;
  for (Eigen::Index n : dims) t += n;
  return t;
}

void Algebra::validate() const {
  if (dims.empty()) throw DomainError("algebra needs at least one block");
  for (Eigen::Index n : dims) {
    if (n < 1) throw DomainError("block dimension must be positive");
  }
}

void AlgebraElement::validate() const {
  algebra.validate();
  if (static_cast<Eigen::Index>(blocks.size()) != algebra.blocks()) {
    throw DimensionError("element block count does not match algebra");
  }
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const Eigen::Index n = algebra.dims[j];
    if (blocks[j].rows() != n || blocks[j].cols() != n) {
      throw DimensionError("element block " + std::to_string(j) +
                           " has wrong shape");
    }
  }
}

AlgebraElement zero_element(const Algebra& a) {
  a.validate();
  AlgebraElement e{a, {}};
  e.blocks.reserve(a.dims.size());
  for (Eigen::Index n : a.dims) e.blocks.push_back(CMatrix::Zero(n, n));
  return e;
}

AlgebraElement identity_element(const Algebra& a) {
  a.validate();
  AlgebraElement e{a, {}};
  e.blocks.reserve(a.dims.size());
  for (Eigen::Index n : a.dims) e.blocks.push_back(CMatrix::Identity(n, n));
  return e;
}

namespace {

void require_same_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.algebra == b.algebra)) {
    throw DimensionError("elements live in different algebras");
  }
}

}  // namespace

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  AlgebraElement r = a;
  for (std::size_t j = 0; j < r.blocks.size(); ++j) r.blocks[j] += b.blocks[j];
  return r;
}

AlgebraElement scale(Complex c, const AlgebraElement& a) {
  AlgebraElement r = a;
  for (auto& blk : r.blocks) blk *= c;
  return r;
}

AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  AlgebraElement r = a;
  for (std::size_t j = 0; j < r.blocks.size(); ++j) {
    r.blocks[j] = a.blocks[j] * b.blocks[j];
  }
  return r;
}

AlgebraElement dagger(const AlgebraElement& a) {
  AlgebraElement r = a;
  for (auto& blk : r.blocks) blk = blk.adjoint().eval();
  return r;
}

double element_max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(a, b);
  double d = 0.0;
  for (std::size_t j = 0; j < a.blocks.size(); ++j) {
    d = std::max(d, core::max_abs_diff(a.blocks[j], b.blocks[j]));
  }
  return d;
}

bool is_zero_weight(double q, const Tolerance& tol) {
  return q <= tol.eps_rank;
}

State state_from_density(const Algebra& a, const std::vector<CMatrix>& blocks,
                         const Tolerance& tol) {
  a.validate();
  if (static_cast<Eigen::Index>(blocks.size()) != a.blocks()) {
    throw DimensionError("density block count does not match algebra");
  }
  State s{a, {}, {}};
  s.weights.reserve(blocks.size());
  s.densities.reserve(blocks.size());
  double total = 0.0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    const Eigen::Index n = a.dims[j];
    if (blocks[j].rows() != n || blocks[j].cols() != n) {
      throw DimensionError("density block " + std::to_string(j) +
                           " has wrong shape");
    }
    if (!core::is_psd(blocks[j], tol)) {
      throw DomainError("density block " + std::to_string(j) +
                        " is not positive semidefinite");
    }
    const double q = blocks[j].trace().real();
    total += q;
    s.weights.push_back(q);
    if (is_zero_weight(q, tol)) {
      s.weights.back() = 0.0;
      s.densities.push_back(CMatrix::Identity(n, n) /
                            static_cast<double>(n));
    } else {
      s.densities.push_back(blocks[j] / q);
    }
  }
  if (std::abs(total - 1.0) > 10 * tol.eps_eq) {
    throw DomainError("density has total trace " + std::to_string(total) +
                      ", expected 1");
  }
  return s;
}

SupportProjection support(const State& s, const Tolerance& tol) {
  SupportProjection p{s.algebra, {}};
  p.blocks.reserve(s.densities.size());
  for (std::size_t j = 0; j < s.densities.size(); ++j) {
    const Eigen::Index n = s.algebra.dims[j];
    if (is_zero_weight(s.weights[j], tol)) {
      p.blocks.push_back(CMatrix::Zero(n, n));
      continue;
    }
    const core::Eigh ed = core::eigh(s.densities[j], tol);
    CMatrix proj = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (ed.values(k) > tol.eps_rank) {
        proj += ed.vectors.col(k) * ed.vectors.col(k).adjoint();
      }
    }
    p.blocks.push_back(std::move(proj));
  }
  return p;
}

bool in_null_space(const State& s, const AlgebraElement& a,
                   const Tolerance& tol) {
  if (!(s.algebra == a.algebra)) {
    throw DimensionError("element and state live in different algebras");
  }
  double v = 0.0;
  for (std::size_t j = 0; j < a.blocks.size(); ++j) {
    if (is_zero_weight(s.weights[j], tol)) continue;
    const CMatrix prod =
        s.densities[j] * a.blocks[j].adjoint() * a.blocks[j];
    v += s.weights[j] * prod.trace().real();
  }
  return v <= tol.eps_eq;
}

Complex eval_state(const State& s, const AlgebraElement& b) {
  if (!(s.algebra == b.algebra)) {
    throw DimensionError("element and state live in different algebras");
  }
  Complex v = 0.0;
  for (std::size_t j = 0; j < b.blocks.size(); ++j) {
    if (s.weights[j] == 0.0) continue;
    v += s.weights[j] * (s.densities[j] * b.blocks[j]).trace();
  }
  return v;
}

std::vector<CMatrix> weighted_densities(const State& s) {
  std::vector<CMatrix> w;
  w.reserve(s.densities.size());
  for (std::size_t j = 0; j < s.densities.size(); ++j) {
    w.push_back(s.weights[j] * s.densities[j]);
  }
  return w;
}

double state_distance(const State& a, const State& b) {
  if (!(a.algebra == b.algebra)) {
    throw DimensionError("states live in different algebras");
  }
  const std::vector<CMatrix> wa = weighted_densities(a);
  const std::vector<CMatrix> wb = weighted_densities(b);
  double d = 0.0;
  for (std::size_t j = 0; j < wa.size(); ++j) {
    d = std::max(d, core::max_abs_diff(wa[j], wb[j]));
  }
  return d;
}

}  // namespace ncdisint::algebra
