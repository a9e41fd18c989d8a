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

#include "ncdisint/classical.hpp"

#include <cmath>
#include <string>

namespace ncdisint::classical {

using core::CMatrix;
using core::DimensionError;
using core::DomainError;
using core::IllPosedError;

void FinProb::validate(const Tolerance& tol) const {
  if (weights.empty()) throw DomainError("probability space must be nonempty");
  double total = 0.0;
  for (double w : weights) {
    if (w < -tol.eps_eq) throw DomainError("negative probability weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 10 * tol.eps_eq) {
    throw DomainError("probability weights sum to " + std::to_string(total) +
                      ", expected 1");
  }
}

void StochMap::validate(const Tolerance& tol) const {
  if (entries.rows() < 1 || entries.cols() < 1) {
    throw DimensionError("stochastic map must be nonempty");
  }
  for (Eigen::Index x = 0; x < entries.cols(); ++x) {
    double total = 0.0;
    for (Eigen::Index y = 0; y < entries.rows(); ++y) {
      if (entries(y, x) < -tol.eps_eq) {
        throw DomainError("negative kernel entry");
      }
      total += entries(y, x);
    }
    if (std::abs(total - 1.0) > 10 * tol.eps_eq) {
      throw DomainError("kernel column " + std::to_string(x) + " sums to " +
                        std::to_string(total) + ", expected 1");
    }
  }
}

StochMap stoch_compose(const StochMap& g, const StochMap& f) {
  if (f.rows() != g.cols()) {
    throw DimensionError("composition needs matching middle space");
  }
  return StochMap{g.entries * f.entries};
}

namespace {

void require_function(const std::vector<Eigen::Index>& f, Eigen::Index x_size,
                      Eigen::Index y_size) {
  if (static_cast<Eigen::Index>(f.size()) != x_size) {
    throw DimensionError("function defined on the wrong number of points");
  }
  for (Eigen::Index y : f) {
    if (y < 0 || y >= y_size) {
      throw DomainError("function value out of range");
    }
  }
}

}  // namespace

FinProb pushforward(const std::vector<Eigen::Index>& f, const FinProb& p,
                    Eigen::Index y_size) {
  require_function(f, p.size(), y_size);
  FinProb q{std::vector<double>(static_cast<std::size_t>(y_size), 0.0)};
  for (std::size_t x = 0; x < f.size(); ++x) {
    q.weights[static_cast<std::size_t>(f[x])] += p.weights[x];
  }
  return q;
}

StochMap classical_disintegration(const std::vector<Eigen::Index>& f,
                                  const FinProb& p, const FinProb& q,
                                  const Tolerance& tol) {
  p.validate(tol);
  q.validate(tol);
  require_function(f, p.size(), q.size());
  const FinProb pushed = pushforward(f, p, q.size());
  for (std::size_t y = 0; y < q.weights.size(); ++y) {
    if (std::abs(pushed.weights[y] - q.weights[y]) > 10 * tol.eps_eq) {
      throw IllPosedError("q is not the image of p under f");
    }
  }
  const Eigen::Index xs = p.size();
  StochMap r{Eigen::MatrixXd::Zero(xs, q.size())};
  for (Eigen::Index y = 0; y < q.size(); ++y) {
    const double qy = q.weights[static_cast<std::size_t>(y)];
    if (algebra::is_zero_weight(qy, tol)) {
      r.entries.col(y).setConstant(1.0 / static_cast<double>(xs));
      continue;
    }
    for (Eigen::Index x = 0; x < xs; ++x) {
      if (f[static_cast<std::size_t>(x)] == y) {
        r.entries(x, y) = p.weights[static_cast<std::size_t>(x)] / qy;
      }
    }
  }
  return r;
}

bool stoch_ae_equal(const StochMap& f, const StochMap& g, const FinProb& p,
                    const Tolerance& tol) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) {
    throw DimensionError("kernels have different shapes");
  }
  if (p.size() != f.cols()) {
    throw DimensionError("measure does not live on the kernels' source");
  }
  for (Eigen::Index x = 0; x < f.cols(); ++x) {
    if (algebra::is_zero_weight(p.weights[static_cast<std::size_t>(x)], tol)) {
      continue;
    }
    for (Eigen::Index y = 0; y < f.rows(); ++y) {
      if (std::abs(f.entries(y, x) - g.entries(y, x)) > 10 * tol.eps_eq) {
        return false;
      }
    }
  }
  return true;
}

std::pair<Algebra, State> embed_to_algebra(const FinProb& p) {
  p.validate();
  const auto size = static_cast<std::size_t>(p.size());
  Algebra a{std::vector<Eigen::Index>(size, 1)};
  State s{a, p.weights, std::vector<CMatrix>(size, CMatrix::Identity(1, 1))};
  for (double& w : s.weights) {
    if (w < 0.0) w = 0.0;
  }
  return {a, s};
}

BlockMap embed_stoch(const StochMap& f) {
  f.validate();
  const Algebra source{
      std::vector<Eigen::Index>(static_cast<std::size_t>(f.rows()), 1)};
  const Algebra target{
      std::vector<Eigen::Index>(static_cast<std::size_t>(f.cols()), 1)};
  BlockMap map{source, target, {}};
  map.choi.resize(static_cast<std::size_t>(f.cols()));
  for (Eigen::Index x = 0; x < f.cols(); ++x) {
    for (Eigen::Index y = 0; y < f.rows(); ++y) {
      CMatrix cell(1, 1);
      cell(0, 0) = f.entries(y, x);
      map.choi[x].push_back(cell);
    }
  }
  return map;
}

BratteliHom embed_function(const std::vector<Eigen::Index>& f,
                           Eigen::Index y_size) {
  const auto x_size = static_cast<Eigen::Index>(f.size());
  require_function(f, x_size, y_size);
  BratteliHom hom;
  hom.source =
      Algebra{std::vector<Eigen::Index>(static_cast<std::size_t>(y_size), 1)};
  hom.target =
      Algebra{std::vector<Eigen::Index>(static_cast<std::size_t>(x_size), 1)};
  hom.multiplicities.assign(
      static_cast<std::size_t>(x_size),
      std::vector<Eigen::Index>(static_cast<std::size_t>(y_size), 0));
  for (std::size_t x = 0; x < f.size(); ++x) {
    hom.multiplicities[x][static_cast<std::size_t>(f[x])] = 1;
  }
  hom.unitaries.assign(static_cast<std::size_t>(x_size),
                       CMatrix::Identity(1, 1));
  return hom;
}

}  // namespace ncdisint::classical
