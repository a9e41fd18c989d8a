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

#include <utility>
#include <vector>

#include "ncdisint/maps.hpp"

namespace ncdisint::classical {

using algebra::Algebra;
using algebra::State;
using core::Tolerance;
using maps::BlockMap;
using maps::BratteliHom;

// Finite probability space: non-negative weights summing to 1.
struct FinProb {
  std::vector<double> weights;

  [[nodiscard]] Eigen::Index size() const {
    return static_cast<Eigen::Index>(weights.size());
  }
  void validate(const Tolerance& tol = {}) const;
};

// Column-stochastic kernel from a space of size cols() to one of size
// rows(); entry (y,x) is the probability of y given x.
struct StochMap {
  Eigen::MatrixXd entries;

  [[nodiscard]] Eigen::Index rows() const { return entries.rows(); }
  [[nodiscard]] Eigen::Index cols() const { return entries.cols(); }
  void validate(const Tolerance& tol = {}) const;
};

// g after f, the matrix product; columns stay stochastic.
[[nodiscard]] StochMap stoch_compose(const StochMap& g, const StochMap& f);

// Image measure of p under the index map f into a space of y_size points.
[[nodiscard]] FinProb pushforward(const std::vector<Eigen::Index>& f,
                                  const FinProb& p, Eigen::Index y_size);

// Conditional kernel back along f: r_xy = p_x [f(x) = y] / q_y on fibers of
// positive weight, uniform on the rest. Requires q to be the pushforward.
[[nodiscard]] StochMap classical_disintegration(
    const std::vector<Eigen::Index>& f, const FinProb& p, const FinProb& q,
    const Tolerance& tol = {});

// True iff the kernels' columns agree outside the null points of p.
[[nodiscard]] bool stoch_ae_equal(const StochMap& f, const StochMap& g,
                                  const FinProb& p, const Tolerance& tol = {});

// The commutative algebra with one scalar block per point, carrying p.
[[nodiscard]] std::pair<Algebra, State> embed_to_algebra(const FinProb& p);

// The unital positive map acting on indicators by e_y -> sum_x f_yx e_x.
[[nodiscard]] BlockMap embed_stoch(const StochMap& f);

// The hom induced by composing with f; multiplicity (x,y) is [f(x) = y].
[[nodiscard]] BratteliHom embed_function(const std::vector<Eigen::Index>& f,
                                         Eigen::Index y_size);

}  // namespace ncdisint::classical
