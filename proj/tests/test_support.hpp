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

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "ncdisint/maps.hpp"

namespace test_support {

using ncdisint::algebra::Algebra;
using ncdisint::core::CMatrix;
using ncdisint::core::Complex;

inline CMatrix ginibre(std::mt19937_64& rng, Eigen::Index rows,
                       Eigen::Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      g(r, c) = Complex{gauss(rng), gauss(rng)};
    }
  }
  return g;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  const CMatrix g = ginibre(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

// QR of a Ginibre sample with the phase convention that makes Q Haar
// distributed.
inline CMatrix random_unitary(std::mt19937_64& rng, Eigen::Index n) {
  const CMatrix g = ginibre(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline CMatrix random_psd(std::mt19937_64& rng, Eigen::Index n,
                          Eigen::Index rank = -1) {
  if (rank < 0 || rank > n) rank = n;
  const CMatrix g = ginibre(rng, n, rank);
  return g * g.adjoint();
}

inline CMatrix random_density(std::mt19937_64& rng, Eigen::Index n,
                              Eigen::Index rank = -1) {
  const CMatrix p = random_psd(rng, n, rank);
  return p / p.trace().real();
}

inline CMatrix inv_sqrt_psd(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0) {
    throw std::runtime_error("inv_sqrt_psd needs a positive definite input");
  }
  const Eigen::VectorXd inv = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * inv.asDiagonal() *
         es.eigenvectors().adjoint();
}

// Random completely positive unital map: raw Kraus operators per target
// block, then a left normalization making each block row sum to the
// identity.
inline ncdisint::maps::BlockMap random_cpu_map(std::mt19937_64& rng,
                                               const Algebra& source,
                                               const Algebra& target,
                                               int ops_per_pair = 2) {
  ncdisint::maps::KrausSet kraus{source, target, {}};
  kraus.ops.resize(static_cast<std::size_t>(target.blocks()));
  for (Eigen::Index j = 0; j < target.blocks(); ++j) {
    const Eigen::Index n = target.dims[j];
    CMatrix total = CMatrix::Zero(n, n);
    std::vector<std::vector<CMatrix>> row(
        static_cast<std::size_t>(source.blocks()));
    for (Eigen::Index i = 0; i < source.blocks(); ++i) {
      for (int k = 0; k < ops_per_pair; ++k) {
        CMatrix w = ginibre(rng, n, source.dims[i]);
        total += w * w.adjoint();
        row[static_cast<std::size_t>(i)].push_back(std::move(w));
      }
    }
    const CMatrix norm = inv_sqrt_psd(total);
    for (auto& ops : row) {
      for (auto& w : ops) w = norm * w;
    }
    kraus.ops[static_cast<std::size_t>(j)] = std::move(row);
  }
  return ncdisint::maps::kraus_to_choi(kraus);
}

struct ProcessResult {
  int exit_code = -1;
  std::string output;
};

// Runs a shell command, capturing stdout; stderr is dropped.
inline ProcessResult run_process(const std::string& command) {
  ProcessResult result;
  const std::string line = command + " 2>/dev/null";
  FILE* pipe = popen(line.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace test_support
