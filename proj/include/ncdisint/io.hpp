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

#include <string>
#include <vector>

#include "json.hpp"
#include "ncdisint/classical.hpp"
#include "ncdisint/disintegration.hpp"

namespace ncdisint::io {

// Insertion-ordered documents keep output key order stable, which the
// golden-file tests rely on.
using Json = nlohmann::ordered_json;

// Member access that reports the missing key instead of throwing a bare
// lookup error.
const Json& field(const Json& j, const char* key);

// Complex entries serialize as [re, im]; parsing also accepts bare numbers
// as reals. Matrices are arrays of rows.
Json to_json(const core::CMatrix& m);
Json to_json(const algebra::Algebra& a);
Json to_json(const algebra::State& s);
Json to_json(const maps::BlockMap& m);
Json to_json(const maps::BratteliHom& h);
Json to_json(const maps::AeComparison& c);
Json to_json(const disint::TauGrid& tau);
Json to_json(const disint::Certificate& cert);
Json to_json(const disint::DisintegrationResult& r);
Json to_json(const classical::StochMap& r);

// All parsers throw core exceptions on schema violations.
core::CMatrix parse_cmatrix(const Json& j);
Eigen::MatrixXd parse_real_matrix(const Json& j);
algebra::Algebra parse_algebra(const Json& j);
algebra::State parse_state(const Json& j, const core::Tolerance& tol = {});
maps::BlockMap parse_blockmap(const Json& j);
maps::BratteliHom parse_bratteli(const Json& j);
classical::FinProb parse_finprob(const Json& j,
                                 const core::Tolerance& tol = {});
classical::StochMap parse_stochmap(const Json& j,
                                   const core::Tolerance& tol = {});
// Point maps are 1-based on disk, 0-based in memory.
std::vector<Eigen::Index> parse_function(const Json& j);

struct ProblemFile {
  std::string version;
  std::string kind;
  Json payload;
};

ProblemFile parse_problem(const Json& j);

Json load_file(const std::string& path);

}  // namespace ncdisint::io
