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

#include "ncdisint/io.hpp"

#include <cmath>
#include <fstream>

namespace ncdisint::io {

using core::CMatrix;
using core::Complex;
using core::DomainError;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw DomainError("expected an object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw DomainError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

namespace {

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex parse_complex(const Json& j) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex{j[0].get<double>(), j[1].get<double>()};
  }
  throw DomainError("matrix entries must be numbers or [re, im] pairs");
}

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const algebra::Algebra& a) {
  return Json{{"dims", a.dims}};
}

Json to_json(const algebra::State& s) {
  Json densities = Json::array();
  for (const CMatrix& d : s.densities) densities.push_back(to_json(d));
  return Json{{"weights", s.weights}, {"densities", std::move(densities)}};
}

Json to_json(const maps::BlockMap& m) {
  Json grid = Json::array();
  for (const auto& row : m.choi) {
    Json cells = Json::array();
    for (const CMatrix& c : row) cells.push_back(to_json(c));
    grid.push_back(std::move(cells));
  }
  return Json{{"source", to_json(m.source)},
              {"target", to_json(m.target)},
              {"choi", std::move(grid)}};
}

Json to_json(const maps::BratteliHom& h) {
  Json unitaries = Json::array();
  for (const CMatrix& u : h.unitaries) unitaries.push_back(to_json(u));
  return Json{{"source", to_json(h.source)},
              {"target", to_json(h.target)},
              {"multiplicities", h.multiplicities},
              {"unitaries", std::move(unitaries)}};
}

Json to_json(const maps::AeComparison& c) {
  Json witness;
  if (c.witness) {
    witness = Json{{"block", c.witness->block},
                   {"row", c.witness->row},
                   {"col", c.witness->col}};
  }
  return Json{{"ae_equal", c.ae_equal},
              {"equal", c.equal},
              {"witness", std::move(witness)}};
}

Json to_json(const disint::TauGrid& tau) {
  Json grid = Json::array();
  for (const auto& row : tau) {
    Json cells = Json::array();
    for (const auto& entry : row) {
      if (!entry) {
        cells.push_back(nullptr);
      } else {
        cells.push_back(Json{{"matrix", to_json(entry->value)},
                             {"unconstrained", entry->unconstrained}});
      }
    }
    grid.push_back(std::move(cells));
  }
  return grid;
}

Json to_json(const disint::Certificate& cert) {
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    checks.push_back(
        Json{{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
  }
  return Json{{"checks", std::move(checks)}, {"violated", cert.violated}};
}

Json to_json(const disint::DisintegrationResult& r) {
  return Json{{"exists", r.exists},
              {"tau", r.tau ? to_json(*r.tau) : Json(nullptr)},
              {"map", r.map ? to_json(*r.map) : Json(nullptr)},
              {"certificate", to_json(r.certificate)}};
}

Json to_json(const classical::StochMap& r) {
  Json rows = Json::array();
  for (Eigen::Index y = 0; y < r.rows(); ++y) {
    Json row = Json::array();
    for (Eigen::Index x = 0; x < r.cols(); ++x) {
      row.push_back(r.entries(y, x));
    }
    rows.push_back(std::move(row));
  }
  return Json{{"matrix", std::move(rows)}};
}

CMatrix parse_cmatrix(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw DomainError("matrix must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) {
    throw DomainError("matrix rows must be nonempty arrays");
  }
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() ||
        static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw DomainError("matrix rows have inconsistent lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = parse_complex(j[r][c]);
    }
  }
  return m;
}

Eigen::MatrixXd parse_real_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw DomainError("matrix must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) {
    throw DomainError("matrix rows must be nonempty arrays");
  }
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() ||
        static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw DomainError("matrix rows have inconsistent lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = number(j[r][c], "matrix entry");
    }
  }
  return m;
}

algebra::Algebra parse_algebra(const Json& j) {
  const Json& dims = field(j, "dims");
  if (!dims.is_array() || dims.empty()) {
    throw DomainError("\"dims\" must be a nonempty array");
  }
  algebra::Algebra a;
  for (const Json& d : dims) {
    if (!d.is_number_integer() || d.get<Eigen::Index>() < 1) {
      throw DomainError("block dimensions must be positive integers");
    }
    a.dims.push_back(d.get<Eigen::Index>());
  }
  return a;
}

algebra::State parse_state(const Json& j, const core::Tolerance& tol) {
  const Json& weights = field(j, "weights");
  const Json& densities = field(j, "densities");
  if (!weights.is_array() || !densities.is_array() ||
      weights.size() != densities.size() || weights.empty()) {
    throw DomainError(
        "state needs matching nonempty \"weights\" and \"densities\"");
  }
  algebra::State s;
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double w = number(weights[k], "weight");
    if (w < -tol.eps_eq) throw DomainError("negative state weight");
    CMatrix d = parse_cmatrix(densities[k]);
    if (d.rows() != d.cols()) {
      throw DomainError("density blocks must be square");
    }
    s.algebra.dims.push_back(d.rows());
    if (algebra::is_zero_weight(w, tol)) {
      s.weights.push_back(0.0);
      s.densities.push_back(CMatrix::Identity(d.rows(), d.cols()) /
                            static_cast<double>(d.rows()));
    } else {
      if (!core::is_psd(d, tol)) {
        throw DomainError("density block " + std::to_string(k) +
                          " is not positive semidefinite");
      }
      if (std::abs(d.trace().real() - 1.0) > 10 * tol.eps_eq) {
        throw DomainError("density block " + std::to_string(k) +
                          " does not have unit trace");
      }
      s.weights.push_back(w);
      s.densities.push_back(std::move(d));
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 10 * tol.eps_eq) {
    throw DomainError("state weights sum to " + std::to_string(total) +
                      ", expected 1");
  }
  return s;
}

maps::BlockMap parse_blockmap(const Json& j) {
  maps::BlockMap m;
  m.source = parse_algebra(field(j, "source"));
  m.target = parse_algebra(field(j, "target"));
  const Json& grid = field(j, "choi");
  if (!grid.is_array()) throw DomainError("\"choi\" must be an array");
  for (const Json& row : grid) {
    if (!row.is_array()) throw DomainError("\"choi\" rows must be arrays");
    std::vector<CMatrix> cells;
    for (const Json& cell : row) cells.push_back(parse_cmatrix(cell));
    m.choi.push_back(std::move(cells));
  }
  m.validate();
  return m;
}

maps::BratteliHom parse_bratteli(const Json& j) {
  maps::BratteliHom h;
  h.source = parse_algebra(field(j, "source"));
  h.target = parse_algebra(field(j, "target"));
  const Json& mult = field(j, "multiplicities");
  if (!mult.is_array()) {
    throw DomainError("\"multiplicities\" must be an array");
  }
  for (const Json& row : mult) {
    if (!row.is_array()) {
      throw DomainError("\"multiplicities\" rows must be arrays");
    }
    std::vector<Eigen::Index> counts;
    for (const Json& c : row) {
      if (!c.is_number_integer() || c.get<Eigen::Index>() < 0) {
        throw DomainError("multiplicities must be non-negative integers");
      }
      counts.push_back(c.get<Eigen::Index>());
    }
    h.multiplicities.push_back(std::move(counts));
  }
  const Json& unitaries = field(j, "unitaries");
  if (!unitaries.is_array()) {
    throw DomainError("\"unitaries\" must be an array");
  }
  for (const Json& u : unitaries) h.unitaries.push_back(parse_cmatrix(u));
  h.validate();
  return h;
}

classical::FinProb parse_finprob(const Json& j, const core::Tolerance& tol) {
  const Json& weights = field(j, "weights");
  if (!weights.is_array() || weights.empty()) {
    throw DomainError("\"weights\" must be a nonempty array");
  }
  classical::FinProb p;
  for (const Json& w : weights) p.weights.push_back(number(w, "weight"));
  p.validate(tol);
  return p;
}

classical::StochMap parse_stochmap(const Json& j,
                                   const core::Tolerance& tol) {
  classical::StochMap f{parse_real_matrix(field(j, "matrix"))};
  f.validate(tol);
  return f;
}

std::vector<Eigen::Index> parse_function(const Json& j) {
  const Json& map = field(j, "map");
  if (!map.is_array() || map.empty()) {
    throw DomainError("\"map\" must be a nonempty array");
  }
  std::vector<Eigen::Index> f;
  for (const Json& v : map) {
    if (!v.is_number_integer() || v.get<Eigen::Index>() < 1) {
      throw DomainError("point maps use 1-based indices");
    }
    f.push_back(v.get<Eigen::Index>() - 1);
  }
  return f;
}

ProblemFile parse_problem(const Json& j) {
  ProblemFile p;
  const Json& version = field(j, "version");
  if (!version.is_string() || version.get<std::string>() != "1") {
    throw DomainError("unsupported problem file version");
  }
  p.version = "1";
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw DomainError("\"kind\" must be a string");
  p.kind = kind.get<std::string>();
  static const char* kinds[] = {"check-map", "ae-equal", "disintegrate",
                                "classical", "measure", "compose"};
  bool known = false;
  for (const char* k : kinds) known = known || p.kind == k;
  if (!known) throw DomainError("unknown problem kind \"" + p.kind + "\"");
  const Json& payload = field(j, "payload");
  if (!payload.is_object()) throw DomainError("\"payload\" must be an object");
  p.payload = payload;
  return p;
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read file: " + path);
  return Json::parse(in);
}

}  // namespace ncdisint::io
