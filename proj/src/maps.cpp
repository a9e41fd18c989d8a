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

#include "ncdisint/maps.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace ncdisint::maps {

using algebra::SupportProjection;
using core::DimensionError;
using core::DomainError;

void BlockMap::validate() const {
  source.validate();
  target.validate();
  const auto t = static_cast<std::size_t>(target.blocks());
  const auto s = static_cast<std::size_t>(source.blocks());
  if (choi.size() != t) throw DimensionError("choi grid has wrong row count");
  for (std::size_t j = 0; j < t; ++j) {
    if (choi[j].size() != s) {
      throw DimensionError("choi grid has wrong column count");
    }
    for (std::size_t i = 0; i < s; ++i) {
      const Eigen::Index d = target.dims[j] * source.dims[i];
      if (choi[j][i].rows() != d || choi[j][i].cols() != d) {
        throw DimensionError("choi block (" + std::to_string(j) + "," +
                             std::to_string(i) + ") has wrong shape");
      }
    }
  }
}

void BratteliHom::validate(const Tolerance& tol) const {
  source.validate();
  target.validate();
  const auto s = static_cast<std::size_t>(target.blocks());
  const auto t = static_cast<std::size_t>(source.blocks());
  if (multiplicities.size() != s) {
    throw DimensionError("multiplicity grid has wrong row count");
  }
  if (unitaries.size() != s) {
    throw DimensionError("one unitary per target block required");
  }
  for (std::size_t i = 0; i < s; ++i) {
    if (multiplicities[i].size() != t) {
      throw DimensionError("multiplicity grid has wrong column count");
    }
    Eigen::Index total = 0;
    for (std::size_t j = 0; j < t; ++j) {
      if (multiplicities[i][j] < 0) {
        throw DomainError("multiplicities must be non-negative");
      }
      total += multiplicities[i][j] * source.dims[j];
    }
    if (total != target.dims[i]) {
      throw DimensionError("target dimension " + std::to_string(i) +
                           " does not match its multiplicities");
    }
    const Eigen::Index m = target.dims[i];
    if (unitaries[i].rows() != m || unitaries[i].cols() != m ||
        !core::is_unitary(unitaries[i], tol)) {
      throw DomainError("conjugating matrix " + std::to_string(i) +
                        " is not unitary");
    }
  }
}

CMatrix apply_component(const CMatrix& choi, const CMatrix& a) {
  const Eigen::Index m = a.rows();
  if (a.cols() != m || m == 0 || choi.rows() % m != 0) {
    throw DimensionError("choi component does not match input shape");
  }
  const Eigen::Index n = choi.rows() / m;
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index p = 0; p < m; ++p) {
    for (Eigen::Index q = 0; q < m; ++q) {
      const Complex c = a(p, q);
      if (c != Complex{0.0, 0.0}) {
        out += c * choi.block(p * n, q * n, n, n);
      }
    }
  }
  return out;
}

AlgebraElement apply(const BlockMap& map, const AlgebraElement& a) {
  if (!(a.algebra == map.source)) {
    throw DimensionError("input lives outside the map's source algebra");
  }
  AlgebraElement out = algebra::zero_element(map.target);
  for (std::size_t j = 0; j < out.blocks.size(); ++j) {
    for (std::size_t i = 0; i < a.blocks.size(); ++i) {
      out.blocks[j] += apply_component(map.choi[j][i], a.blocks[i]);
    }
  }
  return out;
}

BlockMap from_action(
    const Algebra& source, const Algebra& target,
    const std::function<AlgebraElement(const AlgebraElement&)>& action) {
  source.validate();
  target.validate();
  BlockMap map{source, target, {}};
  map.choi.resize(static_cast<std::size_t>(target.blocks()));
  for (Eigen::Index j = 0; j < target.blocks(); ++j) {
    for (Eigen::Index i = 0; i < source.blocks(); ++i) {
      const Eigen::Index d = target.dims[j] * source.dims[i];
      map.choi[j].push_back(CMatrix::Zero(d, d));
    }
  }
  for (Eigen::Index i = 0; i < source.blocks(); ++i) {
    const Eigen::Index m = source.dims[i];
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        AlgebraElement unit = algebra::zero_element(source);
        unit.blocks[i] = core::matrix_unit(m, a, b);
        const AlgebraElement image = action(unit);
        if (!(image.algebra == target)) {
          throw DimensionError("action output lives outside the target");
        }
        for (Eigen::Index j = 0; j < target.blocks(); ++j) {
          const Eigen::Index n = target.dims[j];
          map.choi[j][i].block(a * n, b * n, n, n) = image.blocks[j];
        }
      }
    }
  }
  return map;
}

BlockMap identity_map(const Algebra& a) {
  return from_action(a, a, [](const AlgebraElement& e) { return e; });
}

double choi_max_abs_diff(const BlockMap& f, const BlockMap& g) {
  if (!(f.source == g.source) || !(f.target == g.target)) {
    throw DimensionError("maps have different source or target");
  }
  double d = 0.0;
  for (std::size_t j = 0; j < f.choi.size(); ++j) {
    for (std::size_t i = 0; i < f.choi[j].size(); ++i) {
      d = std::max(d, core::max_abs_diff(f.choi[j][i], g.choi[j][i]));
    }
  }
  return d;
}

bool is_cp(const BlockMap& map, const Tolerance& tol) {
  for (const auto& row : map.choi) {
    for (const auto& block : row) {
      if (!core::is_psd(block, tol)) return false;
    }
  }
  return true;
}

double unitality_residual(const BlockMap& map) {
  const AlgebraElement image = apply(map, algebra::identity_element(map.source));
  return algebra::element_max_abs_diff(image,
                                       algebra::identity_element(map.target));
}

bool is_unital(const BlockMap& map, const Tolerance& tol) {
  return unitality_residual(map) <= tol.eps_eq;
}

bool is_positive_heuristic(const BlockMap& map, int samples,
                           const Tolerance& tol) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < samples; ++k) {
    AlgebraElement in = algebra::zero_element(map.source);
    for (std::size_t i = 0; i < in.blocks.size(); ++i) {
      const Eigen::Index m = map.source.dims[i];
      CMatrix g(m, m);
      for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
          g(r, c) = Complex{gauss(rng), gauss(rng)};
        }
      }
      CMatrix p = g * g.adjoint();
      in.blocks[i] = p / std::max(1.0, p.trace().real());
    }
    const AlgebraElement out = apply(map, in);
    for (const CMatrix& block : out.blocks) {
      if (!core::is_psd(block, tol)) return false;
    }
  }
  return true;
}

KrausSet kraus_from_choi(const BlockMap& map, const Tolerance& tol) {
  if (!is_cp(map, tol)) {
    throw DomainError("operator-sum form requires a CP map");
  }
  KrausSet kraus{map.source, map.target, {}};
  kraus.ops.resize(map.choi.size());
  for (std::size_t j = 0; j < map.choi.size(); ++j) {
    const Eigen::Index n = map.target.dims[j];
    kraus.ops[j].resize(map.choi[j].size());
    for (std::size_t i = 0; i < map.choi[j].size(); ++i) {
      const Eigen::Index m = map.source.dims[i];
      const core::Eigh ed = core::eigh(map.choi[j][i], tol);
      for (Eigen::Index k = 0; k < ed.values.size(); ++k) {
        if (ed.values(k) <= tol.eps_rank) continue;
        const double scale = std::sqrt(ed.values(k));
        CMatrix v(n, m);
        for (Eigen::Index a = 0; a < m; ++a) {
          for (Eigen::Index r = 0; r < n; ++r) {
            v(r, a) = scale * ed.vectors(a * n + r, k);
          }
        }
        kraus.ops[j][i].push_back(std::move(v));
      }
    }
  }
  return kraus;
}

BlockMap kraus_to_choi(const KrausSet& kraus) {
  BlockMap map{kraus.source, kraus.target, {}};
  map.choi.resize(kraus.ops.size());
  for (std::size_t j = 0; j < kraus.ops.size(); ++j) {
    const Eigen::Index n = kraus.target.dims[j];
    for (std::size_t i = 0; i < kraus.ops[j].size(); ++i) {
      const Eigen::Index m = kraus.source.dims[i];
      CMatrix c = CMatrix::Zero(m * n, m * n);
      for (const CMatrix& v : kraus.ops[j][i]) {
        Eigen::VectorXcd w(m * n);
        for (Eigen::Index a = 0; a < m; ++a) {
          for (Eigen::Index r = 0; r < n; ++r) {
            w(a * n + r) = v(r, a);
          }
        }
        c += w * w.adjoint();
      }
      map.choi[j].push_back(std::move(c));
    }
  }
  return map;
}

namespace {

// Choi of the Hilbert-Schmidt adjoint of one component. With C the Choi of
// phi: M_m -> M_n, the adjoint's grid cell (c,d) at entry (a,b) picks up
// conj of C's grid cell (a,b) at entry (c,d).
CMatrix adjoint_component(const CMatrix& choi, Eigen::Index m,
                          Eigen::Index n) {
  CMatrix out(m * n, m * n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index d = 0; d < n; ++d) {
      for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = 0; b < m; ++b) {
          out(c * m + a, d * m + b) = std::conj(choi(a * n + c, b * n + d));
        }
      }
    }
  }
  return out;
}

}  // namespace

BlockMap adjoint(const BlockMap& map) {
  BlockMap adj{map.target, map.source, {}};
  adj.choi.resize(static_cast<std::size_t>(map.source.blocks()));
  for (Eigen::Index i = 0; i < map.source.blocks(); ++i) {
    for (Eigen::Index j = 0; j < map.target.blocks(); ++j) {
      adj.choi[i].push_back(adjoint_component(
          map.choi[j][i], map.source.dims[i], map.target.dims[j]));
    }
  }
  return adj;
}

BlockMap compose(const BlockMap& g, const BlockMap& f) {
  if (!(f.target == g.source)) {
    throw DimensionError("composition needs matching middle algebra");
  }
  return from_action(f.source, g.target, [&](const AlgebraElement& a) {
    return apply(g, apply(f, a));
  });
}

State pullback_state(const BlockMap& map, const State& omega,
                     const Tolerance& tol) {
  if (!(omega.algebra == map.target)) {
    throw DimensionError("state lives outside the map's target algebra");
  }
  if (unitality_residual(map) > tol.eps_eq) {
    throw DomainError("state pullback requires a unital map");
  }
  const AlgebraElement densities{map.target,
                                 algebra::weighted_densities(omega)};
  const AlgebraElement pulled = apply(adjoint(map), densities);
  return algebra::state_from_density(map.source, pulled.blocks, tol);
}

AeComparison ae_compare(const BlockMap& f, const BlockMap& g, const State& xi,
                        const Tolerance& tol) {
  if (!(f.source == g.source) || !(f.target == g.target)) {
    throw DimensionError("maps have different source or target");
  }
  if (!(xi.algebra == f.target)) {
    throw DimensionError("reference state must live on the shared target");
  }
  const SupportProjection p = algebra::support(xi, tol);
  const double threshold = 10 * tol.eps_eq;

  struct UnitResidual {
    AeWitness unit;
    double ae;
    double eq;
  };
  std::vector<UnitResidual> residuals;

  AeComparison cmp;
  for (Eigen::Index i = 0; i < f.source.blocks(); ++i) {
    const Eigen::Index m = f.source.dims[i];
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        AlgebraElement unit = algebra::zero_element(f.source);
        unit.blocks[i] = core::matrix_unit(m, a, b);
        const AlgebraElement fe = apply(f, unit);
        const AlgebraElement ge = apply(g, unit);
        double ae_r = 0.0;
        double eq_r = 0.0;
        for (std::size_t j = 0; j < fe.blocks.size(); ++j) {
          const CMatrix d = fe.blocks[j] - ge.blocks[j];
          eq_r = std::max(eq_r, core::max_abs(d));
          ae_r = std::max(ae_r, core::max_abs(d * p.blocks[j]));
        }
        residuals.push_back({{i, a, b}, ae_r, eq_r});
        cmp.ae_residual = std::max(cmp.ae_residual, ae_r);
        cmp.eq_residual = std::max(cmp.eq_residual, eq_r);
      }
    }
  }
  cmp.ae_equal = cmp.ae_residual <= threshold;
  cmp.equal = cmp.eq_residual <= threshold;
  if (!cmp.ae_equal) {
    for (const auto& r : residuals) {
      if (r.ae > threshold) {
        cmp.witness = r.unit;
        break;
      }
    }
  } else if (!cmp.equal) {
    for (const auto& r : residuals) {
      if (r.eq > threshold) {
        cmp.witness = r.unit;
        break;
      }
    }
  }
  return cmp;
}

bool ae_equal(const BlockMap& f, const BlockMap& g, const State& xi,
              const Tolerance& tol) {
  return ae_compare(f, g, xi, tol).ae_equal;
}

AlgebraElement bratteli_apply(const BratteliHom& hom, const AlgebraElement& b) {
  if (!(b.algebra == hom.source)) {
    throw DimensionError("input lives outside the hom's source algebra");
  }
  AlgebraElement out = algebra::zero_element(hom.target);
  for (Eigen::Index i = 0; i < hom.target.blocks(); ++i) {
    const Eigen::Index m = hom.target.dims[i];
    CMatrix d = CMatrix::Zero(m, m);
    Eigen::Index off = 0;
    for (Eigen::Index j = 0; j < hom.source.blocks(); ++j) {
      const Eigen::Index n = hom.source.dims[j];
      for (Eigen::Index rep = 0; rep < hom.multiplicities[i][j]; ++rep) {
        d.block(off, off, n, n) = b.blocks[j];
        off += n;
      }
    }
    out.blocks[i] = hom.unitaries[i] * d * hom.unitaries[i].adjoint();
  }
  return out;
}

BlockMap bratteli_to_blockmap(const BratteliHom& hom) {
  hom.validate();
  return from_action(hom.source, hom.target, [&](const AlgebraElement& b) {
    return bratteli_apply(hom, b);
  });
}

bool verify_hom(const BlockMap& map, const Tolerance& tol) {
  map.validate();
  const double threshold = 10 * tol.eps_eq;
  if (unitality_residual(map) > threshold) return false;

  // Images of every source matrix unit, addressed by (block, row, col).
  struct BlockImages {
    Eigen::Index dim;
    std::vector<AlgebraElement> units;
  };
  std::vector<BlockImages> images;
  for (Eigen::Index i = 0; i < map.source.blocks(); ++i) {
    const Eigen::Index m = map.source.dims[i];
    BlockImages bi{m, {}};
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        AlgebraElement unit = algebra::zero_element(map.source);
        unit.blocks[i] = core::matrix_unit(m, a, b);
        bi.units.push_back(apply(map, unit));
      }
    }
    images.push_back(std::move(bi));
  }
  const auto image = [&](Eigen::Index i, Eigen::Index a,
                         Eigen::Index b) -> const AlgebraElement& {
    return images[static_cast<std::size_t>(i)]
        .units[static_cast<std::size_t>(a * images[i].dim + b)];
  };

  for (Eigen::Index i = 0; i < map.source.blocks(); ++i) {
    const Eigen::Index m = map.source.dims[i];
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        if (algebra::element_max_abs_diff(algebra::dagger(image(i, a, b)),
                                          image(i, b, a)) > threshold) {
          return false;
        }
      }
    }
  }

  // Products of unit tuples vanish across blocks and contract within one:
  // E_ab E_cd = [b = c] E_ad.
  const AlgebraElement zero = algebra::zero_element(map.target);
  for (Eigen::Index i = 0; i < map.source.blocks(); ++i) {
    const Eigen::Index mi = map.source.dims[i];
    for (Eigen::Index i2 = 0; i2 < map.source.blocks(); ++i2) {
      const Eigen::Index mi2 = map.source.dims[i2];
      for (Eigen::Index a = 0; a < mi; ++a) {
        for (Eigen::Index b = 0; b < mi; ++b) {
          for (Eigen::Index c = 0; c < mi2; ++c) {
            for (Eigen::Index d = 0; d < mi2; ++d) {
              const AlgebraElement prod =
                  algebra::mul(image(i, a, b), image(i2, c, d));
              const AlgebraElement& expected =
                  (i == i2 && b == c) ? image(i, a, d) : zero;
              if (algebra::element_max_abs_diff(prod, expected) > threshold) {
                return false;
              }
            }
          }
        }
      }
    }
  }
  return true;
}

}  // namespace ncdisint::maps
