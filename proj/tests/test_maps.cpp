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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ncdisint/maps.hpp"
#include "test_support.hpp"

using namespace ncdisint;
using namespace ncdisint::maps;
using algebra::Algebra;
using algebra::AlgebraElement;
using algebra::State;
using core::CMatrix;
using core::Complex;
using core::DimensionError;
using core::DomainError;
using core::max_abs_diff;
using test_support::ginibre;
using test_support::random_cpu_map;
using test_support::random_density;
using test_support::random_psd;
using test_support::random_unitary;

namespace {

BlockMap transpose_map() {
  const Algebra m2{{2}};
  return from_action(m2, m2, [](const AlgebraElement& a) {
    AlgebraElement out = a;
    out.blocks[0] = a.blocks[0].transpose().eval();
    return out;
  });
}

BlockMap depolarizing_map() {
  const Algebra m2{{2}};
  return from_action(m2, m2, [](const AlgebraElement& a) {
    AlgebraElement out = a;
    out.blocks[0] = a.blocks[0].trace() / 2.0 * CMatrix::Identity(2, 2);
    return out;
  });
}

BlockMap ad_map(const CMatrix& v) {
  KrausSet kraus{Algebra{{v.cols()}}, Algebra{{v.rows()}}, {{{v}}}};
  return kraus_to_choi(kraus);
}

State pure_state_on_m2(Eigen::Index basis_index) {
  CMatrix d = CMatrix::Zero(2, 2);
  d(basis_index, basis_index) = 1.0;
  return State{Algebra{{2}}, {1.0}, {d}};
}

}  // namespace

TEST_CASE("identity map acts trivially and passes every structural check") {
  const Algebra a{{2, 3}};
  const BlockMap id = identity_map(a);
  std::mt19937_64 rng(1);
  AlgebraElement x{a, {ginibre(rng, 2, 2), ginibre(rng, 3, 3)}};
  CHECK(algebra::element_max_abs_diff(apply(id, x), x) < 1e-14);
  CHECK(is_cp(id));
  CHECK(is_unital(id));
  CHECK(verify_hom(id));
}

TEST_CASE("trace map has the identity as Choi matrix") {
  const Algebra m2{{2}};
  const Algebra scalars{{1}};
  const BlockMap tr = from_action(m2, scalars, [&](const AlgebraElement& a) {
    AlgebraElement out = algebra::zero_element(scalars);
    out.blocks[0](0, 0) = a.blocks[0].trace();
    return out;
  });
  CHECK(max_abs_diff(tr.choi[0][0], CMatrix::Identity(2, 2)) == 0.0);
  AlgebraElement d{m2, {CMatrix{{3.0, 0.0}, {0.0, 4.0}}}};
  CHECK(std::abs(apply(tr, d).blocks[0](0, 0) - Complex{7.0, 0.0}) < 1e-14);
}

TEST_CASE("a non-unital inflation is caught by is_unital") {
  // A plus tr(A) times the projector complementary to diag(1,0).
  const Algebra m2{{2}};
  const CMatrix pperp{{0.0, 0.0}, {0.0, 1.0}};
  const BlockMap inflate = from_action(m2, m2, [&](const AlgebraElement& a) {
    AlgebraElement out = a;
    out.blocks[0] = a.blocks[0] + a.blocks[0].trace() * pperp;
    return out;
  });
  const AlgebraElement image =
      apply(inflate, algebra::identity_element(m2));
  CHECK(std::abs(image.blocks[0](0, 0) - Complex{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(image.blocks[0](1, 1) - Complex{3.0, 0.0}) < 1e-14);
  CHECK(is_cp(inflate));
  CHECK_FALSE(is_unital(inflate));
  // Off the support of the reference state it is invisible.
  CHECK(ae_equal(inflate, identity_map(m2), pure_state_on_m2(0)));
  // A full-rank reference state forces genuine equality, which fails.
  const State mixed{Algebra{{2}}, {1.0}, {0.5 * CMatrix::Identity(2, 2)}};
  CHECK_FALSE(ae_equal(inflate, identity_map(m2), mixed));
}

TEST_CASE("transpose map: positive but not completely positive") {
  const BlockMap t = transpose_map();
  const core::Eigh ed = core::eigh(t.choi[0][0]);
  CHECK(ed.values(0) == doctest::Approx(1.0));
  CHECK(ed.values(3) == doctest::Approx(-1.0));
  CHECK_FALSE(is_cp(t));
  CHECK(is_positive_heuristic(t, 50));
  CHECK(is_unital(t));
  CHECK_FALSE(verify_hom(t));
}

TEST_CASE("depolarizing map is CPU but not multiplicative") {
  const BlockMap dep = depolarizing_map();
  CHECK(is_cp(dep));
  CHECK(is_unital(dep));
  CHECK_FALSE(verify_hom(dep));
}

TEST_CASE("heuristic positivity refutes a map leaving the cone") {
  const Algebra m2{{2}};
  const BlockMap shift = from_action(m2, m2, [](const AlgebraElement& a) {
    AlgebraElement out = a;
    out.blocks[0] =
        a.blocks[0] - a.blocks[0].trace() / 2.0 * CMatrix::Identity(2, 2) * 0.9;
    return out;
  });
  CHECK_FALSE(is_positive_heuristic(shift, 50));
}

TEST_CASE("kraus_from_choi recovers conjugations up to phase") {
  std::mt19937_64 rng(5);
  const CMatrix u = random_unitary(rng, 3);
  const BlockMap ad = ad_map(u);
  const KrausSet kraus = kraus_from_choi(ad);
  REQUIRE(kraus.ops[0][0].size() == 1);
  const CMatrix& v = kraus.ops[0][0][0];
  const Complex phase = v(0, 0) / u(0, 0);
  CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
  CHECK(max_abs_diff((phase * u).eval(), v) < 1e-10);

  CHECK_THROWS_AS((void)kraus_from_choi(transpose_map()), DomainError);
}

TEST_CASE("operator-sum round trip on a random CPU map over direct sums") {
  std::mt19937_64 rng(9);
  const Algebra source{{2, 3}};
  const Algebra target{{2, 2}};
  const BlockMap phi = random_cpu_map(rng, source, target);
  CHECK(is_cp(phi));
  CHECK(is_unital(phi));
  const BlockMap back = kraus_to_choi(kraus_from_choi(phi));
  CHECK(choi_max_abs_diff(back, phi) < 1e-8);
}

TEST_CASE("ampliation by an auxiliary block keeps CP maps positive") {
  std::mt19937_64 rng(13);
  const Algebra m2{{2}};
  const BlockMap phi = random_cpu_map(rng, m2, m2);
  REQUIRE(is_cp(phi));
  // id (x) phi acting on M_4 viewed as a 2x2 grid of 2x2 cells.
  const Algebra m4{{4}};
  const BlockMap amp = from_action(m4, m4, [&](const AlgebraElement& x) {
    AlgebraElement out = algebra::zero_element(m4);
    for (Eigen::Index i = 0; i < 2; ++i) {
      for (Eigen::Index j = 0; j < 2; ++j) {
        AlgebraElement cell = algebra::zero_element(m2);
        cell.blocks[0] = x.blocks[0].block(2 * i, 2 * j, 2, 2);
        out.blocks[0].block(2 * i, 2 * j, 2, 2) =
            apply(phi, cell).blocks[0];
      }
    }
    return out;
  });
  for (int trial = 0; trial < 20; ++trial) {
    AlgebraElement in{m4, {random_psd(rng, 4)}};
    CHECK(core::is_psd(apply(amp, in).blocks[0]));
  }
}

TEST_CASE("adjoint transposes the grid and satisfies the pairing") {
  const Algebra a{{2, 3}};
  CHECK(choi_max_abs_diff(adjoint(identity_map(a)), identity_map(a)) < 1e-14);

  std::mt19937_64 rng(17);
  const CMatrix u = random_unitary(rng, 3);
  CHECK(choi_max_abs_diff(adjoint(ad_map(u)), ad_map(u.adjoint())) < 1e-12);

  const Algebra source{{2, 2}};
  const Algebra target{{3}};
  const BlockMap phi = random_cpu_map(rng, source, target);
  const BlockMap phi_star = adjoint(phi);
  for (int trial = 0; trial < 10; ++trial) {
    AlgebraElement x{source, {ginibre(rng, 2, 2), ginibre(rng, 2, 2)}};
    AlgebraElement y{target, {ginibre(rng, 3, 3)}};
    Complex lhs = 0.0;
    const AlgebraElement fx = apply(phi, x);
    for (std::size_t j = 0; j < fx.blocks.size(); ++j) {
      lhs += (y.blocks[j].adjoint() * fx.blocks[j]).trace();
    }
    Complex rhs = 0.0;
    const AlgebraElement fy = apply(phi_star, y);
    for (std::size_t i = 0; i < fy.blocks.size(); ++i) {
      rhs += (fy.blocks[i].adjoint() * x.blocks[i]).trace();
    }
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }

  // Unitality of the map dualizes to trace preservation of its adjoint.
  for (int trial = 0; trial < 5; ++trial) {
    AlgebraElement y{target, {random_psd(rng, 3)}};
    const Complex before = y.blocks[0].trace();
    const AlgebraElement pulled = apply(phi_star, y);
    Complex after = 0.0;
    for (const CMatrix& b : pulled.blocks) after += b.trace();
    CHECK(std::abs(before - after) < 1e-9);
  }
}

TEST_CASE("compose chains actions and respects shape preconditions") {
  std::mt19937_64 rng(21);
  const Algebra m2{{2}};
  const Algebra m6{{6}};
  // Embed M_2 as three diagonal copies, then trace the auxiliary factor
  // back out: the composite is a pure rescaling.
  const BlockMap embed = from_action(m2, m6, [](const AlgebraElement& a) {
    AlgebraElement out{Algebra{{6}}, {core::kron(CMatrix::Identity(3, 3),
                                                 a.blocks[0])}};
    return out;
  });
  const BlockMap trace_out = from_action(m6, m2, [](const AlgebraElement& a) {
    AlgebraElement out{Algebra{{2}},
                       {core::partial_trace_left(a.blocks[0], 3, 2)}};
    return out;
  });
  const BlockMap roundtrip = compose(trace_out, embed);
  AlgebraElement x{m2, {ginibre(rng, 2, 2)}};
  CHECK(algebra::element_max_abs_diff(
            apply(roundtrip, x),
            algebra::scale(Complex{3.0, 0.0}, x)) < 1e-12);

  const BlockMap id2 = identity_map(m2);
  const BlockMap phi = random_cpu_map(rng, m2, m2);
  CHECK(choi_max_abs_diff(compose(id2, phi), phi) < 1e-13);
  CHECK_THROWS_AS((void)compose(embed, embed), DimensionError);
}

TEST_CASE("pullback_state marginalizes through block-diagonal embeddings") {
  std::mt19937_64 rng(25);
  const Algebra m2{{2}};
  const Algebra m6{{6}};
  const BlockMap embed = from_action(m2, m6, [](const AlgebraElement& a) {
    return AlgebraElement{Algebra{{6}}, {core::kron(CMatrix::Identity(3, 3),
                                                    a.blocks[0])}};
  });
  const CMatrix rho = random_density(rng, 6);
  const State omega{m6, {1.0}, {rho}};
  const State pulled = pullback_state(embed, omega);
  CHECK(max_abs_diff(pulled.densities[0],
                     core::partial_trace_left(rho, 3, 2)) < 1e-10);

  const State same = pullback_state(identity_map(m6), omega);
  CHECK(algebra::state_distance(same, omega) < 1e-12);

  const BlockMap nonunital = from_action(m2, m2, [](const AlgebraElement& x) {
    return algebra::scale(Complex{0.5, 0.0}, x);
  });
  const State small{m2, {1.0}, {0.5 * CMatrix::Identity(2, 2)}};
  CHECK_THROWS_AS((void)pullback_state(nonunital, small), DomainError);
}

TEST_CASE("ae_compare on the coarse pair: equal up to the null space only") {
  const Algebra m2{{2}};
  const BlockMap phi = depolarizing_map();
  const BlockMap psi = from_action(m2, m2, [](const AlgebraElement& a) {
    AlgebraElement out = a;
    CMatrix r = CMatrix::Zero(2, 2);
    r(0, 0) = a.blocks[0].trace() / 2.0;
    r(1, 1) = a.blocks[0](1, 1);
    out.blocks[0] = r;
    return out;
  });
  CHECK(is_cp(psi));
  CHECK(is_unital(psi));
  CHECK(max_abs_diff(psi.choi[0][0],
                     CMatrix{{0.5, 0.0, 0.0, 0.0},
                             {0.0, 0.0, 0.0, 0.0},
                             {0.0, 0.0, 0.5, 0.0},
                             {0.0, 0.0, 0.0, 1.0}}) < 1e-14);

  const State xi = pure_state_on_m2(0);
  const AeComparison cmp = ae_compare(phi, psi, xi);
  CHECK(cmp.ae_equal);
  CHECK_FALSE(cmp.equal);
  CHECK(cmp.eq_residual == doctest::Approx(0.5));
  REQUIRE(cmp.witness.has_value());
  CHECK(cmp.witness->block == 0);
  CHECK(cmp.witness->row == 0);
  CHECK(cmp.witness->col == 0);

  // Agreement up to the null space forces agreement of the pulled-back
  // states.
  const State via_phi = pullback_state(phi, xi);
  const State via_psi = pullback_state(psi, xi);
  CHECK(algebra::state_distance(via_phi, via_psi) < 1e-9);

  // It also forces equality after compressing by the support projector.
  const CMatrix p = algebra::support(xi).blocks[0];
  const BlockMap compress = from_action(m2, m2, [&](const AlgebraElement& a) {
    AlgebraElement out = a;
    out.blocks[0] = p * a.blocks[0] * p;
    return out;
  });
  CHECK(choi_max_abs_diff(compose(compress, phi), compose(compress, psi)) <
        1e-12);
}

TEST_CASE("bratteli data applies as repeated diagonal blocks") {
  std::mt19937_64 rng(31);
  SUBCASE("multiplicity-p inclusion") {
    BratteliHom hom{Algebra{{2}}, Algebra{{6}}, {{3}},
                    {CMatrix::Identity(6, 6)}};
    AlgebraElement b{Algebra{{2}}, {ginibre(rng, 2, 2)}};
    CHECK(max_abs_diff(bratteli_apply(hom, b).blocks[0],
                       core::kron(CMatrix::Identity(3, 3), b.blocks[0])) <
          1e-14);
  }
  SUBCASE("conjugated single copy is Ad_U") {
    const CMatrix u = random_unitary(rng, 3);
    BratteliHom hom{Algebra{{3}}, Algebra{{3}}, {{1}}, {u}};
    AlgebraElement b{Algebra{{3}}, {ginibre(rng, 3, 3)}};
    CHECK(max_abs_diff(bratteli_apply(hom, b).blocks[0],
                       (u * b.blocks[0] * u.adjoint()).eval()) < 1e-12);
  }
  SUBCASE("function homs route scalars") {
    // Two points mapping to the second of two outputs, one to the first.
    BratteliHom hom{Algebra{{1, 1}}, Algebra{{1, 1, 1}},
                    {{0, 1}, {0, 1}, {1, 0}},
                    {CMatrix::Identity(1, 1), CMatrix::Identity(1, 1),
                     CMatrix::Identity(1, 1)}};
    AlgebraElement b{Algebra{{1, 1}}, {CMatrix::Constant(1, 1, 2.0),
                                       CMatrix::Constant(1, 1, 5.0)}};
    const AlgebraElement image = bratteli_apply(hom, b);
    CHECK(std::abs(image.blocks[0](0, 0) - Complex{5.0, 0.0}) < 1e-15);
    CHECK(std::abs(image.blocks[1](0, 0) - Complex{5.0, 0.0}) < 1e-15);
    CHECK(std::abs(image.blocks[2](0, 0) - Complex{2.0, 0.0}) < 1e-15);
  }
}

TEST_CASE("bratteli_to_blockmap yields verified unital homs") {
  std::mt19937_64 rng(37);
  const CMatrix u = random_unitary(rng, 4);
  BratteliHom hom{Algebra{{1, 2}}, Algebra{{4, 2}}, {{2, 1}, {0, 1}},
                  {u, random_unitary(rng, 2)}};
  hom.validate();
  const BlockMap f = bratteli_to_blockmap(hom);
  CHECK(is_cp(f));
  CHECK(is_unital(f));
  CHECK(verify_hom(f));
  AlgebraElement b{Algebra{{1, 2}},
                   {CMatrix::Constant(1, 1, 1.5), ginibre(rng, 2, 2)}};
  CHECK(algebra::element_max_abs_diff(apply(f, b), bratteli_apply(hom, b)) <
        1e-12);
}

TEST_CASE("bratteli validation rejects inconsistent data") {
  // Dimension law: 4 != 1*1 + 1*2.
  BratteliHom bad{Algebra{{1, 2}}, Algebra{{4}}, {{1, 1}},
                  {CMatrix::Identity(4, 4)}};
  CHECK_THROWS_AS(bad.validate(), DimensionError);

  BratteliHom skew{Algebra{{2}}, Algebra{{2}}, {{1}},
                   {CMatrix{{1.0, 1.0}, {0.0, 1.0}}}};
  CHECK_THROWS_AS(skew.validate(), DomainError);
}
