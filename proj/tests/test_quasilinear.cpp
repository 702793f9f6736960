// Copyright 2026 The qdsim Authors
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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "qdsim/error.hpp"
#include "qdsim/gksl.hpp"
#include "qdsim/quasilinear.hpp"
#include "test_support.hpp"

using namespace qdsim;
using qdsim::testing::Rng;
using qdsim::testing::pauli_matrix;
using qdsim::testing::taylor_exp;
using Catch::Matchers::WithinAbs;

namespace {

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

KrausFamily random_family(Rng& rng, int n, int count) {
  std::vector<Matrix> ops;
  for (int i = 0; i < count; ++i) ops.push_back(rng.complex_gaussian(n) * 0.7);
  return KrausFamily(ops);
}

}  // namespace

TEST_CASE("apply_raw fixed examples", "[quasilinear]") {
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  const DensityMatrix up(diag2(1, 0));
  CHECK((apply_raw(KrausFamily({Matrix::Identity(2, 2)}), half) - half.matrix()).norm() == 0.0);
  CHECK((apply_raw(KrausFamily({diag2(std::sqrt(2.0), 1)}), half) - diag2(1, 0.5)).norm() < 1e-15);
  CHECK((apply_raw(KrausFamily({pauli_matrix(1)}), up) - diag2(0, 1)).norm() == 0.0);
}

TEST_CASE("apply_normalized fixed examples", "[quasilinear]") {
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  CHECK((apply_normalized(KrausFamily({Matrix::Identity(2, 2)}), half).matrix() - half.matrix()).norm() == 0.0);
  CHECK((apply_normalized(KrausFamily({diag2(std::sqrt(2.0), 1)}), half).matrix() - diag2(2.0 / 3, 1.0 / 3)).norm() <
        1e-15);
  CHECK_THROWS_AS(apply_normalized(KrausFamily({diag2(1, 0)}), DensityMatrix(diag2(0, 1))),
                  SingularNormalizationError);
}

TEST_CASE("effect operator", "[quasilinear]") {
  CHECK((effect_operator(KrausFamily({Matrix::Identity(2, 2)})) - Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK((effect_operator(KrausFamily({diag2(std::sqrt(2.0), 1)})) - diag2(2, 1)).norm() < 1e-15);
}

TEST_CASE("validity regimes", "[quasilinear][errors]") {
  const Matrix grow = diag2(std::sqrt(2.0), 1);
  CHECK_NOTHROW(KrausFamily({grow}, KrausRegime::EvolutionFamily));
  CHECK_THROWS_AS(KrausFamily({grow}, KrausRegime::QuantumOperation), ValidityError);
  CHECK_NOTHROW(KrausFamily({diag2(1, 0.5)}, KrausRegime::QuantumOperation));
  CHECK_THROWS_AS(KrausFamily(std::vector<Matrix>{}), DimensionError);
  CHECK_THROWS_AS(KrausFamily({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}), DimensionError);
  CHECK_THROWS_AS(apply_raw(KrausFamily({Matrix::Identity(3, 3)}), DensityMatrix::maximally_mixed(2)),
                  DimensionError);
}

TEST_CASE("Kraus rank bound is reported, not enforced", "[quasilinear]") {
  std::vector<Matrix> ops(4, 0.5 * Matrix::Identity(2, 2));
  CHECK(KrausFamily(ops).exceeds_kraus_rank_bound());
  ops.pop_back();
  CHECK_FALSE(KrausFamily(ops).exceeds_kraus_rank_bound());
}

TEST_CASE("ensemble coefficients", "[quasilinear]") {
  const EnsembleSplit split({0.5, 0.5}, {DensityMatrix(diag2(1, 0)), DensityMatrix(diag2(0, 1))});
  SECTION("trace-preserving map keeps the weights") {
    const KrausFamily id({Matrix::Identity(2, 2)});
    CHECK_THAT(ensemble_coefficient(id, split, 0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(ensemble_coefficient(id, split, 1), WithinAbs(0.5, 1e-15));
  }
  SECTION("traces 2 and 1 over a mixture trace of 1.5") {
    const KrausFamily k({diag2(std::sqrt(2.0), 1)});
    const std::vector<double> p = ensemble_coefficients(k, split);
    CHECK_THAT(p[0], WithinAbs(2.0 / 3, 1e-15));
    CHECK_THAT(p[1], WithinAbs(1.0 / 3, 1e-15));
  }
  SECTION("single-state split") {
    const EnsembleSplit one({1.0}, {DensityMatrix::maximally_mixed(2)});
    CHECK_THAT(ensemble_coefficient(KrausFamily({diag2(3, 1)}), one, 0), WithinAbs(1.0, 1e-15));
  }
  SECTION("bad splits") {
    CHECK_THROWS_AS(EnsembleSplit({0.5, 0.6}, {DensityMatrix(diag2(1, 0)), DensityMatrix(diag2(0, 1))}),
                    DomainError);
    CHECK_THROWS_AS(EnsembleSplit({1.0}, {}), DimensionError);
    CHECK_THROWS_AS(ensemble_coefficient(KrausFamily({Matrix::Identity(2, 2)}), split, 2), DomainError);
  }
}

TEST_CASE("quasi-linearity identity", "[quasilinear][property]") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.integer(2, 5);
    const KrausFamily k = random_family(rng, n, rng.integer(1, 4));
    const int m = rng.integer(1, 4);
    std::vector<double> w;
    std::vector<DensityMatrix> states;
    for (int i = 0; i < m; ++i) {
      w.push_back(rng.uniform(0.05, 1.0));
      states.emplace_back(rng.density(n));
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= total;
    const EnsembleSplit split(w, states);

    const Matrix lhs = apply_normalized(k, split.mixture()).matrix();
    Matrix rhs = Matrix::Zero(n, n);
    const std::vector<double> pbar = ensemble_coefficients(k, split);
    for (int i = 0; i < m; ++i) rhs += pbar[i] * apply_normalized(k, states[i]).matrix();
    CHECK((lhs - rhs).norm() < 1e-10);
    CHECK(std::abs(std::accumulate(pbar.begin(), pbar.end(), 0.0) - 1.0) < 1e-12);
    for (double p : pbar) CHECK((p >= 0.0 && p <= 1.0));
  }
}

TEST_CASE("trace-preserving maps act linearly on mixtures", "[quasilinear][property]") {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 4);
    const Matrix u = rng.unitary(n);
    const double p = rng.uniform(0, 1);
    // Two unitaries weighted by sqrt(p), sqrt(1-p): sum K^dag K = I.
    const KrausFamily k({std::sqrt(p) * u, std::sqrt(1 - p) * rng.unitary(n)});
    CHECK((effect_operator(k) - Matrix::Identity(n, n)).norm() < 1e-10);
    const DensityMatrix a(rng.density(n)), b(rng.density(n));
    const double lam = rng.uniform(0, 1);
    const DensityMatrix mix(lam * a.matrix() + (1 - lam) * b.matrix());
    const Matrix lhs = apply_normalized(k, mix).matrix();
    const Matrix rhs = lam * apply_normalized(k, a).matrix() + (1 - lam) * apply_normalized(k, b).matrix();
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("apply_raw trace equals tr(F rho) and output is a state", "[quasilinear][property]") {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(2, 5);
    const KrausFamily k = random_family(rng, n, rng.integer(1, 3));
    const DensityMatrix rho(rng.density(n));
    const Matrix out = apply_raw(k, rho);
    CHECK(std::abs(out.trace() - (effect_operator(k) * rho.matrix()).trace()) < 1e-10 * std::abs(out.trace()));
    CHECK_NOTHROW(DensityMatrix(apply_normalized(k, rho).matrix()));
  }
}

TEST_CASE("composition", "[quasilinear]") {
  SECTION("identity with identity") {
    const KrausFamily c = compose(KrausFamily({Matrix::Identity(2, 2)}), KrausFamily({Matrix::Identity(2, 2)}));
    REQUIRE(c.operators().size() == 1);
    CHECK((c.operators()[0] - Matrix::Identity(2, 2)).norm() == 0.0);
  }
  SECTION("all pairs, applied right to left") {
    Rng rng(34);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = rng.integer(2, 4);
      const KrausFamily k1 = random_family(rng, n, rng.integer(1, 3));
      const KrausFamily k2 = random_family(rng, n, rng.integer(1, 3));
      const KrausFamily c = compose(k1, k2);
      CHECK(c.operators().size() == k1.operators().size() * k2.operators().size());
      const DensityMatrix rho(rng.density(n));
      const Matrix inner = apply_raw(k2, rho);
      Matrix outer = Matrix::Zero(n, n);
      for (const Matrix& k : k1.operators()) outer += k * inner * k.adjoint();
      CHECK((apply_raw(c, rho) - outer).norm() < 1e-12 * outer.norm());
    }
  }
  SECTION("exponential families form a semigroup") {
    Rng rng(35);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = rng.integer(2, 4);
      const Generator gen(rng.traceless_hermitian(n), rng.traceless_hermitian(n, 0.5));
      const double s = rng.uniform(0, 1.5), t = rng.uniform(0, 1.5);
      const KrausFamily c = compose(propagator_family(gen, s), propagator_family(gen, t));
      REQUIRE(c.operators().size() == 1);
      const Matrix direct = taylor_exp((gen.G() - kI * gen.H()) * (s + t));
      CHECK((c.operators()[0] - direct).norm() < 1e-10 * direct.norm());
    }
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(compose(KrausFamily({Matrix::Identity(2, 2)}), KrausFamily({Matrix::Identity(3, 3)})),
                    DimensionError);
  }
}
