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

#include "qdsim/error.hpp"
#include "qdsim/gksl.hpp"
#include "qdsim/jaynes_cummings.hpp"
#include "test_support.hpp"

using namespace qdsim;
using qdsim::testing::Rng;
using qdsim::testing::bloch_of;
using qdsim::testing::pauli_matrix;
using qdsim::testing::taylor_exp;
using Catch::Matchers::WithinAbs;

namespace {

JCParams jc(double wf, double wa, double g, int n_max = 16) {
  JCParams p;
  p.omega_f = wf;
  p.omega_a = wa;
  p.g = g;
  p.n_max = n_max;
  return p;
}

JCBlockState random_state(Rng& rng, const JCParams& p) {
  JCBlockState s;
  for (int n = 0; n <= p.n_max; ++n) {
    s.weights.push_back(rng.uniform(0.0, 1.0));
    s.blocks.push_back(bloch_to_density(BlochVector(rng.in_ball(1.0))));
  }
  const double total = std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
  for (double& w : s.weights) w /= total;
  return s;
}

}  // namespace

TEST_CASE("block generators", "[jc]") {
  const JCParams p = jc(1.3, 2.0, 0.7);
  SECTION("block 0 is the qubit model with coupling g") {
    const Generator g0 = jc_block_generator(p, 0);
    CHECK((g0.H() - (0.5 * 1.3 * Matrix::Identity(2, 2) + 0.5 * 2.0 * pauli_matrix(3))).norm() < 1e-15);
    CHECK((g0.G() - 0.5 * 0.7 * pauli_matrix(1)).norm() < 1e-15);
    const QubitGeneratorParams q = jc_block_params(p, 0);
    CHECK((q.omega - Vec3(0, 0, 2.0)).norm() == 0.0);
    CHECK((q.g - Vec3(0.7, 0, 0)).norm() == 0.0);
  }
  SECTION("coupling grows as sqrt(n + 1) and stays orthogonal to w") {
    for (int n = 0; n <= p.n_max; ++n) {
      const QubitGeneratorParams q = jc_block_params(p, n);
      CHECK_THAT(q.g.norm(), WithinAbs(0.7 * std::sqrt(n + 1.0), 1e-14));
      CHECK(q.g.dot(q.omega) == 0.0);
      const Generator g = jc_block_generator(p, n);
      CHECK_THAT(g.H()(0, 0).real() + g.H()(1, 1).real(), WithinAbs(2 * 1.3 * (n + 0.5), 1e-13));
    }
  }
  SECTION("out of range") {
    CHECK_THROWS_AS(jc_block_generator(p, -1), DomainError);
    CHECK_THROWS_AS(jc_block_generator(p, 17), DomainError);
    CHECK_THROWS_AS(jc(1, 1, 1, 0).validate(), DomainError);
  }
}

TEST_CASE("block classification follows g sqrt(n+1) vs w", "[jc]") {
  const JCParams p = jc(1.0, 1.0, 0.35);
  for (int n = 0; n <= p.n_max; ++n) {
    const double gn = 0.35 * std::sqrt(n + 1.0);
    INFO("n = " << n);
    CHECK(jc_block_class(p, n) == (gn > 1.0 ? CaseClass::HyperbolicDamped : CaseClass::Oscillatory));
  }
  // g sqrt(n+1) = w exactly at n = 3 for g = 0.5.
  CHECK(jc_block_class(jc(1.0, 1.0, 0.5), 3) == CaseClass::Parabolic);
}

TEST_CASE("block evolution", "[jc]") {
  const JCParams p = jc(0.9, 1.0, 0.35);
  Rng rng(61);
  const JCBlockState s0 = random_state(rng, p);

  SECTION("t = 0 is the identity") {
    const JCBlockState s = jc_evolve(p, s0, 0.0);
    for (int n = 0; n <= p.n_max; ++n) {
      CHECK_THAT(s.weights[n], WithinAbs(s0.weights[n], 1e-15));
      CHECK((s.blocks[n].matrix() - s0.blocks[n].matrix()).norm() < 1e-15);
    }
  }
  SECTION("weights stay normalized") {
    for (double t : {0.1, 1.0, 5.0, 20.0, 80.0}) {
      const JCBlockState s = jc_evolve(p, s0, t);
      CHECK(std::abs(std::accumulate(s.weights.begin(), s.weights.end(), 0.0) - 1.0) < 1e-10);
    }
  }
  SECTION("all weight in block 0 reproduces the qubit trajectory") {
    const Vec3 xi(0, 0, 1);
    const JCBlockState one = JCBlockState::single_block(p, 0, bloch_to_density(BlochVector(xi)));
    for (double t : {0.3, 2.0, 7.0}) {
      const JCBlockState s = jc_evolve(p, one, t);
      CHECK_THAT(s.weights[0], WithinAbs(1.0, 1e-15));
      const Vec3 ref = qdsim::testing::matrix_route(jc_block_params(p, 0), xi, t);
      CHECK((bloch_of(s.blocks[0].matrix()) - ref).norm() < 1e-10);
    }
  }
  SECTION("damped blocks settle, oscillating blocks keep moving") {
    const double t1 = 400.0, t2 = 400.0 + 3.1;
    const JCBlockState a = jc_evolve(p, s0, t1), b = jc_evolve(p, s0, t2);
    for (int n = 0; n <= p.n_max; ++n) {
      const double moved = (bloch_of(a.blocks[n].matrix()) - bloch_of(b.blocks[n].matrix())).norm();
      INFO("n = " << n << " moved " << moved);
      if (jc_block_class(p, n) == CaseClass::HyperbolicDamped) {
        CHECK(moved < 1e-6);
      } else {
        CHECK(moved > 1e-3);
      }
    }
  }
  SECTION("pure blocks stay pure") {
    JCBlockState pure = s0;
    for (auto& b : pure.blocks) b = bloch_to_density(BlochVector(rng.on_sphere()));
    const JCBlockState s = jc_evolve(p, pure, 3.7);
    for (const DensityMatrix& b : s.blocks) CHECK(std::abs(purity(b) - 1.0) < 1e-10);
  }
}

TEST_CASE("blocks agree with the direct-sum propagation", "[jc][oracle]") {
  const JCParams p = jc(0.9, 1.0, 0.35, 6);
  Rng rng(62);
  const JCBlockState s0 = random_state(rng, p);
  const Generator full = jc_direct_sum_generator(p);
  REQUIRE(full.dim() == 14);
  const DensityMatrix rho0 = jc_direct_sum_state(s0);
  for (double t : {0.5, 2.0, 6.0}) {
    const Matrix k = taylor_exp((full.G() - kI * full.H()) * t);
    Matrix rho = k * rho0.matrix() * k.adjoint();
    rho /= rho.trace();
    const JCBlockState blocks = jc_evolve(p, s0, t);
    CHECK((jc_direct_sum_state(blocks).matrix() - rho).norm() < 1e-10);
    const JCBlockState split = jc_split_direct_sum(p, DensityMatrix(rho));
    for (int n = 0; n <= p.n_max; ++n) CHECK_THAT(split.weights[n], WithinAbs(blocks.weights[n], 1e-10));
    CHECK_THAT(jc_mean_energy(p, blocks), WithinAbs(mean_energy(full, DensityMatrix(rho)), 1e-10));
  }
}

TEST_CASE("block state validation", "[jc][errors]") {
  const JCParams p = jc(1, 1, 0.3, 2);
  JCBlockState s;
  s.weights = {0.5, 0.4, 0.2};
  s.blocks.assign(3, DensityMatrix::maximally_mixed(2));
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.weights = {0.5, 0.5};
  CHECK_THROWS_AS(s.validate(), DimensionError);
  s.weights = {0.5, 0.5, 0.0};
  CHECK_NOTHROW(s.validate());
  JCParams bigger = p;
  bigger.n_max = 3;
  CHECK_THROWS_AS(jc_evolve(bigger, s, 1.0), DimensionError);
}
