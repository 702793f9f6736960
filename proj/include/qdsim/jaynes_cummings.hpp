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

#pragma once

#include <vector>

#include "qdsim/gksl.hpp"
#include "qdsim/qubit_analytic.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

/// Quasi-linear Jaynes-Cummings model: H + iG = w_f a^dag a + (w_a/2) s3
/// + i (g/2)(a s+ + a^dag s-), restricted to the invariant two-dimensional
/// blocks span{|n, up>, |n+1, down>} for n = 0..n_max.
struct JCParams {
  double omega_f = 0.0;
  double omega_a = 0.0;
  double g = 0.0;
  int n_max = 16;

  void validate() const;
};

/// rho = (+)_n lambda_n rho_(n).
struct JCBlockState {
  std::vector<double> weights;
  std::vector<DensityMatrix> blocks;

  void validate() const;
  /// All weight in block n, which starts in `block`.
  static JCBlockState single_block(const JCParams& p, int n, const DensityMatrix& block);
};

/// H = w_f (n + 1/2) I + (w_a/2) s3,  G = (g/2) sqrt(n+1) s1.
Generator jc_block_generator(const JCParams& p, int n);
/// Block vectors w_n = w_a (0,0,1), g_n = g sqrt(n+1) (1,0,0).
QubitGeneratorParams jc_block_params(const JCParams& p, int n);
CaseClass jc_block_class(const JCParams& p, int n);

/// Propagates every block with its closed-form propagator and reweights the
/// blocks by their unnormalized traces. The w_f (n + 1/2) I term is a pure
/// phase per block and is left out of the propagation.
JCBlockState jc_evolve(const JCParams& p, const JCBlockState& s0, double t);

/// sum_n lambda_n tr(rho_(n) H^(n)), including the w_f term.
double jc_mean_energy(const JCParams& p, const JCBlockState& s);

/// Direct-sum assembly, dimension 2 (n_max + 1), for cross-checks.
Generator jc_direct_sum_generator(const JCParams& p);
DensityMatrix jc_direct_sum_state(const JCBlockState& s);
JCBlockState jc_split_direct_sum(const JCParams& p, const DensityMatrix& rho);

}  // namespace qdsim
