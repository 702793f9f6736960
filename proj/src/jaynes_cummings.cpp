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

#include "qdsim/jaynes_cummings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdsim/error.hpp"
#include "qdsim/numeric_policy.hpp"

namespace qdsim {

namespace {

void require_block(const JCParams& p, int n) {
  if (n < 0 || n > p.n_max) {
    throw DomainError("Jaynes-Cummings block " + std::to_string(n) + " outside 0.." +
                      std::to_string(p.n_max));
  }
}

}  // namespace

void JCParams::validate() const {
  if (n_max < 1) throw DomainError("JCParams: n_max must be >= 1");
  if (!std::isfinite(omega_f) || !std::isfinite(omega_a) || !std::isfinite(g)) {
    throw ValidityError("JCParams: non-finite parameter");
  }
}

void JCBlockState::validate() const {
  if (weights.empty() || weights.size() != blocks.size()) {
    throw DimensionError("JCBlockState: weights and blocks must match");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0 + policy.trace)) throw DomainError("JCBlockState: weight outside [0,1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > policy.trace) throw DomainError("JCBlockState: weights must sum to 1");
  for (const DensityMatrix& b : blocks) {
    if (b.dim() != 2) throw DimensionError("JCBlockState: blocks are 2x2");
  }
}

JCBlockState JCBlockState::single_block(const JCParams& p, int n, const DensityMatrix& block) {
  p.validate();
  require_block(p, n);
  JCBlockState s;
  s.weights.assign(static_cast<std::size_t>(p.n_max) + 1, 0.0);
  s.blocks.assign(static_cast<std::size_t>(p.n_max) + 1, DensityMatrix::maximally_mixed(2));
  s.weights[static_cast<std::size_t>(n)] = 1.0;
  s.blocks[static_cast<std::size_t>(n)] = block;
  return s;
}

QubitGeneratorParams jc_block_params(const JCParams& p, int n) {
  p.validate();
  require_block(p, n);
  return {Vec3(0.0, 0.0, p.omega_a), Vec3(p.g * std::sqrt(n + 1.0), 0.0, 0.0)};
}

Generator jc_block_generator(const JCParams& p, int n) {
  const QubitGeneratorParams q = jc_block_params(p, n);
  return Generator(p.omega_f * (n + 0.5) * identity(2) + 0.5 * pauli_dot(q.omega),
                   0.5 * pauli_dot(q.g));
}

CaseClass jc_block_class(const JCParams& p, int n) { return classify(jc_block_params(p, n)); }

JCBlockState jc_evolve(const JCParams& p, const JCBlockState& s0, double t) {
  p.validate();
  s0.validate();
  if (s0.blocks.size() != static_cast<std::size_t>(p.n_max) + 1) {
    throw DimensionError("jc_evolve: state has " + std::to_string(s0.blocks.size()) +
                         " blocks, expected n_max + 1");
  }
  if (t == 0.0) return s0;

  const std::size_t nb = s0.blocks.size();
  std::vector<Matrix> evolved(nb);
  std::vector<double> log_w(nb, -std::numeric_limits<double>::infinity());
  double log_max = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < nb; ++n) {
    const ScaledPropagator k = scaled_propagator(jc_block_params(p, static_cast<int>(n)), t);
    const Matrix raw = k.k * s0.blocks[n].matrix() * k.k.adjoint();
    const double tr = raw.trace().real();
    if (tr > 0.0) {
      evolved[n] = raw / tr;
      if (s0.weights[n] > 0.0) {
        log_w[n] = std::log(s0.weights[n]) + std::log(tr) + 2.0 * k.log_scale;
        log_max = std::max(log_max, log_w[n]);
      }
    }
  }
  if (!std::isfinite(log_max)) {
    throw SingularNormalizationError("jc_evolve: every populated block was annihilated");
  }

  // Log-sum-exp normalization of lambda_n(t).
  double total = 0.0;
  for (double lw : log_w) total += std::exp(lw - log_max);
  JCBlockState out;
  out.weights.resize(nb);
  out.blocks.reserve(nb);
  for (std::size_t n = 0; n < nb; ++n) {
    out.weights[n] = std::exp(log_w[n] - log_max) / total;
    if (evolved[n].size() == 0) {
      out.blocks.push_back(s0.blocks[n]);
    } else {
      Matrix m = 0.5 * (evolved[n] + evolved[n].adjoint());
      out.blocks.emplace_back(m);
    }
  }
  return out;
}

double jc_mean_energy(const JCParams& p, const JCBlockState& s) {
  s.validate();
  double e = 0.0;
  for (std::size_t n = 0; n < s.blocks.size(); ++n) {
    if (s.weights[n] == 0.0) continue;
    e += s.weights[n] * mean_energy(jc_block_generator(p, static_cast<int>(n)), s.blocks[n]);
  }
  return e;
}

Generator jc_direct_sum_generator(const JCParams& p) {
  p.validate();
  const Eigen::Index d = 2 * (p.n_max + 1);
  Matrix h = Matrix::Zero(d, d);
  Matrix g = Matrix::Zero(d, d);
  for (int n = 0; n <= p.n_max; ++n) {
    const Generator b = jc_block_generator(p, n);
    h.block(2 * n, 2 * n, 2, 2) = b.H();
    g.block(2 * n, 2 * n, 2, 2) = b.G();
  }
  return Generator(h, g);
}

DensityMatrix jc_direct_sum_state(const JCBlockState& s) {
  s.validate();
  const Eigen::Index d = 2 * static_cast<Eigen::Index>(s.blocks.size());
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t n = 0; n < s.blocks.size(); ++n) {
    const auto i = static_cast<Eigen::Index>(2 * n);
    m.block(i, i, 2, 2) = s.weights[n] * s.blocks[n].matrix();
  }
  return DensityMatrix(m);
}

JCBlockState jc_split_direct_sum(const JCParams& p, const DensityMatrix& rho) {
  p.validate();
  if (rho.dim() != 2 * (p.n_max + 1)) throw DimensionError("jc_split_direct_sum: dimension");
  JCBlockState s;
  for (int n = 0; n <= p.n_max; ++n) {
    const Matrix b = rho.matrix().block(2 * n, 2 * n, 2, 2);
    const double w = b.trace().real();
    s.weights.push_back(std::max(0.0, w));
    s.blocks.push_back(w > policy.singular_trace ? DensityMatrix(b / w)
                                                 : DensityMatrix::maximally_mixed(2));
  }
  return s;
}

}  // namespace qdsim
