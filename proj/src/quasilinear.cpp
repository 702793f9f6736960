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

#include "qdsim/quasilinear.hpp"

#include <cmath>
#include <string>

#include "qdsim/error.hpp"

namespace qdsim {

namespace {

double trace_against(const Matrix& f, const Matrix& rho) {
  // tr(F rho) is real for Hermitian F, rho.
  return (f.cwiseProduct(rho.transpose())).sum().real();
}

}  // namespace

KrausFamily::KrausFamily(std::vector<Matrix> operators, KrausRegime regime)
    : ops_(std::move(operators)), regime_(regime) {
  if (ops_.empty()) throw DimensionError("KrausFamily: needs at least one operator");
  for (const Matrix& k : ops_) {
    require_square(k, "KrausFamily");
    require_finite(k, "KrausFamily");
    require_same_dim(k, ops_.front(), "KrausFamily");
  }
  if (regime_ == KrausRegime::QuantumOperation) {
    // F <= I  <=>  largest eigenvalue of F at most 1.
    const HermitianSpectrum s = eig_hermitian(effect_operator(*this));
    const double top = s.eigenvalues(s.eigenvalues.size() - 1);
    if (top > 1.0 + policy.hermiticity) {
      throw ValidityError("KrausFamily: effect operator exceeds identity (" +
                          std::to_string(top) + ")");
    }
  }
}

bool KrausFamily::exceeds_kraus_rank_bound() const {
  const auto n = static_cast<std::size_t>(dim());
  return ops_.size() >= n * n;
}

EnsembleSplit::EnsembleSplit(std::vector<double> w, std::vector<DensityMatrix> s)
    : weights(std::move(w)), states(std::move(s)) {
  if (weights.empty() || weights.size() != states.size()) {
    throw DimensionError("EnsembleSplit: weights and states must be non-empty and equal length");
  }
  double sum = 0.0;
  for (double p : weights) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("EnsembleSplit: weight outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > policy.ensemble_sum * static_cast<double>(weights.size())) {
    throw DomainError("EnsembleSplit: weights do not sum to 1");
  }
  for (const DensityMatrix& r : states) {
    require_same_dim(r.matrix(), states.front().matrix(), "EnsembleSplit");
  }
}

DensityMatrix EnsembleSplit::mixture() const {
  Matrix m = Matrix::Zero(states.front().dim(), states.front().dim());
  for (std::size_t i = 0; i < states.size(); ++i) m += weights[i] * states[i].matrix();
  return DensityMatrix(m);
}

Matrix apply_raw(const KrausFamily& k, const DensityMatrix& rho) {
  require_same_dim(k.operators().front(), rho.matrix(), "apply_raw");
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  for (const Matrix& op : k.operators()) out.noalias() += op * rho.matrix() * op.adjoint();
  return out;
}

DensityMatrix apply_normalized(const KrausFamily& k, const DensityMatrix& rho) {
  const Matrix raw = apply_raw(k, rho);
  const double tr = raw.trace().real();
  if (!(tr > policy.singular_trace)) {
    throw SingularNormalizationError("apply_normalized: tr(F rho) = " + std::to_string(tr));
  }
  Matrix out = raw / tr;
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix(out);
}

Matrix effect_operator(const KrausFamily& k) {
  Matrix f = Matrix::Zero(k.dim(), k.dim());
  for (const Matrix& op : k.operators()) f.noalias() += op.adjoint() * op;
  return f;
}

std::vector<double> ensemble_coefficients(const KrausFamily& k, const EnsembleSplit& split) {
  require_same_dim(k.operators().front(), split.states.front().matrix(), "ensemble_coefficient");
  const Matrix f = effect_operator(k);
  const double mix = trace_against(f, split.mixture().matrix());
  if (!(mix > policy.singular_trace)) {
    throw SingularNormalizationError("ensemble_coefficient: tr(F rho_mix) = " +
                                     std::to_string(mix));
  }
  std::vector<double> out(split.weights.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = split.weights[i] * trace_against(f, split.states[i].matrix()) / mix;
  }
  return out;
}

double ensemble_coefficient(const KrausFamily& k, const EnsembleSplit& split, std::size_t i) {
  if (i >= split.weights.size()) throw DomainError("ensemble_coefficient: index out of range");
  return ensemble_coefficients(k, split)[i];
}

KrausFamily compose(const KrausFamily& k1, const KrausFamily& k2) {
  require_same_dim(k1.operators().front(), k2.operators().front(), "compose");
  std::vector<Matrix> ops;
  ops.reserve(k1.operators().size() * k2.operators().size());
  for (const Matrix& a : k1.operators()) {
    for (const Matrix& b : k2.operators()) ops.push_back(a * b);
  }
  const KrausRegime regime =
      (k1.regime() == KrausRegime::QuantumOperation && k2.regime() == KrausRegime::QuantumOperation)
          ? KrausRegime::QuantumOperation
          : KrausRegime::EvolutionFamily;
  return KrausFamily(std::move(ops), regime);
}

}  // namespace qdsim
