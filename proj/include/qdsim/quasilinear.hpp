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

#include "qdsim/linalg.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

/// Which validity regime a Kraus family is checked against.
///  - QuantumOperation: a single nonlinear operation, F <= I required.
///  - EvolutionFamily: K(t) of an evolution, where F(t) may grow.
enum class KrausRegime { QuantumOperation, EvolutionFamily };

/// Set {K_a} of equally sized operators with effect operator
/// F = sum K_a^dag K_a.
class KrausFamily {
 public:
  explicit KrausFamily(std::vector<Matrix> operators,
                       KrausRegime regime = KrausRegime::EvolutionFamily);

  const std::vector<Matrix>& operators() const { return ops_; }
  Eigen::Index dim() const { return ops_.front().rows(); }
  KrausRegime regime() const { return regime_; }

  /// True when the family has N^2 or more operators. Such families are still
  /// accepted; callers may warn.
  bool exceeds_kraus_rank_bound() const;

 private:
  std::vector<Matrix> ops_;
  KrausRegime regime_;
};

/// Convex decomposition sum_i p_i rho_i.
struct EnsembleSplit {
  EnsembleSplit(std::vector<double> weights, std::vector<DensityMatrix> states);

  std::vector<double> weights;
  std::vector<DensityMatrix> states;

  /// sum_i p_i rho_i.
  DensityMatrix mixture() const;
};

/// phi(rho) = sum K rho K^dag (not normalized).
Matrix apply_raw(const KrausFamily& k, const DensityMatrix& rho);
/// Phi(rho) = phi(rho) / tr phi(rho).
DensityMatrix apply_normalized(const KrausFamily& k, const DensityMatrix& rho);
Matrix effect_operator(const KrausFamily& k);

/// p_i tr(F rho_i) / tr(F rho_mix).
double ensemble_coefficient(const KrausFamily& k, const EnsembleSplit& split, std::size_t i);
std::vector<double> ensemble_coefficients(const KrausFamily& k, const EnsembleSplit& split);

/// {K1_a K2_b}: applying the result equals applying K2 then K1.
KrausFamily compose(const KrausFamily& k1, const KrausFamily& k2);

}  // namespace qdsim
