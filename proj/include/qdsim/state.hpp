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

#include "qdsim/linalg.hpp"
#include "qdsim/numeric_policy.hpp"

namespace qdsim {

/// Real Bloch vector with |n| <= 1 (up to policy.bloch_radius).
class BlochVector {
 public:
  BlochVector() : n_(Vec3::Zero()) {}
  explicit BlochVector(const Vec3& n);
  BlochVector(double x, double y, double z) : BlochVector(Vec3(x, y, z)) {}

  const Vec3& vec() const { return n_; }
  double operator()(int k) const { return n_(k); }
  double norm() const { return n_.norm(); }

 private:
  Vec3 n_;
};

/// Unit-norm state vector.
class StateVector {
 public:
  explicit StateVector(const Vector& amplitudes);
  /// Divides by the norm first; throws DomainError for a zero vector.
  static StateVector normalized(const Vector& amplitudes);

  const Vector& amplitudes() const { return psi_; }
  Eigen::Index dim() const { return psi_.size(); }

 private:
  Vector psi_;
};

/// Hermitian, unit-trace, positive semidefinite matrix. The invariants are
/// checked once at construction; the object is immutable afterwards.
class DensityMatrix {
 public:
  /// `trace_tol` lets integrators validate with their own drift budget;
  /// every other tolerance comes from the policy.
  explicit DensityMatrix(const Matrix& m, double trace_tol = policy.trace);

  static DensityMatrix from_state(const StateVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

DensityMatrix bloch_to_density(const BlochVector& n);
BlochVector density_to_bloch(const DensityMatrix& rho);

/// Same as density_to_bloch but for any 2x2 matrix, no validation.
Vec3 bloch_components(const Matrix& rho);

double purity(const DensityMatrix& rho);
/// -sum lambda ln lambda (natural logarithm), with 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);
bool is_pure(const DensityMatrix& rho);

/// Frobenius distance between two states.
double state_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qdsim
