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

#include "qdsim/state.hpp"

#include <cmath>
#include <string>

#include "qdsim/error.hpp"

namespace qdsim {

BlochVector::BlochVector(const Vec3& n) : n_(n) {
  if (!n.allFinite()) throw ValidityError("BlochVector: non-finite component");
  if (n.norm() > 1.0 + policy.bloch_radius) {
    throw DomainError("BlochVector: |n| = " + std::to_string(n.norm()) + " exceeds 1");
  }
}

StateVector::StateVector(const Vector& amplitudes) : psi_(amplitudes) {
  if (psi_.size() == 0) throw DimensionError("StateVector: empty");
  if (!psi_.allFinite()) throw ValidityError("StateVector: non-finite amplitude");
  if (std::abs(psi_.norm() - 1.0) > policy.state_norm) {
    throw ValidityError("StateVector: norm " + std::to_string(psi_.norm()) + " != 1");
  }
}

StateVector StateVector::normalized(const Vector& amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("StateVector: cannot normalize");
  return StateVector(amplitudes / n);
}

DensityMatrix::DensityMatrix(const Matrix& m, double trace_tol) : m_(m) {
  require_square(m_, "DensityMatrix");
  require_finite(m_, "DensityMatrix");
  if (hermiticity_defect(m_) > policy.hermiticity * std::max(1.0, m_.norm())) {
    throw ValidityError("DensityMatrix: not Hermitian");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > trace_tol) {
    throw ValidityError("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  double min_eig;
  if (m_.rows() == 2) {
    // Closed form avoids an eigensolve on the hot path.
    const Vec3 n = bloch_components(m_);
    min_eig = 0.5 * (tr.real() - n.norm());
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m_ + m_.adjoint()), Eigen::EigenvaluesOnly);
    min_eig = es.eigenvalues()(0);
  }
  if (min_eig < policy.min_eigenvalue) {
    throw ValidityError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim < 1) throw DimensionError("maximally_mixed: dim must be positive");
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

DensityMatrix bloch_to_density(const BlochVector& n) {
  return DensityMatrix(0.5 * (identity(2) + pauli_dot(n.vec())));
}

Vec3 bloch_components(const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("Bloch vector needs a 2x2 state");
  return Vec3(2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), (rho(0, 0) - rho(1, 1)).real());
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw DimensionError("density_to_bloch: dim must be 2");
  return BlochVector(bloch_components(rho.matrix()));
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const HermitianSpectrum spec = eig_hermitian(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double l = spec.eigenvalues(i);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

bool is_pure(const DensityMatrix& rho) { return purity(rho) >= 1.0 - policy.pure_purity; }

double state_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.matrix(), b.matrix(), "state_distance");
  return (a.matrix() - b.matrix()).norm();
}

}  // namespace qdsim
