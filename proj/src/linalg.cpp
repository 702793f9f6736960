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

#include "qdsim/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

#include "qdsim/error.hpp"
#include "qdsim/numeric_policy.hpp"

namespace qdsim {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::Validity: return "validity";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::SingularNormalization: return "singular-normalization";
    case ErrorCode::IntegrationDiverged: return "integration-diverged";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::UnsupportedMode: return "unsupported-mode";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::Syntax: return "syntax";
    case ErrorCode::UnknownKey: return "unknown-key";
    case ErrorCode::MissingKey: return "missing-key";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) throw ValidityError(std::string(what) + ": non-finite entry");
}

void require_same_dim(const Matrix& a, const Matrix& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " +
                         std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
  }
}

double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

void require_hermitian(const Matrix& m, std::string_view what) {
  require_square(m, what);
  require_finite(m, what);
  const double scale = std::max(1.0, m.norm());
  if (hermiticity_defect(m) > policy.hermiticity * scale) {
    throw ValidityError(std::string(what) + ": not Hermitian");
  }
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix pauli(int k) {
  Matrix s(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw DomainError("pauli: index must be 0..3");
  }
  return s;
}

Matrix pauli_dot(const CVec3& v) {
  Matrix s(2, 2);
  s << v(2), v(0) - kI * v(1), v(0) + kI * v(1), -v(2);
  return s;
}

Matrix pauli_dot(const Vec3& v) { return pauli_dot(CVec3(v.cast<Complex>())); }

CVec3 pauli_components(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("pauli_components: need 2x2");
  return CVec3(0.5 * (m(0, 1) + m(1, 0)), 0.5 * kI * (m(0, 1) - m(1, 0)),
               0.5 * (m(0, 0) - m(1, 1)));
}

Complex cosh_sqrt(Complex z2) {
  if (std::abs(z2) < policy.pauli_series) return 1.0 + z2 / 2.0 + z2 * z2 / 24.0;
  return std::cosh(std::sqrt(z2));
}

Complex sinhc_sqrt(Complex z2) {
  if (std::abs(z2) < policy.pauli_series) return 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
  const Complex z = std::sqrt(z2);
  return std::sinh(z) / z;
}

Matrix matrix_exponential(const Matrix& m) {
  require_square(m, "matrix_exponential");
  require_finite(m, "matrix_exponential");
  const Eigen::Index n = m.rows();
  if (n == 1) {
    Matrix r(1, 1);
    r(0, 0) = std::exp(m(0, 0));
    return r;
  }
  if (n == 2) {
    const Complex c = 0.5 * (m(0, 0) + m(1, 1));
    const CVec3 v = pauli_components(m);
    const Complex s2 = v(0) * v(0) + v(1) * v(1) + v(2) * v(2);
    const Complex ec = std::exp(c);
    return ec * (cosh_sqrt(s2) * identity(2) + sinhc_sqrt(s2) * pauli_dot(v));
  }
  return m.exp();
}

HermitianSpectrum eig_hermitian(const Matrix& m) {
  require_hermitian(m, "eig_hermitian");
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw ValidityError("eig_hermitian: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

}  // namespace qdsim
