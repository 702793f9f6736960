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

#include <Eigen/Dense>
#include <complex>
#include <string_view>

namespace qdsim {

using Complex = std::complex<double>;
/// Dense square complex matrix. Shape and finiteness are checked at the
/// library boundary by the require_* helpers below.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

inline constexpr Complex kI{0.0, 1.0};

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and
/// orthonormal eigenvectors stored as columns.
struct HermitianSpectrum {
  Eigen::VectorXd eigenvalues;
  Matrix eigenvectors;
};

void require_square(const Matrix& m, std::string_view what);
void require_finite(const Matrix& m, std::string_view what);
void require_same_dim(const Matrix& a, const Matrix& b, std::string_view what);
void require_hermitian(const Matrix& m, std::string_view what);

/// ||M - M^dag||_F.
double hermiticity_defect(const Matrix& m);

Matrix identity(Eigen::Index dim);

/// Pauli matrix sigma_k for k = 1, 2, 3 (k = 0 gives the identity).
Matrix pauli(int k);
/// v . sigma for a real or complex 3-vector.
Matrix pauli_dot(const Vec3& v);
Matrix pauli_dot(const CVec3& v);
/// Components c_k = tr(M sigma_k) / 2 of a 2x2 matrix, k = 1..3.
CVec3 pauli_components(const Matrix& m);

/// exp(M). Dimension 2 uses the closed form
///   exp(cI + v.sigma) = e^c (cosh s I + sinh(s)/s v.sigma),  s^2 = v.v,
/// with a series for |s^2| < 1e-12; larger dimensions use scaling and
/// squaring with a Pade approximant.
Matrix matrix_exponential(const Matrix& m);

/// Hermitian eigensolve; input must be Hermitian to the policy tolerance.
HermitianSpectrum eig_hermitian(const Matrix& m);

Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// cosh(z) and sinh(z)/z as even/odd entire functions of z^2, evaluated so
/// the branch of sqrt(z^2) never matters.
Complex cosh_sqrt(Complex z2);
Complex sinhc_sqrt(Complex z2);

}  // namespace qdsim
