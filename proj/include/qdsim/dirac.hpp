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

#include <array>
#include <cstddef>
#include <vector>

#include "qdsim/gksl.hpp"
#include "qdsim/qubit_analytic.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

namespace si {
inline constexpr double c = 299792458.0;                // m/s
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double electron_charge = -1.602176634e-19;  // C
inline constexpr double electron_mass = 9.1093837015e-31;    // kg
}  // namespace si

/// Contravariant four-vector (x^0; x^1, x^2, x^3) with metric (+,-,-,-).
struct FourVector {
  double t = 0.0;
  Vec3 x = Vec3::Zero();

  FourVector() = default;
  FourVector(double t0, const Vec3& v) : t(t0), x(v) {}
  Eigen::Vector4d as_vector() const { return {t, x(0), x(1), x(2)}; }
  static FourVector from_vector(const Eigen::Vector4d& v) { return {v(0), v.tail<3>()}; }
};

double minkowski_dot(const FourVector& a, const FourVector& b);

/// Constant electromagnetic field acting on a particle of charge e, mass m.
struct EMFieldConfig {
  Vec3 E = Vec3::Zero();  // V/m
  Vec3 B = Vec3::Zero();  // T
  double charge = si::electron_charge;
  double mass = si::electron_mass;

  void validate() const;
  /// Riemann-Silberstein vector E + i c B.
  CVec3 riemann_silberstein() const;
  double bohr_magneton() const { return charge * si::hbar / (2.0 * mass); }
  double mc() const { return mass * si::c; }
};

/// gamma^0..gamma^3 and gamma^5 in the Weyl representation.
struct GammaMatrices {
  std::array<Matrix, 4> gamma;
  Matrix gamma5;
};
GammaMatrices weyl_gammas();
/// J^{mu nu} = (i/4) [gamma^mu, gamma^nu], indexed [mu][nu].
std::array<std::array<Matrix, 4>, 4> lorentz_generators();

/// 4x2 intertwiner v(p) between the spin basis and the spinor basis.
Matrix boost_intertwiner(const FourVector& p, double mass);
/// vbar = v^dag gamma^0.
Matrix intertwiner_bar(const Matrix& v);
/// v rho vbar.
Matrix intertwine(const FourVector& p, const DensityMatrix& rho, double mass);
/// vbar theta v.
Matrix disentangle(const FourVector& p, const Matrix& theta, double mass);

FourVector polarization_fourvector(const FourVector& p, const BlochVector& xi, double mass);
BlochVector bloch_from_w(const FourVector& p, const FourVector& w, double mass);

/// Hermitian, unit-trace, positive semidefinite 4x4 spinor density.
class SpinorDensity {
 public:
  explicit SpinorDensity(const Matrix& theta);
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// Covariant form (mc/4p^0)(I + p_mu gamma^mu/mc)(I - 2 gamma^5 w_nu gamma^nu/mc) gamma^0.
SpinorDensity spinor_density(const FourVector& p, const FourVector& w, double mass);

/// H = -(mu_B/hbar) diag(B.s, B.s),  G = (mu_B/(c hbar)) diag(E.s, -E.s).
Generator em_spin_generator(const EMFieldConfig& f);
/// Upper-block qubit identification w = -(2 mu_B/hbar) B, g = (2 mu_B/(c hbar)) E.
QubitGeneratorParams em_spin_params(const EMFieldConfig& f);

/// Spin Bloch vector read from the upper (rest-frame) block of theta.
Vec3 spin_from_spinor_block(const Matrix& theta);

struct BMTTrajectory {
  std::vector<double> tau;
  std::vector<double> lab_time;
  std::vector<FourVector> p;
  std::vector<FourVector> w;
  std::vector<Vec3> xi;        // qubit closed form
  std::vector<Vec3> xi_theta;  // read from the propagated spinor density
  double max_mass_shell_drift = 0.0;     // |p.p - (mc)^2| / (mc)^2
  double max_orthogonality_drift = 0.0;  // |p.w| / (mc)^2
  double max_polarization_drift = 0.0;   // |w.w + (mc/2)^2 xi0^2| / (mc)^2
};

/// Integrates dp/dtau = (e/m) F p and dw/dtau = (e/m) F w by RK4 in proper
/// time; the spin follows the closed-form quasi-linear evolution and is
/// also propagated through the 4x4 spinor density. Throws
/// IntegrationDivergedError if a conserved quantity drifts by more than the
/// policy bound.
BMTTrajectory bmt_evolve(const EMFieldConfig& f, const FourVector& p0, const BlochVector& xi0,
                         double tau_end, double step, std::size_t sample_stride = 1);

}  // namespace qdsim
