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

#include "qdsim/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdsim/error.hpp"
#include "qdsim/numeric_policy.hpp"

namespace qdsim {

namespace {

Matrix blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  Matrix m(4, 4);
  m << a, b, c, d;
  return m;
}

Matrix block_diag(const Matrix& a, const Matrix& d) {
  const Matrix z = Matrix::Zero(2, 2);
  return blocks(a, z, z, d);
}

void require_on_shell(const FourVector& p, double mass, const char* what) {
  const double mc = mass * si::c;
  if (!(mass > 0.0)) throw DomainError(std::string(what) + ": mass must be positive");
  if (!(p.t > 0.0) || !p.x.allFinite() || !std::isfinite(p.t)) {
    throw PreconditionError(std::string(what) + ": need finite p with p^0 > 0");
  }
  const double shell = std::abs(minkowski_dot(p, p) - mc * mc) / (mc * mc);
  if (shell > policy.mass_shell) {
    throw PreconditionError(std::string(what) + ": momentum off the mass shell by " +
                            std::to_string(shell));
  }
}

// a_mu gamma^mu = a^0 gamma^0 - a.gamma.
Matrix slash(const GammaMatrices& gm, const FourVector& a) {
  return a.t * gm.gamma[0] - a.x(0) * gm.gamma[1] - a.x(1) * gm.gamma[2] - a.x(2) * gm.gamma[3];
}

// (e/m) F^mu_nu as a real 4x4 matrix.
Eigen::Matrix4d field_matrix(const EMFieldConfig& f) {
  const Vec3 e = f.E / si::c;
  const Vec3& b = f.B;
  Eigen::Matrix4d m;
  m << 0.0, e(0), e(1), e(2),
       e(0), 0.0, b(2), -b(1),
       e(1), -b(2), 0.0, b(0),
       e(2), b(1), -b(0), 0.0;
  return (f.charge / f.mass) * m;
}

double dot4(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return a(0) * b(0) - a.tail<3>().dot(b.tail<3>());
}

}  // namespace

double minkowski_dot(const FourVector& a, const FourVector& b) { return a.t * b.t - a.x.dot(b.x); }

void EMFieldConfig::validate() const {
  if (!E.allFinite() || !B.allFinite() || !std::isfinite(charge) || !std::isfinite(mass)) {
    throw ValidityError("EMFieldConfig: non-finite field or particle constant");
  }
  if (!(mass > 0.0)) throw DomainError("EMFieldConfig: mass must be positive");
}

CVec3 EMFieldConfig::riemann_silberstein() const {
  return E.cast<Complex>() + kI * si::c * B.cast<Complex>();
}

GammaMatrices weyl_gammas() {
  const Matrix i2 = identity(2);
  const Matrix z = Matrix::Zero(2, 2);
  GammaMatrices gm;
  gm.gamma[0] = blocks(z, i2, i2, z);
  for (int k = 1; k <= 3; ++k) gm.gamma[k] = blocks(z, pauli(k), -pauli(k), z);
  gm.gamma5 = blocks(-i2, z, z, i2);
  return gm;
}

std::array<std::array<Matrix, 4>, 4> lorentz_generators() {
  const GammaMatrices gm = weyl_gammas();
  std::array<std::array<Matrix, 4>, 4> j;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) j[mu][nu] = 0.25 * kI * commutator(gm.gamma[mu], gm.gamma[nu]);
  }
  return j;
}

Matrix boost_intertwiner(const FourVector& p, double mass) {
  require_on_shell(p, mass, "boost_intertwiner");
  const double mc = mass * si::c;
  const Matrix i2 = identity(2);
  const Matrix ps = pauli_dot(p.x);
  Matrix v(4, 2);
  v.topRows(2) = i2 + (p.t * i2 - ps) / mc;
  v.bottomRows(2) = i2 + (p.t * i2 + ps) / mc;
  return v / (2.0 * std::sqrt(1.0 + p.t / mc));
}

Matrix intertwiner_bar(const Matrix& v) {
  if (v.rows() != 4 || v.cols() != 2) throw DimensionError("intertwiner_bar: v must be 4x2");
  return v.adjoint() * weyl_gammas().gamma[0];
}

Matrix intertwine(const FourVector& p, const DensityMatrix& rho, double mass) {
  if (rho.dim() != 2) throw DimensionError("intertwine: spin state must be 2x2");
  const Matrix v = boost_intertwiner(p, mass);
  return v * rho.matrix() * intertwiner_bar(v);
}

Matrix disentangle(const FourVector& p, const Matrix& theta, double mass) {
  if (theta.rows() != 4 || theta.cols() != 4) throw DimensionError("disentangle: theta is 4x4");
  const Matrix v = boost_intertwiner(p, mass);
  return intertwiner_bar(v) * theta * v;
}

FourVector polarization_fourvector(const FourVector& p, const BlochVector& xi, double mass) {
  require_on_shell(p, mass, "polarization_fourvector");
  const double mc = mass * si::c;
  const Vec3& x = xi.vec();
  const double px = p.x.dot(x);
  return {0.5 * px, 0.5 * (mc * x + p.x * px / (p.t + mc))};
}

BlochVector bloch_from_w(const FourVector& p, const FourVector& w, double mass) {
  require_on_shell(p, mass, "bloch_from_w");
  const double mc = mass * si::c;
  return BlochVector((2.0 / mc) * (w.x - w.t * p.x / (p.t + mc)));
}

SpinorDensity::SpinorDensity(const Matrix& theta) : m_(theta) {
  if (m_.rows() != 4 || m_.cols() != 4) throw DimensionError("SpinorDensity: must be 4x4");
  // Same invariants as a density matrix; reuse its validation.
  (void)DensityMatrix(m_);
}

SpinorDensity spinor_density(const FourVector& p, const FourVector& w, double mass) {
  require_on_shell(p, mass, "spinor_density");
  const double mc = mass * si::c;
  const GammaMatrices gm = weyl_gammas();
  const Matrix i4 = identity(4);
  const Matrix theta = (mc / (4.0 * p.t)) * (i4 + slash(gm, p) / mc) *
                       (i4 - 2.0 * gm.gamma5 * slash(gm, w) / mc) * gm.gamma[0];
  return SpinorDensity(theta);
}

Generator em_spin_generator(const EMFieldConfig& f) {
  f.validate();
  const double k = f.bohr_magneton() / si::hbar;
  const Matrix bs = pauli_dot(f.B);
  const Matrix es = pauli_dot(f.E);
  return Generator(-k * block_diag(bs, bs), (k / si::c) * block_diag(es, -es));
}

QubitGeneratorParams em_spin_params(const EMFieldConfig& f) {
  f.validate();
  const double k = 2.0 * f.bohr_magneton() / si::hbar;
  return {-k * f.B, (k / si::c) * f.E};
}

Vec3 spin_from_spinor_block(const Matrix& theta) {
  if (theta.rows() != 4 || theta.cols() != 4) throw DimensionError("spin_from_spinor_block: 4x4");
  const Matrix upper = theta.topLeftCorner(2, 2);
  const double tr = upper.trace().real();
  if (!(tr > policy.singular_trace)) throw SingularNormalizationError("spinor upper block is empty");
  return bloch_components(upper / tr);
}

BMTTrajectory bmt_evolve(const EMFieldConfig& f, const FourVector& p0, const BlochVector& xi0,
                         double tau_end, double step, std::size_t sample_stride) {
  f.validate();
  require_on_shell(p0, f.mass, "bmt_evolve");
  IntegratorConfig cfg;
  cfg.step = step;
  cfg.t_end = tau_end;
  cfg.sample_stride = sample_stride;
  cfg.validate();

  const double mc = f.mc();
  const double mc2 = mc * mc;
  const Eigen::Matrix4d fm = field_matrix(f);
  const QubitGeneratorParams spin = em_spin_params(f);
  // Lower spinor block evolves with the conjugate field: w -> w, g -> -g.
  const QubitGeneratorParams spin_lower{spin.omega, -spin.g};
  const FourVector rest(mc, Vec3::Zero());
  const Matrix theta0 = intertwine(rest, bloch_to_density(xi0), f.mass);
  const double xi2 = xi0.vec().squaredNorm();

  Eigen::Matrix<double, 4, 2> y;
  y.col(0) = p0.as_vector();
  y.col(1) = polarization_fourvector(p0, xi0, f.mass).as_vector();
  double lab = 0.0;

  BMTTrajectory out;
  auto record = [&](double tau) {
    const Eigen::Vector4d p = y.col(0);
    const Eigen::Vector4d w = y.col(1);
    out.max_mass_shell_drift = std::max(out.max_mass_shell_drift, std::abs(dot4(p, p) - mc2) / mc2);
    out.max_orthogonality_drift = std::max(out.max_orthogonality_drift, std::abs(dot4(p, w)) / mc2);
    out.max_polarization_drift =
        std::max(out.max_polarization_drift, std::abs(dot4(w, w) + 0.25 * mc2 * xi2) / mc2);
    out.tau.push_back(tau);
    out.lab_time.push_back(lab);
    out.p.push_back(FourVector::from_vector(p));
    out.w.push_back(FourVector::from_vector(w));
    out.xi.push_back(bloch_trajectory_general(spin, xi0, tau).vec());
    const ScaledPropagator ku = scaled_propagator(spin, tau);
    const ScaledPropagator kl = scaled_propagator(spin_lower, tau);
    const Matrix k = block_diag(ku.k, kl.k);
    const Matrix theta = k * theta0 * k.adjoint();
    out.xi_theta.push_back(spin_from_spinor_block(theta / theta.trace().real()));
  };

  const double h = step;
  const auto count = static_cast<std::size_t>(std::ceil(tau_end / h - 1e-9));
  record(0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const double t0 = static_cast<double>(i) * h;
    const double t1 = (i + 1 == count) ? tau_end : static_cast<double>(i + 1) * h;
    const double hi = t1 - t0;
    const Eigen::Matrix<double, 4, 2> k1 = fm * y;
    const Eigen::Matrix<double, 4, 2> k2 = fm * (y + 0.5 * hi * k1);
    const Eigen::Matrix<double, 4, 2> k3 = fm * (y + 0.5 * hi * k2);
    const Eigen::Matrix<double, 4, 2> k4 = fm * (y + hi * k3);
    // dt/dtau = p^0 / mc, integrated with the same stages.
    const double l1 = y(0, 0);
    const double l2 = y(0, 0) + 0.5 * hi * k1(0, 0);
    const double l3 = y(0, 0) + 0.5 * hi * k2(0, 0);
    const double l4 = y(0, 0) + hi * k3(0, 0);
    lab += hi / 6.0 * (l1 + 2.0 * l2 + 2.0 * l3 + l4) / mc;
    y += hi / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (!y.allFinite()) throw IntegrationDivergedError(t1, "bmt_evolve: non-finite state");
    const double shell = std::abs(dot4(y.col(0), y.col(0)) - mc2) / mc2;
    const double orth = std::abs(dot4(y.col(0), y.col(1))) / mc2;
    if (shell > policy.conservation_drift || orth > policy.conservation_drift) {
      throw IntegrationDivergedError(t1, "bmt_evolve: conservation drift " +
                                             std::to_string(std::max(shell, orth)));
    }
    if ((i + 1) % sample_stride == 0 || i + 1 == count) record(t1);
  }
  return out;
}

}  // namespace qdsim
