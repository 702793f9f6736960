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

#include "qdsim/neutrino.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qdsim/error.hpp"
#include "qdsim/numeric_policy.hpp"

namespace qdsim {

namespace {

using M2 = Eigen::Matrix2cd;
using V2 = Eigen::Vector2cd;

// exp(v.sigma) for complex v.
M2 exp_traceless(const CVec3& v) {
  const Complex s2 = (v.array() * v.array()).sum();  // v.v, no conjugation
  const Complex ch = cosh_sqrt(s2);
  const Complex sh = sinhc_sqrt(s2);
  M2 m;
  m << ch + sh * v(2), sh * (v(0) - kI * v(1)),
       sh * (v(0) + kI * v(1)), ch - sh * v(2);
  return m;
}

// (eps/2)(g - i w): the traceless drift of psi.
CVec3 drift_vector(const NeutrinoConfig& c, double L) {
  const QubitGeneratorParams q = neutrino_params(c, L);
  return 0.5 * c.eps * (q.g.cast<Complex>() - kI * q.omega.cast<Complex>());
}

}  // namespace

std::string_view to_string(NeutrinoMode m) noexcept {
  return m == NeutrinoMode::MSW ? "msw" : "damping";
}

void NeutrinoConfig::validate() const {
  for (double v : {theta, dm2, energy, eps, r_sun, v_scale, cutoff, g_sign}) {
    if (!std::isfinite(v)) throw ValidityError("NeutrinoConfig: non-finite parameter");
  }
  for (double v : density) {
    if (!std::isfinite(v)) throw ValidityError("NeutrinoConfig: non-finite density coefficient");
  }
  if (!(energy > 0.0)) throw DomainError("NeutrinoConfig: energy must be positive");
  if (!(r_sun > 0.0)) throw DomainError("NeutrinoConfig: solar radius must be positive");
  if (!(eps > 0.0)) throw DomainError("NeutrinoConfig: eps must be positive");
  if (!(cutoff > 0.0)) throw DomainError("NeutrinoConfig: cutoff must be positive");
  if (std::abs(g_sign) != 1.0) throw DomainError("NeutrinoConfig: g_sign must be +1 or -1");
}

Vec3 NeutrinoConfig::nu2_direction() const {
  return {std::sin(2.0 * theta), 0.0, -std::cos(2.0 * theta)};
}

double neutrino_potential(const NeutrinoConfig& c, double L) {
  if (!(L >= 0.0)) throw DomainError("neutrino_potential: L must be >= 0");
  if (L > c.cutoff) return 0.0;
  const double x = L / c.r_sun;
  double p = 0.0;
  for (double a : c.density) p = p * x + a;
  return c.v_scale * p;
}

QubitGeneratorParams neutrino_params(const NeutrinoConfig& c, double L) {
  const double d = c.vacuum_splitting();
  const double s2 = std::sin(2.0 * c.theta);
  const double c2 = std::cos(2.0 * c.theta);
  const double v = neutrino_potential(c, L);
  QubitGeneratorParams q;
  if (c.mode == NeutrinoMode::MSW) {
    q.omega = Vec3(d * s2, 0.0, -d * c2 + v);
  } else {
    q.omega = Vec3(d * s2, 0.0, -d * c2);
    q.g = c.g_sign * v * Vec3(c2, 0.0, s2);
  }
  return q;
}

Generator neutrino_generator(const NeutrinoConfig& c, double L) {
  c.validate();
  const QubitGeneratorParams q = neutrino_params(c, L);
  return Generator(0.5 * c.eps * pauli_dot(q.omega), 0.5 * c.eps * pauli_dot(q.g));
}

Trajectory neutrino_evolve(const NeutrinoConfig& c, const StateVector& psi0, double L_end,
                           double step, std::size_t sample_stride) {
  c.validate();
  if (psi0.dim() != 2) throw DimensionError("neutrino_evolve: flavour state is two-dimensional");
  IntegratorConfig cfg;
  cfg.step = step;
  cfg.t_end = L_end;
  cfg.sample_stride = sample_stride;
  cfg.validate();

  // Commutator-free Magnus, Gauss nodes.
  const double r3 = std::sqrt(3.0);
  const double c1 = 0.5 - r3 / 6.0;
  const double c2 = 0.5 + r3 / 6.0;
  const double a1 = 0.25 + r3 / 6.0;
  const double a2 = 0.25 - r3 / 6.0;

  Trajectory traj;
  std::vector<double> n1, n2, n3, pee, norm_error;
  V2 psi = psi0.amplitudes();
  double drift = 0.0;
  auto record = [&](double L) {
    // Stored states are normalized; the raw drift is kept as its own series.
    const StateVector sv = StateVector::normalized(Vector(psi));
    const DensityMatrix rho = DensityMatrix::from_state(sv);
    const Vec3 n = density_to_bloch(rho).vec();
    traj.times.push_back(L);
    traj.vectors.push_back(sv);
    traj.states.push_back(rho);
    n1.push_back(n(0));
    n2.push_back(n(1));
    n3.push_back(n(2));
    pee.push_back(std::norm(sv.amplitudes()(0)));
    norm_error.push_back(drift);
  };

  record(0.0);
  double L = 0.0;
  std::size_t i = 0;
  while (L < L_end) {
    double next = std::min(L_end, L + step);
    // Land exactly on the potential cutoff, where V is discontinuous.
    if (L < c.cutoff && next > c.cutoff) next = c.cutoff;
    if (L_end - next < 1e-9 * step) next = L_end;
    const double h = next - L;
    const CVec3 d1 = drift_vector(c, L + c1 * h);
    const CVec3 d2 = drift_vector(c, L + c2 * h);
    psi = exp_traceless(h * (a2 * d1 + a1 * d2)) * (exp_traceless(h * (a1 * d1 + a2 * d2)) * psi);

    const double norm = psi.norm();
    if (!std::isfinite(norm) || norm == 0.0) {
      throw IntegrationDivergedError(next, "neutrino_evolve: state vanished or overflowed");
    }
    if (c.mode == NeutrinoMode::Damping) {
      // The quasi-linear flow preserves the norm; only the linear part is
      // propagated, so project back.
      psi /= norm;
    } else {
      drift = std::abs(norm - 1.0);
      if (drift > policy.integrator_trace) {
        throw IntegrationDivergedError(next, "neutrino_evolve: norm drift " + std::to_string(drift));
      }
    }
    L = next;
    ++i;
    if (i % sample_stride == 0 || L >= L_end) record(L);
  }
  traj.add_series("n1", std::move(n1));
  traj.add_series("n2", std::move(n2));
  traj.add_series("n3", std::move(n3));
  traj.add_series("p_ee", std::move(pee));
  traj.add_series("norm_error", std::move(norm_error));
  return traj;
}

double locate_crossing(const std::function<double(double)>& f, double lo, double hi,
                       std::size_t grid, double tol) {
  if (!(hi > lo) || grid < 1 || !(tol > 0.0)) {
    throw PreconditionError("locate_crossing: need lo < hi, grid >= 1, tol > 0");
  }
  double x0 = lo;
  double f0 = f(x0);
  for (std::size_t k = 1; k <= grid; ++k) {
    const double x1 = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid);
    const double f1 = f(x1);
    if (f0 == 0.0) return x0;
    if ((f0 < 0.0) != (f1 < 0.0) || f1 == 0.0) {
      double a = x0;
      double b = x1;
      const bool neg_a = f0 < 0.0;
      while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if ((f(m) < 0.0) == neg_a) {
          a = m;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    x0 = x1;
    f0 = f1;
  }
  throw NotFoundError("no crossing on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double instability_locator(const std::function<double(double)>& g_magnitude, double omega,
                           double lo, double hi, double tol) {
  const double w = std::abs(omega);
  return locate_crossing([&](double t) { return std::abs(g_magnitude(t)) - w; }, lo, hi, 4096,
                         tol);
}

double instability_locator(const NeutrinoConfig& c, double tol) {
  c.validate();
  const double w = c.vacuum_splitting();
  return locate_crossing([&](double L) { return neutrino_potential(c, L) - w; }, 0.0, c.cutoff,
                         4096, tol);
}

double msw_resonance(const NeutrinoConfig& c, double tol) {
  c.validate();
  const double target = c.vacuum_splitting() * std::cos(2.0 * c.theta);
  return locate_crossing([&](double L) { return neutrino_potential(c, L) - target; }, 0.0,
                         c.cutoff, 4096, tol);
}

}  // namespace qdsim
