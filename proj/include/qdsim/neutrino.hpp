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
#include <functional>
#include <string_view>

#include "qdsim/gksl.hpp"
#include "qdsim/qubit_analytic.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

enum class NeutrinoMode { MSW, Damping };

std::string_view to_string(NeutrinoMode m) noexcept;

// Two-flavour (nu_e, nu_mu) solar neutrino propagation. Energies are in
// neV, distances in km; eps converts neV km to radians.
struct NeutrinoConfig {
  double theta = 0.59;       // rad
  double dm2 = 8e-5;         // eV^2
  double energy = 0.01;      // GeV
  double eps = 5.08;
  double r_sun = 695700.0;   // km
  double v_scale = 0.012;    // neV
  // Quartic in L / R_S, highest power first.
  std::array<double, 5> density = {519.0, -1630.0, 1844.0, -889.0, 154.910686};
  double cutoff = 365767.0;  // km; V = 0 beyond
  NeutrinoMode mode = NeutrinoMode::MSW;
  // Orientation of g: g_sign * (cos 2theta, 0, sin 2theta).
  double g_sign = 1.0;

  void validate() const;
  // dm2 / 2E in neV.
  double vacuum_splitting() const { return dm2 / (2.0 * energy); }
  // Bloch direction of the heavier mass state, (sin 2theta, 0, -cos 2theta).
  Vec3 nu2_direction() const;
};

// Matter potential in neV; zero for L beyond the cutoff.
double neutrino_potential(const NeutrinoConfig& c, double L);

// (omega(L), g(L)) in neV, before the eps conversion.
QubitGeneratorParams neutrino_params(const NeutrinoConfig& c, double L);

// H = (eps/2) omega.sigma, G = (eps/2) g.sigma in rad/km.
Generator neutrino_generator(const NeutrinoConfig& c, double L);

// Fourth-order commutator-free Magnus integration of
// i dpsi/dL = (eps/2)(omega.sigma + i g.sigma - i <g.sigma>) psi.
// Records normalized vectors and states, the series n1, n2, n3, p_ee, and
// norm_error = |||psi|| - 1| before normalization (zero in damping mode,
// which projects back onto the unit sphere every step).
Trajectory neutrino_evolve(const NeutrinoConfig& c, const StateVector& psi0, double L_end,
                           double step, std::size_t sample_stride = 1);

// First sign change of f on a uniform grid over [lo, hi], refined by
// bisection to absolute tolerance `tol`. Throws NotFoundError otherwise.
double locate_crossing(const std::function<double(double)>& f, double lo, double hi,
                       std::size_t grid = 4096, double tol = 1.0);

// Point where |g(t)| first equals |omega|.
double instability_locator(const std::function<double(double)>& g_magnitude, double omega,
                           double lo, double hi, double tol = 1.0);
// L_in: V(L) = |omega|.
double instability_locator(const NeutrinoConfig& c, double tol = 1.0);
// L_c: V(L) = (dm2 / 2E) cos 2theta.
double msw_resonance(const NeutrinoConfig& c, double tol = 1.0);

}  // namespace qdsim
