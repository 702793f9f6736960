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

#include <optional>
#include <string_view>
#include <utility>

#include "qdsim/gksl.hpp"
#include "qdsim/linalg.hpp"
#include "qdsim/quasilinear.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

/// Qubit generator H = w.sigma/2, G = g.sigma/2 with the inner-automorphism
/// invariants C1 = g.w and C2 = g^2 - w^2.
struct QubitGeneratorParams {
  Vec3 omega = Vec3::Zero();
  Vec3 g = Vec3::Zero();

  double c1() const { return g.dot(omega); }
  double c2() const { return g.squaredNorm() - omega.squaredNorm(); }
  /// alpha = g - i w.
  CVec3 alpha() const;
  /// alpha.alpha = C2 - 2i C1.
  Complex alpha2() const { return {c2(), -2.0 * c1()}; }
  Generator to_generator() const;
  void validate() const;
};

/// K(t) = exp((G - iH) t) = a I + b alpha.sigma.
struct SL2CCoefficients {
  Complex a;
  Complex b;
  CVec3 alpha;
};

enum class CaseClass { Parabolic, HyperbolicDamped, Oscillatory, GenericTilted };

std::string_view to_string(CaseClass c) noexcept;

/// Which closed-form family the parameters belong to. Orthogonality uses
/// |C1| <= 1e-12 max(1, |g||w|); g^2 = w^2 uses |C2| < 1e-10 max(g^2, w^2).
CaseClass classify(const QubitGeneratorParams& p);

SL2CCoefficients sl2c_coefficients(const QubitGeneratorParams& p, double t);

/// K(t) = exp(log_scale) * k, with k bounded for arbitrarily large t.
struct ScaledPropagator {
  Matrix k;
  double log_scale;
};
ScaledPropagator scaled_propagator(const QubitGeneratorParams& p, double t);

/// Bloch vector n(t) of K rho(xi) K^dag / tr(...), evaluated from a, b
/// with an overflow-safe common rescaling.
BlochVector bloch_trajectory_general(const QubitGeneratorParams& p, const BlochVector& xi,
                                     double t);

/// The orthogonal-case (C1 = 0) closed forms for g^2 = w^2, g^2 > w^2 and
/// w^2 > g^2. Throws PreconditionError if `c` does not describe `p`.
BlochVector bloch_trajectory_case(CaseClass c, const QubitGeneratorParams& p,
                                  const BlochVector& xi, double t);

/// Right-hand side of the Bloch-form flow dn/dt = w x n + g - (g.n) n.
Vec3 bloch_velocity(const QubitGeneratorParams& p, const Vec3& n);

/// Occupation probabilities (p+, p-) of the H eigenstates for w = (0,0,w),
/// g = (g,0,0), xi = (0,0,1). p+ + p- = 1 exactly.
std::pair<double, double> eigenstate_probabilities(double omega, double g, double t);

/// Linear Rabi benchmark g^2/(2(g^2+w^2)) (1 - cos(t sqrt(g^2+w^2))).
double rabi_probability(double g, double omega, double t);

/// Long-time limit of n(t): a Bloch vector for the converging classes, no
/// value for the oscillatory class.
struct Asymptote {
  CaseClass case_class;
  std::optional<Vec3> value;
  bool oscillatory() const { return !value.has_value(); }
};

Asymptote asymptote(const QubitGeneratorParams& p, const BlochVector& xi);

/// Single Lindblad operator model:
///   G = -kappa I + (g/2) sigma3,  H = (w/2) sigma3,  L = l sigma+,
/// with lbar = (2g + l^2) / (2g - l^2).
struct SingleLindbladParams {
  double kappa = 0.0;
  double g = 0.0;
  double omega = 0.0;
  double l = 0.0;

  double lbar() const;
  void validate() const;
  Generator to_generator() const;
};

BlochVector single_lindblad_trajectory(const SingleLindbladParams& p, const BlochVector& xi,
                                       double t);

/// {K0(t), K1(t)} reproducing the single-Lindblad evolution:
///   K0 = e^{-kappa t} e^{(g - i w) t sigma3 / 2},
///   K1 = e^{-kappa t} l sqrt(sinh(g t) / g) sigma+,
/// so F(t) = e^{-2 kappa t} diag(e^{g t}, e^{-g t} + l^2 sinh(g t) / g).
KrausFamily single_lindblad_kraus(const SingleLindbladParams& p, double t);

/// Invariants (C1', C2') of S (G - iH) S^-1 for det S = 1.
std::pair<double, double> sl2c_invariants_check(const QubitGeneratorParams& p, const Matrix& s);

}  // namespace qdsim
