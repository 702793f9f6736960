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

#include "qdsim/qubit_analytic.hpp"

#include <cmath>
#include <string>

#include "qdsim/error.hpp"
#include "qdsim/numeric_policy.hpp"

namespace qdsim {

namespace {

// Above this exponent the hyperbolic closed forms are evaluated with a
// common factor exp(-x) divided out of numerator and denominator.
constexpr double kRescaleExponent = 40.0;

BlochVector clamp_to_ball(const Vec3& n) {
  // Rounding can push a pure-state result a few ulps past |n| = 1.
  const double r = n.norm();
  if (r > 1.0 && r <= 1.0 + policy.bloch_radius) return BlochVector(n / r);
  return BlochVector(n);
}

struct ScaledAB {
  Complex a;
  Complex b;
  double log_scale;
};

// (a, b) divided by a common positive factor exp(log_scale). The Bloch-vector
// formula is homogeneous of degree two in (a, b), so the factor cancels.
ScaledAB scaled_ab(const QubitGeneratorParams& p, double t) {
  const Complex a2 = p.alpha2();
  const Complex s = std::sqrt(a2);  // principal branch, Re s >= 0
  const double grow = 0.5 * s.real() * std::abs(t);
  if (grow <= kRescaleExponent) {
    const Complex z2 = 0.25 * t * t * a2;
    return {cosh_sqrt(z2), 0.5 * t * sinhc_sqrt(z2), 0.0};
  }
  // For t > 0: a = e^{st/2} (1 + e^{-st}) / 2, b = e^{st/2} (1 - e^{-st}) / (2s).
  // Negative t uses -s, which leaves a and b unchanged (even/odd in s).
  const Complex sv = t >= 0.0 ? s : -s;
  const Complex phase = std::exp(Complex(0.0, 0.5 * sv.imag() * t));
  const Complex decay = std::exp(-sv * t);
  return {phase * 0.5 * (1.0 + decay), phase * (1.0 - decay) / (2.0 * sv), grow};
}

void require_case(CaseClass c, const QubitGeneratorParams& p) {
  const CaseClass actual = classify(p);
  if (c == CaseClass::GenericTilted || actual != c) {
    throw PreconditionError(std::string("bloch_trajectory_case: parameters are ") +
                            std::string(to_string(actual)) + ", requested " +
                            std::string(to_string(c)));
  }
}

Vec3 finish(const Vec3& num, double den, double scale, const char* what) {
  if (!(den > policy.singular_trace * std::max(scale, 1e-300))) {
    throw SingularNormalizationError(std::string(what) + ": vanishing normalization");
  }
  return num / den;
}

}  // namespace

std::string_view to_string(CaseClass c) noexcept {
  switch (c) {
    case CaseClass::Parabolic: return "parabolic";
    case CaseClass::HyperbolicDamped: return "hyperbolic-damped";
    case CaseClass::Oscillatory: return "oscillatory";
    case CaseClass::GenericTilted: return "generic-tilted";
  }
  return "unknown";
}

CVec3 QubitGeneratorParams::alpha() const {
  return g.cast<Complex>() - kI * omega.cast<Complex>();
}

Generator QubitGeneratorParams::to_generator() const {
  validate();
  return Generator(0.5 * pauli_dot(omega), 0.5 * pauli_dot(g));
}

void QubitGeneratorParams::validate() const {
  if (!omega.allFinite() || !g.allFinite()) throw ValidityError("qubit params: non-finite");
}

CaseClass classify(const QubitGeneratorParams& p) {
  p.validate();
  const double gn = p.g.norm();
  const double wn = p.omega.norm();
  if (std::abs(p.c1()) > policy.orthogonal * std::max(1.0, gn * wn)) {
    return CaseClass::GenericTilted;
  }
  const double scale = std::max(gn * gn, wn * wn);
  if (std::abs(p.c2()) < policy.parabolic * scale || scale == 0.0) return CaseClass::Parabolic;
  return p.c2() > 0.0 ? CaseClass::HyperbolicDamped : CaseClass::Oscillatory;
}

SL2CCoefficients sl2c_coefficients(const QubitGeneratorParams& p, double t) {
  p.validate();
  const Complex z2 = 0.25 * t * t * p.alpha2();
  return {cosh_sqrt(z2), 0.5 * t * sinhc_sqrt(z2), p.alpha()};
}

ScaledPropagator scaled_propagator(const QubitGeneratorParams& p, double t) {
  p.validate();
  const ScaledAB c = scaled_ab(p, t);
  return {c.a * identity(2) + c.b * pauli_dot(p.alpha()), c.log_scale};
}

BlochVector bloch_trajectory_general(const QubitGeneratorParams& p, const BlochVector& xi,
                                     double t) {
  p.validate();
  const auto [a, b, log_scale] = scaled_ab(p, t);
  const Vec3& x = xi.vec();
  const Vec3& g = p.g;
  const Vec3& w = p.omega;
  const double aa = std::norm(a);
  const double bb = std::norm(b);
  const Complex abs_ = a * std::conj(b);
  const double re = 2.0 * abs_.real();   // ab* + a*b
  const double im = -2.0 * abs_.imag();  // i(ab* - a*b)
  const double gw2 = g.squaredNorm() + w.squaredNorm();
  const double gx = g.dot(x);
  const double wx = w.dot(x);

  const double den = aa + bb * (gw2 - 2.0 * w.cross(g).dot(x)) + re * gx + im * wx;
  const Vec3 num = (aa - bb * gw2) * x + (re + 2.0 * bb * gx) * g + (im + 2.0 * bb * wx) * w -
                   2.0 * bb * g.cross(w) - im * g.cross(x) + re * w.cross(x);
  return clamp_to_ball(finish(num, den, aa + bb * gw2, "bloch_trajectory_general"));
}

BlochVector bloch_trajectory_case(CaseClass c, const QubitGeneratorParams& p,
                                  const BlochVector& xi, double t) {
  require_case(c, p);
  const Vec3& x = xi.vec();
  const Vec3& g = p.g;
  const Vec3& w = p.omega;
  const double g2 = g.squaredNorm();
  const double w2 = w.squaredNorm();
  const double gx = g.dot(x);
  const double wx = w.dot(x);
  const Vec3 wxg = w.cross(g);
  const Vec3 bracket = gx * g + wx * w + wxg;

  switch (c) {
    case CaseClass::Parabolic: {
      const double t2 = 0.5 * t * t;
      const Vec3 num = (1.0 - w2 * t2) * x + (t + gx * t2) * g + wx * t2 * w + t2 * wxg +
                       t * w.cross(x);
      const double den = 1.0 + t * gx + t2 * (w2 - wxg.dot(x));
      return clamp_to_ball(finish(num, den, 1.0 + t2 * (w2 + g2), "case (g^2 = w^2)"));
    }
    case CaseClass::HyperbolicDamped: {
      const double om = std::sqrt(g2 - w2);
      const double u = om * t;
      double ch, sh, one;
      if (u > kRescaleExponent) {
        const double e = std::exp(-2.0 * u);
        ch = 1.0 + e;
        sh = 1.0 - e;
        one = 2.0 * std::exp(-u);
      } else {
        ch = std::cosh(u);
        sh = std::sinh(u);
        one = 1.0;
      }
      const Vec3 num = (g2 * one - w2 * ch) * x + om * sh * (g + w.cross(x)) - (one - ch) * bracket;
      const double den = g2 * ch - w2 * one + (one - ch) * wxg.dot(x) + om * sh * gx;
      return clamp_to_ball(finish(num, den, (g2 + w2) * ch, "case (g^2 > w^2)"));
    }
    case CaseClass::Oscillatory: {
      const double om = std::sqrt(w2 - g2);
      const double co = std::cos(om * t);
      const double si = std::sin(om * t);
      const Vec3 num = (w2 * co - g2) * x + om * si * (g + w.cross(x)) + (1.0 - co) * bracket;
      const double den = w2 - g2 * co - (1.0 - co) * wxg.dot(x) + om * si * gx;
      return clamp_to_ball(finish(num, den, g2 + w2, "case (w^2 > g^2)"));
    }
    case CaseClass::GenericTilted: break;
  }
  throw PreconditionError("bloch_trajectory_case: unsupported case");
}

Vec3 bloch_velocity(const QubitGeneratorParams& p, const Vec3& n) {
  return p.omega.cross(n) + p.g - p.g.dot(n) * n;
}

std::pair<double, double> eigenstate_probabilities(double omega, double g, double t) {
  if (!(omega > 0.0) || !(g > 0.0)) throw DomainError("eigenstate_probabilities: need g, w > 0");
  const double g2 = g * g;
  const double w2 = omega * omega;
  double pm;
  if (std::abs(g2 - w2) < policy.parabolic * std::max(g2, w2)) {
    const double x = (g * t) * (g * t);
    pm = std::isfinite(x) ? x / (4.0 + 2.0 * x) : 0.5;
  } else if (g > omega) {
    // Divided through by cosh(Wt) so large times stay finite.
    const double sech = 1.0 / std::cosh(std::sqrt(g2 - w2) * t);
    pm = 0.5 * g2 * (1.0 - sech) / (g2 - w2 * sech);
  } else {
    const double c = std::cos(std::sqrt(w2 - g2) * t);
    pm = 0.5 * (g2 - g2 * c) / (w2 - g2 * c);
  }
  return {1.0 - pm, pm};
}

double rabi_probability(double g, double omega, double t) {
  const double r2 = g * g + omega * omega;
  if (r2 == 0.0) return 0.0;
  return g * g / (2.0 * r2) * (1.0 - std::cos(t * std::sqrt(r2)));
}

Asymptote asymptote(const QubitGeneratorParams& p, const BlochVector& xi) {
  const CaseClass c = classify(p);
  const Vec3& x = xi.vec();
  const Vec3& g = p.g;
  const Vec3& w = p.omega;
  const double g2 = g.squaredNorm();
  const double w2 = w.squaredNorm();
  const double gx = g.dot(x);
  const double wx = w.dot(x);
  const Vec3 wxg = w.cross(g);

  switch (c) {
    case CaseClass::GenericTilted: {
      const double c1 = p.c1();
      const double c2 = p.c2();
      const double root = std::sqrt(c2 * c2 + 4.0 * c1 * c1);
      const double xr = std::sqrt(0.5 * (c2 + root));
      const double sgn = (c1 > 0.0) ? 1.0 : (c1 < 0.0 ? -1.0 : 0.0);
      const double yr = -sgn * std::sqrt(0.5 * std::max(0.0, -c2 + root));
      const double r2 = xr * xr + yr * yr;
      const Vec3 num = (r2 - (g2 + w2)) * x + 2.0 * (xr + gx) * g + 2.0 * (-yr + wx) * w +
                       2.0 * (wxg + yr * g.cross(x) + xr * w.cross(x));
      const double den = (r2 + g2 + w2) - 2.0 * (wxg.dot(x) - xr * gx + yr * wx);
      return {c, finish(num, den, r2 + g2 + w2, "asymptote")};
    }
    case CaseClass::HyperbolicDamped: {
      const double om = std::sqrt(g2 - w2);
      const Vec3 num = -w2 * x + (om + gx) * g + wx * w + wxg + om * w.cross(x);
      const double den = g2 - wxg.dot(x) + om * gx;
      return {c, finish(num, den, g2, "asymptote")};
    }
    case CaseClass::Parabolic: {
      if (g2 + w2 == 0.0) return {c, x};  // zero generator: nothing moves
      const Vec3 num = 2.0 * wxg - (g2 + w2) * x + 2.0 * gx * g + 2.0 * wx * w;
      const double den = (g2 + w2) - 2.0 * wxg.dot(x);
      return {c, finish(num, den, g2 + w2, "asymptote")};
    }
    case CaseClass::Oscillatory: return {c, std::nullopt};
  }
  return {c, std::nullopt};
}

double SingleLindbladParams::lbar() const {
  const double den = 2.0 * g - l * l;
  return (2.0 * g + l * l) / den;
}

void SingleLindbladParams::validate() const {
  if (!std::isfinite(kappa) || !std::isfinite(g) || !std::isfinite(omega) || !std::isfinite(l)) {
    throw ValidityError("single-Lindblad params: non-finite");
  }
  if (2.0 * g == l * l) throw DomainError("single-Lindblad params: 2g = l^2 makes lbar infinite");
}

Generator SingleLindbladParams::to_generator() const {
  validate();
  Matrix sigma_plus = Matrix::Zero(2, 2);
  sigma_plus(0, 1) = 1.0;
  return Generator(0.5 * omega * pauli(3), -kappa * identity(2) + 0.5 * g * pauli(3),
                   {l * sigma_plus});
}

BlochVector single_lindblad_trajectory(const SingleLindbladParams& p, const BlochVector& xi,
                                       double t) {
  p.validate();
  const double lb = p.lbar();
  const double x3 = xi(2);
  const Complex xp(xi(0), xi(1));
  const double expo = -2.0 * p.g * t;
  double n3;
  Complex np;
  if (expo > kRescaleExponent) {
    // Divide numerator and denominator by e^{-2gt}.
    const double inv = std::exp(-expo);
    const double den = (lb + x3) * inv + (1.0 - x3);
    if (den == 0.0) throw SingularNormalizationError("single_lindblad_trajectory");
    n3 = ((lb + x3) * inv - (1.0 - x3) * lb) / den;
    np = xp * (lb + 1.0) * std::exp(Complex(p.g * t, p.omega * t)) / den;
  } else {
    const double e = std::exp(expo);
    const double den = (lb + x3) + (1.0 - x3) * e;
    if (den == 0.0) throw SingularNormalizationError("single_lindblad_trajectory");
    n3 = ((lb + x3) - (1.0 - x3) * lb * e) / den;
    np = xp * (lb + 1.0) * std::exp(Complex(-p.g * t, p.omega * t)) / den;
  }
  return clamp_to_ball(Vec3(np.real(), np.imag(), n3));
}

KrausFamily single_lindblad_kraus(const SingleLindbladParams& p, double t) {
  p.validate();
  if (t < 0.0) throw DomainError("single_lindblad_kraus: t must be >= 0");
  const double damp = std::exp(-p.kappa * t);
  const Complex half(0.5 * p.g * t, -0.5 * p.omega * t);
  Matrix k0 = Matrix::Zero(2, 2);
  k0(0, 0) = damp * std::exp(half);
  k0(1, 1) = damp * std::exp(-half);
  Matrix k1 = Matrix::Zero(2, 2);
  // Integrating l^2 sigma+ rho sigma- against the K0 flow gives
  // |K1_01|^2 = e^{-2 kappa t} l^2 sinh(g t) / g (-> l^2 t as g -> 0).
  const double gt = p.g * t;
  const double shape = std::abs(gt) < 1e-8 ? t * (1.0 + gt * gt / 6.0) : std::sinh(gt) / p.g;
  k1(0, 1) = damp * p.l * std::sqrt(shape);
  return KrausFamily({k0, k1}, KrausRegime::EvolutionFamily);
}

std::pair<double, double> sl2c_invariants_check(const QubitGeneratorParams& p, const Matrix& s) {
  if (s.rows() != 2 || s.cols() != 2) throw DimensionError("sl2c_invariants_check: S must be 2x2");
  const Complex det = s.determinant();
  if (std::abs(det - 1.0) > policy.unit_determinant) {
    throw PreconditionError("sl2c_invariants_check: det S != 1");
  }
  const Matrix drift = 0.5 * pauli_dot(p.alpha());
  const Matrix m = s * drift * s.inverse();
  const CVec3 beta = 2.0 * pauli_components(m);
  const Vec3 g = beta.real();
  const Vec3 w = -beta.imag();
  return {g.dot(w), g.squaredNorm() - w.squaredNorm()};
}

}  // namespace qdsim
