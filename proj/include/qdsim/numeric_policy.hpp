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

namespace qdsim {

/// Every numerical tolerance used by the library, in one place, so that the
/// tests assert against exactly the thresholds the library enforces.
struct NumericPolicy {
  // Type invariants.
  double hermiticity = 1e-10;     // ||M - M^dag||_F relative to ||M||_F
  double trace = 1e-10;           // |tr(rho) - 1|
  double min_eigenvalue = -1e-9;  // smallest admissible eigenvalue
  double bloch_radius = 1e-9;     // |n| <= 1 + this
  double state_norm = 1e-10;      // | ||psi|| - 1 |

  // Operations.
  double singular_trace = 1e-12;  // tr(F rho) at or below this is singular
  double pure_purity = 1e-8;      // is_pure <=> purity >= 1 - this
  double pauli_series = 1e-12;    // |v.v| below this uses the series form
  double exponent_cap = 700.0;    // max ||(G - iH) t||_F per exponential

  // Integrator health.
  double integrator_trace = 1e-8;  // trace drift tolerated without renorm

  // Qubit case classification.
  double orthogonal = 1e-12;  // |g.w| <= this * max(1, |g||w|) means C1 = 0
  double parabolic = 1e-10;   // |C2| < this * max(g^2, w^2) means g^2 = w^2

  // Physics models.
  double mass_shell = 1e-8;     // |p.p - (mc)^2| relative to (mc)^2
  double ensemble_sum = 1e-12;  // |sum p_i - 1|
  double unit_determinant = 1e-10;
  double conservation_drift = 1e-6;  // BMT invariants, relative
};

inline constexpr NumericPolicy policy{};

}  // namespace qdsim
