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

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qdsim/linalg.hpp"
#include "qdsim/quasilinear.hpp"
#include "qdsim/state.hpp"

namespace qdsim {

/// The triple (H, G, {L_a}) of the nonlinear master equation
///
///   d rho/dt = -i[H, rho] + {G, rho} + sum L rho L^dag
///              - rho tr[rho (2G + sum L^dag L)].
///
/// H and G must be Hermitian; everything shares one dimension.
class Generator {
 public:
  Generator(Matrix h, Matrix g, std::vector<Matrix> lindblads = {});
  /// H only, G = 0.
  static Generator hamiltonian(const Matrix& h);
  static Generator zero(Eigen::Index dim);

  const Matrix& H() const { return h_; }
  const Matrix& G() const { return g_; }
  const std::vector<Matrix>& lindblads() const { return ls_; }
  Eigen::Index dim() const { return h_.rows(); }

  /// G - iH: the drift of K(t) = exp((G - iH) t).
  Matrix drift() const;
  /// 2G + sum L^dag L: generator of the effect operator F(t).
  Matrix effect_generator() const;

 private:
  Matrix h_;
  Matrix g_;
  std::vector<Matrix> ls_;
};

/// t -> Generator. `time_independent` lets integrators hoist the evaluation
/// out of the loop and enables autonomous-only properties.
struct TimeParameterizedGenerator {
  std::function<Generator(double)> at;
  bool time_independent = false;

  static TimeParameterizedGenerator constant(const Generator& gen);
};

struct IntegratorConfig {
  double step = 1e-3;
  bool renormalize_each_step = false;
  double t_end = 0.0;
  std::size_t sample_stride = 1;

  void validate() const;
};

/// The times at which evolve() records a sample for `cfg`: every
/// sample_stride-th step of size `step`, plus t_end.
std::vector<double> sample_times(const IntegratorConfig& cfg);

/// Sampled time series of states plus named derived observables.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<StateVector> vectors;  // filled by state-vector integrators
  std::vector<std::pair<std::string, std::vector<double>>> derived;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  void add_series(const std::string& name, std::vector<double> values);
  /// Throws NotFoundError if absent.
  const std::vector<double>& series(const std::string& name) const;
  bool has_series(const std::string& name) const;
  /// Checks strictly increasing times and matching lengths.
  void validate() const;
};

Matrix gksl_rhs(const Generator& gen, const DensityMatrix& rho);
/// Linear GKSL generator; the G field is ignored.
Matrix standard_lindblad_rhs(const Generator& gen, const DensityMatrix& rho);
/// (-iH + G - <G> + i kappa) psi. Lindblad operators are not supported.
Vector state_vector_rhs(const Generator& gen, const StateVector& psi, double kappa = 0.0);

/// K(t) rho0 K(t)^dag / tr(...) with K(t) = exp((G - iH) t).
DensityMatrix closed_form_propagate(const Generator& gen, const DensityMatrix& rho0, double t);
/// {exp((G - iH) t)} as an evolution family.
KrausFamily propagator_family(const Generator& gen, double t);

/// Classical RK4 with the generator sampled at t, t + h/2, t + h.
Trajectory evolve(const TimeParameterizedGenerator& gen, const DensityMatrix& rho0,
                  const IntegratorConfig& cfg);
/// RK4 on the state-vector equation; states and vectors are both recorded.
Trajectory evolve_state_vector(const TimeParameterizedGenerator& gen, const StateVector& psi0,
                               const IntegratorConfig& cfg, double kappa = 0.0);

/// || (Phi_dt(rho) - rho)/dt - gksl_rhs(gen, rho) ||_F where Phi_dt is the
/// normalized map with K_0 = I + dt (G - iH), K_a = sqrt(dt) L_a.
double finite_difference_generator_check(const Generator& gen, const DensityMatrix& rho,
                                         double dt);

/// tr(rho H).
double mean_energy(const Generator& gen, const DensityMatrix& rho);

}  // namespace qdsim
