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

#include "qdsim/gksl.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "qdsim/error.hpp"
#include "qdsim/numeric_policy.hpp"

namespace qdsim {

Generator::Generator(Matrix h, Matrix g, std::vector<Matrix> lindblads)
    : h_(std::move(h)), g_(std::move(g)), ls_(std::move(lindblads)) {
  require_hermitian(h_, "Generator H");
  require_hermitian(g_, "Generator G");
  require_same_dim(h_, g_, "Generator");
  for (const Matrix& l : ls_) {
    require_square(l, "Generator L");
    require_finite(l, "Generator L");
    require_same_dim(l, h_, "Generator L");
  }
}

Generator Generator::hamiltonian(const Matrix& h) {
  return Generator(h, Matrix::Zero(h.rows(), h.cols()));
}

Generator Generator::zero(Eigen::Index dim) {
  return Generator(Matrix::Zero(dim, dim), Matrix::Zero(dim, dim));
}

Matrix Generator::drift() const { return g_ - kI * h_; }

Matrix Generator::effect_generator() const {
  Matrix x = 2.0 * g_;
  for (const Matrix& l : ls_) x.noalias() += l.adjoint() * l;
  return x;
}

TimeParameterizedGenerator TimeParameterizedGenerator::constant(const Generator& gen) {
  return {[gen](double) { return gen; }, true};
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("integrator: step must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("integrator: t_end must be >= 0");
  if (sample_stride == 0) throw DomainError("integrator: sample_stride must be positive");
}

void Trajectory::add_series(const std::string& name, std::vector<double> values) {
  for (auto& [n, v] : derived) {
    if (n == name) {
      v = std::move(values);
      return;
    }
  }
  derived.emplace_back(name, std::move(values));
}

bool Trajectory::has_series(const std::string& name) const {
  for (const auto& [n, v] : derived) {
    if (n == name) return true;
  }
  return false;
}

const std::vector<double>& Trajectory::series(const std::string& name) const {
  for (const auto& [n, v] : derived) {
    if (n == name) return v;
  }
  throw NotFoundError("trajectory has no series '" + name + "'");
}

void Trajectory::validate() const {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ValidityError("trajectory: times not increasing");
  }
  if (!states.empty() && states.size() != times.size()) {
    throw ValidityError("trajectory: states/times length mismatch");
  }
  if (!vectors.empty() && vectors.size() != times.size()) {
    throw ValidityError("trajectory: vectors/times length mismatch");
  }
  for (const auto& [n, v] : derived) {
    if (v.size() != times.size()) throw ValidityError("trajectory: series '" + n + "' length");
  }
}

Matrix gksl_rhs(const Generator& gen, const DensityMatrix& rho) {
  const Matrix& r = rho.matrix();
  require_same_dim(gen.H(), r, "gksl_rhs");
  Matrix out = -kI * commutator(gen.H(), r) + anticommutator(gen.G(), r);
  for (const Matrix& l : gen.lindblads()) out.noalias() += l * r * l.adjoint();
  const Complex tr = (r * gen.effect_generator()).trace();
  out -= r * tr.real();
  return out;
}

Matrix standard_lindblad_rhs(const Generator& gen, const DensityMatrix& rho) {
  const Matrix& r = rho.matrix();
  require_same_dim(gen.H(), r, "standard_lindblad_rhs");
  Matrix out = -kI * commutator(gen.H(), r);
  for (const Matrix& l : gen.lindblads()) {
    out.noalias() += l * r * l.adjoint();
    out -= 0.5 * anticommutator(l.adjoint() * l, r);
  }
  return out;
}

Vector state_vector_rhs(const Generator& gen, const StateVector& psi, double kappa) {
  if (!gen.lindblads().empty()) {
    throw UnsupportedModeError("state_vector_rhs: Lindblad operators have no state-vector form");
  }
  const Vector& v = psi.amplitudes();
  if (v.size() != gen.dim()) throw DimensionError("state_vector_rhs: dimension mismatch");
  const Vector gv = gen.G() * v;
  const double g_mean = v.dot(gv).real() / v.squaredNorm();
  return -kI * (gen.H() * v) + gv - g_mean * v + kI * kappa * v;
}

namespace {

void require_no_lindblads(const Generator& gen, const char* what) {
  if (!gen.lindblads().empty()) {
    throw UnsupportedModeError(std::string(what) + ": requires vanishing Lindblad operators");
  }
}

Matrix capped_propagator(const Generator& gen, double t) {
  const Matrix m = gen.drift() * t;
  const double size = m.norm();
  if (size > policy.exponent_cap) {
    throw DomainError("propagator: ||(G - iH) t|| = " + std::to_string(size) +
                      " exceeds the overflow cap " + std::to_string(policy.exponent_cap));
  }
  return matrix_exponential(m);
}

// RK4 kernel over a fixed or dynamic matrix type. The fused right-hand side
//   A rho + rho A^dag + sum L rho L^dag - rho tr(rho X),
// with A = G - iH and X = 2G + sum L^dag L, equals gksl_rhs term by term.
//
// G is replaced by its traceless part G - (tr G / n) I. On tr rho = 1 the
// two right-hand sides coincide, but off it the trace defect obeys
// d(1 - tr rho)/dt = -tr(rho X)(1 - tr rho), which is unstable whenever the
// dominant growth rate of the linear flow is negative. For traceless G that
// rate is >= 0 (the superoperator trace is sum |tr L|^2 >= 0), so round-off
// in the trace is not amplified.
template <int N>
class DensityKernel {
 public:
  using M = Eigen::Matrix<Complex, N, N>;

  void load(const Generator& gen) {
    const double shift = gen.G().trace().real() / static_cast<double>(gen.dim());
    a_ = gen.drift() - shift * Matrix::Identity(gen.dim(), gen.dim());
    x_ = gen.effect_generator() - 2.0 * shift * Matrix::Identity(gen.dim(), gen.dim());
    ls_.clear();
    for (const Matrix& l : gen.lindblads()) ls_.emplace_back(l);
  }

  void rhs(const M& rho, M& out) const {
    out.noalias() = a_ * rho;
    out.noalias() += rho * a_.adjoint();
    for (const M& l : ls_) out.noalias() += l * rho * l.adjoint();
    const double tr = rho.cwiseProduct(x_.transpose()).sum().real();
    out -= tr * rho;
  }

 private:
  M a_;
  M x_;
  std::vector<M> ls_;
};

template <int N>
class VectorKernel {
 public:
  using V = Eigen::Matrix<Complex, N, 1>;
  using M = Eigen::Matrix<Complex, N, N>;

  void load(const Generator& gen) {
    require_no_lindblads(gen, "evolve_state_vector");
    a_ = gen.drift();
    g_ = gen.G();
  }

  void rhs(const V& psi, V& out, double kappa) const {
    out.noalias() = a_ * psi;
    const Complex gm = psi.dot(g_ * psi) / psi.squaredNorm();
    out -= (gm.real() - kI * kappa) * psi;
  }

 private:
  M a_;
  M g_;
};

// Uniform step partition of [0, t_end]; the last step absorbs the remainder.
struct StepPlan {
  std::size_t count;
  double step;
  double t_end;

  explicit StepPlan(const IntegratorConfig& cfg) : step(cfg.step), t_end(cfg.t_end) {
    cfg.validate();
    const double ratio = cfg.t_end / cfg.step;
    count = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
  }
  double time(std::size_t i) const { return i >= count ? t_end : static_cast<double>(i) * step; }
  bool sampled(std::size_t i, std::size_t stride) const { return i % stride == 0 || i == count; }
};

// Evaluates a generator at the three RK4 stage times, reusing the end point
// of one step as the start of the next.
template <class Kernel>
class StageGenerators {
 public:
  StageGenerators(const TimeParameterizedGenerator& gen, Eigen::Index dim) : gen_(gen), dim_(dim) {
    Generator g0 = gen.at(0.0);
    if (g0.dim() != dim) throw DimensionError("evolve: generator/state dimension mismatch");
    for (Kernel& k : k_) k.load(g0);
  }

  void advance(double t, double h) {
    if (gen_.time_independent) return;
    if (!have_end_ || end_time_ != t) k_[0].load(checked(t));
    k_[1].load(checked(t + 0.5 * h));
    k_[2].load(checked(t + h));
    end_time_ = t + h;
    have_end_ = true;
  }
  void roll() {
    if (!gen_.time_independent) std::swap(k_[0], k_[2]);
  }

  const Kernel& start() const { return k_[0]; }
  const Kernel& mid() const { return gen_.time_independent ? k_[0] : k_[1]; }
  const Kernel& end() const { return gen_.time_independent ? k_[0] : k_[2]; }

 private:
  Generator checked(double t) const {
    Generator g = gen_.at(t);
    if (g.dim() != dim_) throw DimensionError("evolve: generator dimension changed");
    return g;
  }

  const TimeParameterizedGenerator& gen_;
  Kernel k_[3];
  Eigen::Index dim_;
  double end_time_ = 0.0;
  bool have_end_ = false;
};

template <int N>
Trajectory run_density(const TimeParameterizedGenerator& gen, const DensityMatrix& rho0,
                       const IntegratorConfig& cfg) {
  using M = typename DensityKernel<N>::M;
  const StepPlan plan(cfg);
  StageGenerators<DensityKernel<N>> stages(gen, rho0.dim());

  const double trace_tol = policy.integrator_trace;
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  M rho = rho0.matrix();
  M k1, k2, k3, k4, tmp;
  if constexpr (N == Eigen::Dynamic) {
    const Eigen::Index d = rho0.dim();
    k1.resize(d, d); k2.resize(d, d); k3.resize(d, d); k4.resize(d, d); tmp.resize(d, d);
  }
  for (std::size_t i = 0; i < plan.count; ++i) {
    const double t = plan.time(i);
    const double h = plan.time(i + 1) - t;
    stages.advance(t, h);
    stages.start().rhs(rho, k1);
    tmp = rho + (0.5 * h) * k1;
    stages.mid().rhs(tmp, k2);
    tmp = rho + (0.5 * h) * k2;
    stages.mid().rhs(tmp, k3);
    tmp = rho + h * k3;
    stages.end().rhs(tmp, k4);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    stages.roll();

    const double t_next = plan.time(i + 1);
    if (!rho.allFinite()) throw IntegrationDivergedError(t_next, "evolve: non-finite state");
    const Complex tr = rho.trace();
    if (cfg.renormalize_each_step) {
      if (!(tr.real() > policy.singular_trace)) {
        throw IntegrationDivergedError(t_next, "evolve: trace collapsed");
      }
      rho /= tr.real();
    } else if (std::abs(tr - 1.0) > trace_tol) {
      throw IntegrationDivergedError(t_next, "evolve: trace drift " + std::to_string(std::abs(tr - 1.0)));
    }
    if (plan.sampled(i + 1, cfg.sample_stride)) {
      try {
        traj.states.emplace_back(Matrix(rho), trace_tol);
      } catch (const ValidityError& e) {
        throw IntegrationDivergedError(t_next, std::string("evolve: ") + e.what());
      }
      traj.times.push_back(t_next);
    }
  }
  return traj;
}

template <int N>
Trajectory run_vector(const TimeParameterizedGenerator& gen, const StateVector& psi0,
                      const IntegratorConfig& cfg, double kappa) {
  using V = typename VectorKernel<N>::V;
  const StepPlan plan(cfg);
  StageGenerators<VectorKernel<N>> stages(gen, psi0.dim());

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.vectors.push_back(psi0);
  traj.states.push_back(DensityMatrix::from_state(psi0));

  V psi = psi0.amplitudes();
  V k1, k2, k3, k4, tmp;
  if constexpr (N == Eigen::Dynamic) {
    const Eigen::Index d = psi0.dim();
    k1.resize(d); k2.resize(d); k3.resize(d); k4.resize(d); tmp.resize(d);
  }
  for (std::size_t i = 0; i < plan.count; ++i) {
    const double t = plan.time(i);
    const double h = plan.time(i + 1) - t;
    stages.advance(t, h);
    stages.start().rhs(psi, k1, kappa);
    tmp = psi + (0.5 * h) * k1;
    stages.mid().rhs(tmp, k2, kappa);
    tmp = psi + (0.5 * h) * k2;
    stages.mid().rhs(tmp, k3, kappa);
    tmp = psi + h * k3;
    stages.end().rhs(tmp, k4, kappa);
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    stages.roll();

    const double t_next = plan.time(i + 1);
    if (!psi.allFinite()) throw IntegrationDivergedError(t_next, "evolve_state_vector: non-finite");
    const double norm = psi.norm();
    if (cfg.renormalize_each_step) {
      psi /= norm;
    } else if (std::abs(norm - 1.0) > policy.integrator_trace) {
      throw IntegrationDivergedError(t_next, "evolve_state_vector: norm drift");
    }
    if (plan.sampled(i + 1, cfg.sample_stride)) {
      // The recorded vector is unit-normalized; drift was bounded above.
      const StateVector sv = StateVector::normalized(Vector(psi));
      traj.vectors.push_back(sv);
      traj.states.push_back(DensityMatrix::from_state(sv));
      traj.times.push_back(t_next);
    }
  }
  return traj;
}

}  // namespace

DensityMatrix closed_form_propagate(const Generator& gen, const DensityMatrix& rho0, double t) {
  require_no_lindblads(gen, "closed_form_propagate");
  require_same_dim(gen.H(), rho0.matrix(), "closed_form_propagate");
  if (t == 0.0) return rho0;
  // The normalization cancels any overall factor; dividing it out first
  // keeps K rho K^dag finite all the way up to the exponent cap.
  Matrix k = capped_propagator(gen, t);
  const double scale = k.cwiseAbs().maxCoeff();
  if (scale > 0.0) k *= 1.0 / scale;  // complex division would square scale
  return apply_normalized(KrausFamily({k}), rho0);
}

KrausFamily propagator_family(const Generator& gen, double t) {
  require_no_lindblads(gen, "propagator_family");
  return KrausFamily({capped_propagator(gen, t)});
}

Trajectory evolve(const TimeParameterizedGenerator& gen, const DensityMatrix& rho0,
                  const IntegratorConfig& cfg) {
  if (!gen.at) throw PreconditionError("evolve: empty generator");
  if (rho0.dim() == 2) return run_density<2>(gen, rho0, cfg);
  return run_density<Eigen::Dynamic>(gen, rho0, cfg);
}

Trajectory evolve_state_vector(const TimeParameterizedGenerator& gen, const StateVector& psi0,
                               const IntegratorConfig& cfg, double kappa) {
  if (!gen.at) throw PreconditionError("evolve_state_vector: empty generator");
  if (psi0.dim() == 2) return run_vector<2>(gen, psi0, cfg, kappa);
  return run_vector<Eigen::Dynamic>(gen, psi0, cfg, kappa);
}

double finite_difference_generator_check(const Generator& gen, const DensityMatrix& rho,
                                         double dt) {
  if (!(dt > 0.0)) throw DomainError("finite_difference_generator_check: dt must be > 0");
  std::vector<Matrix> ops;
  ops.push_back(identity(gen.dim()) + dt * gen.drift());
  const double s = std::sqrt(dt);
  for (const Matrix& l : gen.lindblads()) ops.push_back(s * l);
  const DensityMatrix stepped = apply_normalized(KrausFamily(std::move(ops)), rho);
  const Matrix fd = (stepped.matrix() - rho.matrix()) / dt;
  return (fd - gksl_rhs(gen, rho)).norm();
}

double mean_energy(const Generator& gen, const DensityMatrix& rho) {
  require_same_dim(gen.H(), rho.matrix(), "mean_energy");
  return (rho.matrix() * gen.H()).trace().real();
}

std::vector<double> sample_times(const IntegratorConfig& cfg) {
  const StepPlan plan(cfg);
  std::vector<double> out;
  for (std::size_t i = 0; i <= plan.count; ++i) {
    if (plan.sampled(i, cfg.sample_stride)) out.push_back(plan.time(i));
  }
  return out;
}

}  // namespace qdsim
