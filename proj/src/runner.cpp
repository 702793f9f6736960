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

#include "qdsim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "qdsim/dirac.hpp"
#include "qdsim/error.hpp"
#include "qdsim/jaynes_cummings.hpp"
#include "qdsim/neutrino.hpp"
#include "qdsim/numeric_policy.hpp"
#include "qdsim/output.hpp"
#include "qdsim/qubit_analytic.hpp"

namespace qdsim {

namespace {

// Oracle tolerances.
constexpr double kOdeVsClosedForm = 1e-6;
constexpr double kCaseFormula = 1e-8;
constexpr double kKraus = 1e-10;
constexpr double kSpinorRoute = 1e-8;
constexpr double kDirectSum = 1e-8;
constexpr double kPostInstabilityMean = 0.05;
constexpr std::size_t kDirectSumSamples = 10;

void add_check(RunReport& r, const std::string& name, double violation, double tolerance) {
  r.checks.push_back({name, violation, tolerance, std::isfinite(violation) && violation <= tolerance});
}

void add_info(RunReport& r, const std::string& key, double value) {
  r.info.emplace_back(key, format_real(value));
}

IntegratorConfig integrator_config(const Scenario& s, double default_step) {
  IntegratorConfig cfg;
  cfg.t_end = s.real("integrator", "t_end");
  cfg.step = s.real_or("integrator", "step", default_step);
  cfg.sample_stride = static_cast<std::size_t>(s.integer_or("integrator", "sample_stride", 1));
  cfg.validate();
  return cfg;
}

std::string scale_suffix(double v) { return "_g" + format_real(v); }

double bloch_distance(const DensityMatrix& rho, const Vec3& n) {
  return (density_to_bloch(rho).vec() - n).norm();
}

// ---------------------------------------------------------------- qubit

RunResult run_qubit_closed_form(const Scenario& s, const RunOptions& opts) {
  RunResult out;
  RunReport& rep = out.report;
  const Vec3 omega = s.vec3("qubit", "omega");
  const Vec3 g_base = s.vec3("qubit", "g");
  const BlochVector xi(s.vec3("qubit", "xi"));
  const bool rabi = s.boolean_or("qubit", "rabi", false);
  const bool scanned = s.has("qubit", "g_scale");
  std::vector<double> scales = s.list_or("qubit", "g_scale", {1.0});
  const IntegratorConfig cfg = integrator_config(s, 1e-3);
  const std::vector<double> times = sample_times(cfg);
  Trajectory& traj = out.trajectory;
  traj.times = times;

  const double w = omega.norm();
  double max_ode = 0.0;
  double max_case = 0.0;
  double max_eig = 0.0;
  double max_purity = 0.0;
  bool eig_applicable = false;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    QubitGeneratorParams p{omega, scales[k] * g_base};
    p.validate();
    const std::string suffix = scanned ? scale_suffix(scales[k]) : "";
    std::vector<double> n1, n2, n3, pp, pm, rb;
    std::vector<Vec3> closed;
    for (double t : times) {
      const Vec3 n = bloch_trajectory_general(p, xi, t).vec();
      closed.push_back(n);
      n1.push_back(n(0));
      n2.push_back(n(1));
      n3.push_back(n(2));
      if (w > 0.0) {
        const double proj = n.dot(omega) / w;
        pp.push_back(0.5 * (1.0 + proj));
        pm.push_back(0.5 * (1.0 - proj));
      }
      if (rabi) rb.push_back(rabi_probability(p.g.norm(), w, t));
      if (k == 0) traj.states.push_back(bloch_to_density(BlochVector(n)));
    }
    rep.info.emplace_back("class" + suffix, std::string(to_string(classify(p))));

    if (opts.check) {
      const Trajectory ode =
          evolve(TimeParameterizedGenerator::constant(p.to_generator()), bloch_to_density(xi), cfg);
      for (std::size_t i = 0; i < ode.size(); ++i) {
        max_ode = std::max(max_ode, bloch_distance(ode.states[i], closed[i]));
      }
      const CaseClass c = classify(p);
      if (c != CaseClass::GenericTilted) {
        for (std::size_t i = 0; i < times.size(); ++i) {
          const Vec3 nc = bloch_trajectory_case(c, p, xi, times[i]).vec();
          max_case = std::max(max_case, (nc - closed[i]).norm());
        }
      }
      const bool standard = omega(0) == 0.0 && omega(1) == 0.0 && omega(2) > 0.0 &&
                            p.g(1) == 0.0 && p.g(2) == 0.0 && p.g(0) >= 0.0 &&
                            xi.vec() == Vec3(0.0, 0.0, 1.0);
      if (standard) {
        eig_applicable = true;
        for (std::size_t i = 0; i < times.size(); ++i) {
          const double p_minus = eigenstate_probabilities(omega(2), p.g(0), times[i]).second;
          max_eig = std::max(max_eig, std::abs(p_minus - pm[i]));
        }
      }
      if (std::abs(xi.norm() - 1.0) <= policy.pure_purity) {
        for (const Vec3& n : closed) max_purity = std::max(max_purity, std::abs(n.norm() - 1.0));
      }
    }
    traj.add_series("n1" + suffix, std::move(n1));
    traj.add_series("n2" + suffix, std::move(n2));
    traj.add_series("n3" + suffix, std::move(n3));
    if (w > 0.0) {
      traj.add_series("p_plus" + suffix, std::move(pp));
      traj.add_series("p_minus" + suffix, std::move(pm));
    }
    if (rabi) traj.add_series("rabi" + suffix, std::move(rb));
  }
  if (opts.check) {
    add_check(rep, "ode_vs_closed_form", max_ode, kOdeVsClosedForm);
    add_check(rep, "case_formula_vs_general", max_case, kCaseFormula);
    if (eig_applicable) add_check(rep, "eigenstate_probability_formula", max_eig, kCaseFormula);
    if (std::abs(xi.norm() - 1.0) <= policy.pure_purity) {
      add_check(rep, "pure_state_stays_pure", max_purity, policy.pure_purity);
    }
  }
  return out;
}

double morse_profile(double q, double nu, double t) {
  const double u = 1.0 - std::exp(-nu * t);
  return q * (1.0 - u * u);
}

RunResult run_gksl_ode(const Scenario& s, const RunOptions& opts) {
  RunResult out;
  RunReport& rep = out.report;
  const Vec3 omega = s.vec3("qubit", "omega");
  const Vec3 g_vec = s.vec3("qubit", "g");
  const BlochVector xi(s.vec3("qubit", "xi"));
  const double kappa = s.real_or("qubit", "kappa", 0.0);
  const bool morse = s.string_or("qubit", "g_profile", "constant") == "morse";
  const IntegratorConfig cfg = integrator_config(s, 1e-3);

  const Matrix shift = kappa * identity(2);
  TimeParameterizedGenerator gen;
  if (morse) {
    if (g_vec.norm() == 0.0) throw DomainError("qubit.g must give a direction for g_profile = morse");
    const Vec3 ghat = g_vec.normalized();
    const double q = s.real("qubit", "q");
    const double nu = s.real("qubit", "nu");
    gen.at = [=](double t) {
      const Generator base = QubitGeneratorParams{omega, morse_profile(q, nu, t) * ghat}.to_generator();
      return Generator(base.H(), base.G() - shift);
    };
    gen.time_independent = false;
  } else {
    const Generator base = QubitGeneratorParams{omega, g_vec}.to_generator();
    gen = TimeParameterizedGenerator::constant(Generator(base.H(), base.G() - shift));
  }

  out.trajectory = evolve(gen, bloch_to_density(xi), cfg);
  Trajectory& traj = out.trajectory;
  std::vector<double> n1, n2, n3, energy, pur, ent;
  const Generator g0 = gen.at(0.0);
  double trace_drift = 0.0;
  for (const DensityMatrix& rho : traj.states) {
    const Vec3 n = density_to_bloch(rho).vec();
    n1.push_back(n(0));
    n2.push_back(n(1));
    n3.push_back(n(2));
    energy.push_back(mean_energy(g0, rho));
    pur.push_back(purity(rho));
    ent.push_back(von_neumann_entropy(rho));
    trace_drift = std::max(trace_drift, std::abs(rho.matrix().trace().real() - 1.0));
  }
  traj.add_series("n1", std::move(n1));
  traj.add_series("n2", std::move(n2));
  traj.add_series("n3", std::move(n3));
  traj.add_series("energy", std::move(energy));
  traj.add_series("purity", std::move(pur));
  traj.add_series("entropy", std::move(ent));

  if (!opts.check) return out;
  add_check(rep, "trace_drift", trace_drift, policy.integrator_trace);
  if (!morse) {
    // kappa enters only as a gauge; the closed form is evaluated without it.
    const QubitGeneratorParams p{omega, g_vec};
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const Vec3 n = bloch_trajectory_general(p, xi, traj.times[i]).vec();
      worst = std::max(worst, bloch_distance(traj.states[i], n));
    }
    add_check(rep, "ode_vs_closed_form", worst, kOdeVsClosedForm);
    rep.info.emplace_back("class", std::string(to_string(classify(p))));
    return out;
  }

  const double q = s.real("qubit", "q");
  const double nu = s.real("qubit", "nu");
  try {
    const double t_in = instability_locator([&](double t) { return morse_profile(q, nu, t); },
                                            omega.norm(), 0.0, cfg.t_end, 1e-3);
    add_info(rep, "t_in", t_in);
  } catch (const NotFoundError&) {
    rep.info.emplace_back("t_in", "none");
  }
  if (s.has("qubit", "mean_from")) {
    const double from = s.real("qubit", "mean_from");
    Vec3 mean = Vec3::Zero();
    std::size_t count = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      if (traj.times[i] < from) continue;
      mean += density_to_bloch(traj.states[i]).vec();
      ++count;
    }
    if (count == 0) throw DomainError("qubit.mean_from lies beyond integrator.t_end");
    mean /= static_cast<double>(count);
    add_info(rep, "mean_n1", mean(0));
    add_info(rep, "mean_n2", mean(1));
    add_info(rep, "mean_n3", mean(2));
    add_check(rep, "post_instability_mean_vs_omega_axis", (mean - omega.normalized()).norm(),
              kPostInstabilityMean);
  }
  return out;
}

// ------------------------------------------------------- single Lindblad

RunResult run_single_lindblad(const Scenario& s, const RunOptions& opts) {
  RunResult out;
  RunReport& rep = out.report;
  SingleLindbladParams p;
  p.kappa = s.real_or("lindblad", "kappa", 0.0);
  p.g = s.real("lindblad", "g");
  p.omega = s.real("lindblad", "omega");
  p.l = s.real("lindblad", "l");
  p.validate();
  const BlochVector xi(s.vec3("lindblad", "xi"));
  const IntegratorConfig cfg = integrator_config(s, 1e-3);
  const std::vector<double> times = sample_times(cfg);

  Trajectory& traj = out.trajectory;
  traj.times = times;
  std::vector<double> n1, n2, n3, ent, pur;
  for (double t : times) {
    const BlochVector n = single_lindblad_trajectory(p, xi, t);
    const DensityMatrix rho = bloch_to_density(n);
    traj.states.push_back(rho);
    n1.push_back(n(0));
    n2.push_back(n(1));
    n3.push_back(n(2));
    ent.push_back(von_neumann_entropy(rho));
    pur.push_back(purity(rho));
  }
  traj.add_series("n1", std::move(n1));
  traj.add_series("n2", std::move(n2));
  traj.add_series("n3", std::move(n3));
  traj.add_series("entropy", std::move(ent));
  traj.add_series("purity", std::move(pur));
  add_info(rep, "lbar", p.lbar());
  rep.info.emplace_back("entropy_base", "e");
  if (single_lindblad_kraus(p, cfg.t_end).exceeds_kraus_rank_bound()) {
    rep.warnings.push_back("Kraus family has at least N^2 operators");
  }

  if (!opts.check) return out;
  const Trajectory ode =
      evolve(TimeParameterizedGenerator::constant(p.to_generator()), bloch_to_density(xi), cfg);
  double worst_ode = 0.0;
  double worst_kraus = 0.0;
  const DensityMatrix rho0 = bloch_to_density(xi);
  for (std::size_t i = 0; i < ode.size(); ++i) {
    worst_ode = std::max(worst_ode, state_distance(ode.states[i], traj.states[i]));
    const DensityMatrix viaK = apply_normalized(single_lindblad_kraus(p, times[i]), rho0);
    worst_kraus = std::max(worst_kraus, state_distance(viaK, traj.states[i]));
  }
  add_check(rep, "ode_vs_closed_form", worst_ode, kOdeVsClosedForm);
  add_check(rep, "kraus_vs_closed_form", worst_kraus, kKraus);
  return out;
}

// -------------------------------------------------------- Jaynes-Cummings

RunResult run_jaynes_cummings(const Scenario& s, const RunOptions& opts) {
  RunResult out;
  RunReport& rep = out.report;
  JCParams p;
  p.omega_f = s.real("jc", "omega_f");
  p.omega_a = s.real("jc", "omega_a");
  p.g = s.real("jc", "g");
  p.n_max = static_cast<int>(s.integer_or("jc", "n_max", 16));
  p.validate();
  const DensityMatrix block0 = bloch_to_density(BlochVector(s.vec3("jc", "xi")));

  JCBlockState s0;
  int primary = static_cast<int>(s.integer_or("jc", "block", 0));
  if (s.has("jc", "weights")) {
    s0.weights = s.list_or("jc", "weights", {});
    s0.blocks.assign(s0.weights.size(), block0);
    if (!s.has("jc", "block")) {
      primary = static_cast<int>(std::find_if(s0.weights.begin(), s0.weights.end(),
                                              [](double x) { return x > 0.0; }) -
                                 s0.weights.begin());
    }
  } else {
    s0 = JCBlockState::single_block(p, primary, block0);
  }
  s0.validate();

  const IntegratorConfig cfg = integrator_config(s, 1e-2);
  const std::vector<double> times = sample_times(cfg);
  Trajectory& traj = out.trajectory;
  traj.times = times;
  std::vector<std::vector<double>> lambda(s0.weights.size());
  std::vector<double> n1, n2, n3, energy;
  double worst_sum = 0.0;
  std::vector<JCBlockState> states;
  for (double t : times) {
    JCBlockState st = jc_evolve(p, s0, t);
    double sum = 0.0;
    for (std::size_t n = 0; n < st.weights.size(); ++n) {
      lambda[n].push_back(st.weights[n]);
      sum += st.weights[n];
    }
    worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    const DensityMatrix& b = st.blocks[static_cast<std::size_t>(primary)];
    const Vec3 n = density_to_bloch(b).vec();
    n1.push_back(n(0));
    n2.push_back(n(1));
    n3.push_back(n(2));
    energy.push_back(jc_mean_energy(p, st));
    traj.states.push_back(b);
    states.push_back(std::move(st));
  }
  for (std::size_t n = 0; n < lambda.size(); ++n) {
    if (s0.weights[n] > 0.0) traj.add_series("lambda_" + std::to_string(n), std::move(lambda[n]));
  }
  traj.add_series("n1", std::move(n1));
  traj.add_series("n2", std::move(n2));
  traj.add_series("n3", std::move(n3));
  traj.add_series("energy", std::move(energy));
  rep.info.emplace_back("primary_block", std::to_string(primary));

  if (!opts.check) return out;
  add_check(rep, "weights_sum_to_one", worst_sum, policy.trace);

  double mismatches = 0.0;
  for (int n = 0; n <= p.n_max; ++n) {
    const double gn = p.g * std::sqrt(n + 1.0);
    const double w = std::abs(p.omega_a);
    const CaseClass expected = std::abs(gn) > w   ? CaseClass::HyperbolicDamped
                               : std::abs(gn) < w ? CaseClass::Oscillatory
                                                  : CaseClass::Parabolic;
    if (jc_block_class(p, n) != expected) mismatches += 1.0;
  }
  add_check(rep, "block_classification", mismatches, 0.0);

  // Independent route: dense propagation of the direct sum.
  const Generator big = jc_direct_sum_generator(p);
  const DensityMatrix big0 = jc_direct_sum_state(s0);
  const double drift_norm = big.drift().norm();
  const std::size_t stride = std::max<std::size_t>(1, times.size() / kDirectSumSamples);
  double worst_ds = 0.0;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < times.size(); i += stride) {
    if (drift_norm * times[i] > policy.exponent_cap) {
      ++skipped;
      continue;
    }
    const DensityMatrix dense = closed_form_propagate(big, big0, times[i]);
    worst_ds = std::max(worst_ds, state_distance(dense, jc_direct_sum_state(states[i])));
  }
  if (skipped > 0) {
    rep.warnings.push_back("direct-sum cross-check skipped " + std::to_string(skipped) +
                           " sample(s) beyond the exponent cap");
  }
  add_check(rep, "blocks_vs_direct_sum", worst_ds, kDirectSum);
  return out;
}

// -------------------------------------------------------------------- BMT

RunResult run_bmt(const Scenario& s, const RunOptions& opts) {
  RunResult out;
  RunReport& rep = out.report;
  EMFieldConfig f;
  f.E = s.vec3("bmt", "E");
  f.B = s.vec3("bmt", "B");
  f.charge = s.real_or("bmt", "charge", si::electron_charge);
  f.mass = s.real_or("bmt", "mass", si::electron_mass);
  f.validate();
  const double mc = f.mc();
  const Vec3 p_rel = s.vec3_or("bmt", "p", Vec3::Zero());
  const FourVector p0(mc * std::sqrt(1.0 + p_rel.squaredNorm()), mc * p_rel);
  const BlochVector xi(s.vec3("bmt", "xi"));

  const QubitGeneratorParams spin = em_spin_params(f);
  const double rate = std::max(spin.omega.norm(), spin.g.norm());
  if (!(rate > 0.0)) throw DomainError("bmt: E and B are both zero");
  const IntegratorConfig cfg = integrator_config(s, 1e-3 / rate);
  const BMTTrajectory bt = bmt_evolve(f, p0, xi, cfg.t_end, cfg.step, cfg.sample_stride);

  Trajectory& traj = out.trajectory;
  traj.times = bt.tau;
  std::vector<double> x1, x2, x3, q0, q1, q2, q3, lab;
  double worst_route = 0.0;
  for (std::size_t i = 0; i < bt.tau.size(); ++i) {
    const Vec3& x = bt.xi[i];
    x1.push_back(x(0));
    x2.push_back(x(1));
    x3.push_back(x(2));
    q0.push_back(bt.p[i].t / mc);
    q1.push_back(bt.p[i].x(0) / mc);
    q2.push_back(bt.p[i].x(1) / mc);
    q3.push_back(bt.p[i].x(2) / mc);
    lab.push_back(bt.lab_time[i]);
    traj.states.push_back(bloch_to_density(BlochVector(x)));
    worst_route = std::max(worst_route, (x - bt.xi_theta[i]).norm());
  }
  traj.add_series("xi1", std::move(x1));
  traj.add_series("xi2", std::move(x2));
  traj.add_series("xi3", std::move(x3));
  traj.add_series("p0", std::move(q0));
  traj.add_series("p1", std::move(q1));
  traj.add_series("p2", std::move(q2));
  traj.add_series("p3", std::move(q3));
  traj.add_series("t_lab", std::move(lab));
  add_info(rep, "omega", spin.omega.norm());
  add_info(rep, "g", spin.g.norm());
  add_info(rep, "step", cfg.step);
  rep.info.emplace_back("class", std::string(to_string(classify(spin))));

  if (!opts.check) return out;
  add_check(rep, "mass_shell_drift", bt.max_mass_shell_drift, policy.conservation_drift);
  add_check(rep, "p_dot_w_drift", bt.max_orthogonality_drift, policy.conservation_drift);
  add_check(rep, "w_dot_w_drift", bt.max_polarization_drift, policy.conservation_drift);
  add_check(rep, "spinor_route_vs_closed_form", worst_route, kSpinorRoute);
  if (s.has("bmt", "expect_spin")) {
    const Vec3 target = s.vec3("bmt", "expect_spin");
    const Vec3& last = bt.xi.back();
    add_check(rep, "spin_asymptote", std::min((last - target).norm(), (last + target).norm()),
              s.real_or("bmt", "spin_tolerance", 0.05));
  }
  return out;
}

// --------------------------------------------------------------- neutrino

RunResult run_neutrino(const Scenario& s, const RunOptions& opts) {
  RunResult out;
  RunReport& rep = out.report;
  NeutrinoConfig c;
  c.mode = s.string_or("neutrino", "mode", "msw") == "msw" ? NeutrinoMode::MSW : NeutrinoMode::Damping;
  c.energy = s.real("neutrino", "energy");
  c.theta = s.real_or("neutrino", "theta", c.theta);
  c.dm2 = s.real_or("neutrino", "dm2", c.dm2);
  c.eps = s.real_or("neutrino", "eps", c.eps);
  c.r_sun = s.real_or("neutrino", "r_sun", c.r_sun);
  c.v_scale = s.real_or("neutrino", "v_scale", c.v_scale);
  c.cutoff = s.real_or("neutrino", "cutoff", c.cutoff);
  c.g_sign = s.real_or("neutrino", "g_sign", c.g_sign);
  c.validate();
  const bool muon = s.string_or("neutrino", "initial", "electron") == "muon";
  const Eigen::Vector2cd e(1.0, 0.0);
  const Eigen::Vector2cd m(0.0, 1.0);
  const StateVector psi0{Vector(muon ? m : e)};
  const IntegratorConfig cfg = integrator_config(s, 1.0);

  out.trajectory = neutrino_evolve(c, psi0, cfg.t_end, cfg.step, cfg.sample_stride);
  const Trajectory& traj = out.trajectory;
  rep.info.emplace_back("mode", std::string(to_string(c.mode)));
  add_info(rep, "p_ee_end", traj.series("p_ee").back());
  for (auto [key, locate] : {std::pair<const char*, double (*)(const NeutrinoConfig&, double)>{
                                 "L_in", &instability_locator},
                             {"L_c", &msw_resonance}}) {
    try {
      add_info(rep, key, locate(c, 1.0));
    } catch (const NotFoundError&) {
      rep.info.emplace_back(key, "none");
    }
  }

  if (!opts.check) return out;
  const auto& err = traj.series("norm_error");
  add_check(rep, "norm_drift", *std::max_element(err.begin(), err.end()), policy.integrator_trace);
  if (c.mode == NeutrinoMode::MSW) {
    // Linearity: the evolved superposition equals the superposition of the
    // evolved basis states.
    const Trajectory te = neutrino_evolve(c, StateVector{Vector(e)}, cfg.t_end, cfg.step, cfg.sample_stride);
    const Trajectory tm = neutrino_evolve(c, StateVector{Vector(m)}, cfg.t_end, cfg.step, cfg.sample_stride);
    const Eigen::Vector2cd sup = (e + m) / std::sqrt(2.0);
    const Trajectory ts = neutrino_evolve(c, StateVector{Vector(sup)}, cfg.t_end, cfg.step, cfg.sample_stride);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const Vector combo = (te.vectors[i].amplitudes() + tm.vectors[i].amplitudes()) / std::sqrt(2.0);
      worst = std::max(worst, (combo - ts.vectors[i].amplitudes()).norm());
    }
    add_check(rep, "msw_linearity", worst, policy.integrator_trace);
  }
  return out;
}

}  // namespace

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* RunReport::find(const std::string& check) const {
  for (const CheckResult& c : checks) {
    if (c.name == check) return &c;
  }
  return nullptr;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "scenario: " << name << " (" << kind << ")\n";
  for (const CheckResult& c : checks) {
    os << "check " << c.name << ": " << (c.passed ? "PASS" : "FAIL")
       << " violation=" << format_real(c.violation) << " tolerance=" << format_real(c.tolerance)
       << '\n';
  }
  for (const auto& [k, v] : info) os << "info " << k << " = " << v << '\n';
  for (const std::string& w : warnings) os << "warning: " << w << '\n';
  os << "wall_seconds = " << format_real(wall_seconds) << '\n';
  os << "status: " << (passed() ? "PASS" : "FAIL") << '\n';
  os << "\n# scenario echo\n" << scenario_echo;
  return os.str();
}

RunResult run(const Scenario& s, const RunOptions& opts) {
  validate_scenario(s);
  const auto start = std::chrono::steady_clock::now();
  const std::string& kind = s.kind();
  RunResult r;
  if (kind == "qubit-closed-form") {
    r = run_qubit_closed_form(s, opts);
  } else if (kind == "gksl-ode") {
    r = run_gksl_ode(s, opts);
  } else if (kind == "single-lindblad") {
    r = run_single_lindblad(s, opts);
  } else if (kind == "jaynes-cummings") {
    r = run_jaynes_cummings(s, opts);
  } else if (kind == "bmt") {
    r = run_bmt(s, opts);
  } else {
    r = run_neutrino(s, opts);
  }
  r.trajectory.validate();
  r.report.name = s.name_or("scenario");
  r.report.kind = kind;
  r.report.scenario_echo = serialize_scenario(s);
  r.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<std::filesystem::path> write_outputs(const Scenario& s, RunResult& r,
                                                 const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

  const std::string stem = s.name_or("scenario");
  const std::vector<std::string> columns = split_list(s.string_or("output", "observables", ""));
  std::vector<std::filesystem::path> written;

  const std::filesystem::path csv = out_dir / s.string_or("output", "csv", stem + ".csv");
  emit_csv(r.trajectory, csv, columns);
  written.push_back(csv);

  if (s.has("output", "svg")) {
    PlotSpec spec;
    spec.title = s.string_or("output", "title", stem);
    spec.series = columns;
    spec.x_axis = s.string_or("output", "x_axis", "t");
    spec.log_x = s.boolean_or("output", "log_x", false);
    spec.log_y = s.boolean_or("output", "log_y", false);
    const std::filesystem::path svg = out_dir / s.string_or("output", "svg", "");
    for (std::string& w : emit_svg(r.trajectory, spec, svg)) r.report.warnings.push_back(std::move(w));
    written.push_back(svg);
  }

  const std::filesystem::path report = out_dir / (stem + ".report.txt");
  std::ofstream out(report, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + report.string() + "'");
  out << r.report.to_text();
  if (!out) throw IoError("failed writing '" + report.string() + "'");
  written.push_back(report);
  return written;
}

}  // namespace qdsim
