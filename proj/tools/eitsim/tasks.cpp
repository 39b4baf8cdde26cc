// Copyright 2026 The eitsim Authors
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

#include "tasks.hpp"

#include <limits>

#include "eitsim/eitsim.hpp"

namespace eitsim::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const Complex kNaNc{kNaN, kNaN};

Table evolve(const SystemSpec& spec, const TaskParams& t) {
  const Hamiltonian h = build_hamiltonian(spec);
  const GammaCoefficients g = rule_based_gamma(spec.decoherence, h.basis);
  const std::size_t dim = h.dimension();

  auto elements = t.elements;
  if (elements.empty()) {
    for (std::size_t i = 1; i < dim; ++i) elements.emplace_back(i, 0);
  }
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (elements[k].first >= dim || elements[k].second >= dim) {
      throw ScenarioError("task.elements[" + std::to_string(k) + "]",
                          "index out of range for dimension " + std::to_string(dim));
    }
  }
  if (t.dual_rail_start && !spec.dual_rail) {
    throw ScenarioError("task.initial", "\"dual-rail\" needs system.dual_rail = true");
  }

  MasterOptions opt;
  opt.step = t.step;
  opt.stride = t.stride;
  opt.adaptive = t.adaptive;
  opt.tolerance = t.tolerance;
  const DensityMatrix rho0 = t.dual_rail_start ? dual_rail_initial_state(h.basis)
                                               : DensityMatrix::projector(h.basis, 0);
  const Trajectory tr = evolve_master(h, g, rho0, t.t_end, opt);

  Table table;
  for (const char* c : {"time", "trace_deviation", "purity", "min_eigenvalue", "hermiticity_error"}) {
    table.add_column(c);
  }
  for (std::size_t i = 0; i < dim; ++i) table.add_column("pop_" + std::to_string(i));
  for (const auto& [i, j] : elements) {
    table.add_complex_column("rho_" + std::to_string(i) + "_" + std::to_string(j));
  }
  for (std::size_t s = 0; s < tr.times.size(); ++s) {
    auto& row = table.rows.emplace_back();
    RowWriter w(row);
    const auto& d = tr.diagnostics[s];
    w << tr.times[s] << d.trace_deviation << d.purity << d.min_eigenvalue << d.hermiticity_error;
    const DensityMatrix& r = tr.states[s];
    for (std::size_t i = 0; i < dim; ++i) w << r(i, i).real();
    for (const auto& [i, j] : elements) w << r(i, j);
  }
  return table;
}

Table steady(const SystemSpec& spec, const TaskParams& t) {
  const QssSolution q = qss(spec);
  const int levels = level_count(spec.scheme);
  Table table;
  for (const char* c : {"t", "tau_a", "validity_lower", "validity_upper", "validity_ok",
                        "weak_field_warning", "rho_11"}) {
    table.add_column(c);
  }
  for (const char* c : {"rho_21", "rho_31", "rho_41", "w10"}) table.add_complex_column(c);
  for (double time : t.times) {
    auto& row = table.rows.emplace_back();
    RowWriter w(row);
    w << time << q.tau_a << q.validity.lower << q.validity.upper << q.validity.satisfiable
      << q.weak_field_warning << q.rho11(time);
    for (int k = 2; k <= 4; ++k) w << (k <= levels ? q.rho_k1(k, time) : kNaNc);
    w << q.w10.value_or(kNaNc);
  }
  return table;
}

Table spectrum(const SystemSpec& spec, const TaskParams& t) {
  const DerivedGammas g = derived_gammas(spec.decoherence, spec.scheme);
  const double nu_b = spec.detuning(ModeLabel::B), nu_c = spec.detuning(ModeLabel::C);
  const Complex wb = spec.rabi(ModeLabel::B), wc = spec.rabi(ModeLabel::C);
  if (t.kerr_shape && spec.scheme != Scheme::FourLevel) {
    throw ScenarioError("task.kerr_shape", "needs a four-level system");
  }
  SpectralCurve curve;
  if (t.kerr_shape) {
    curve = kerr_susceptibility_shape(t.nu_a, nu_b, nu_c, wb, g.g21, g.g31, g.g41);
  } else {
    switch (spec.scheme) {
      case Scheme::TwoLevel: curve = susceptibility_two_level(t.nu_a, g.g21); break;
      case Scheme::ThreeLevel:
        curve = susceptibility_three_level(t.nu_a, nu_b, wb, g.g21, g.g31);
        break;
      case Scheme::FourLevel:
        curve = susceptibility_four_level(t.nu_a, nu_b, nu_c, wb, wc, g.g21, g.g31, g.g41);
        break;
    }
  }
  const EtaKappa ek = eta_kappa(curve, t.eta_scale);
  Table table;
  table.add_column("nu_a");
  table.add_complex_column("chi");
  for (const char* c : {"eta", "kappa", "deta_dnu"}) table.add_column(c);
  for (std::size_t i = 0; i < curve.axis.size(); ++i) {
    auto& row = table.rows.emplace_back();
    RowWriter(row) << curve.axis[i] << curve.chi[i] << ek.eta[i] << ek.kappa[i] << ek.deta_dnu[i];
  }
  return table;
}

Table gate_metrics(const SystemSpec& spec, const TaskParams& t) {
  const DerivedGammas g = derived_gammas(spec.decoherence, spec.scheme);
  const DualRailShift shift = dual_rail_w10(spec);
  GateMetrics m;
  switch (spec.scheme) {
    case Scheme::TwoLevel:
      m = dual_rail_metrics_two_level(spec.detuning(ModeLabel::A), g.g20, shift.gamma10,
                                      spec.rabi(ModeLabel::A), spec.atom_count, t.target_phase,
                                      t.margin);
      break;
    case Scheme::FourLevel:
      m = dual_rail_metrics_four_level(spec.rabi(ModeLabel::A), spec.rabi(ModeLabel::B),
                                       spec.rabi(ModeLabel::C), spec.detuning(ModeLabel::C), g.g20,
                                       g.g40, spec.atom_count, t.target_phase, t.margin);
      break;
    case Scheme::ThreeLevel:
      throw ScenarioError("system.scheme", "gate-metrics needs a two- or four-level system");
  }
  Table table;
  for (const char* c : {"phase", "t_for_pi", "fidelity", "entropy", "decay_exponent", "gamma10",
                        "deco2", "schmlim", "suppress", "nondem"}) {
    table.add_column(c);
  }
  table.add_complex_column("w10");
  auto& row = table.rows.emplace_back();
  RowWriter(row) << m.phase << m.t_for_pi << m.fidelity << m.entropy << m.decay_exponent
                 << shift.gamma10 << m.regime.deco2 << m.regime.schmlim << m.regime.suppress
                 << m.regime.nondem << shift.w10;
  return table;
}

Table kerr_overlap(const TaskParams& t) {
  Table table;
  for (const char* c : {"phi", "alpha_sq", "overlap", "gate_error"}) table.add_column(c);
  for (double phi : t.phi) {
    for (double a : t.alpha_sq) {
      auto& row = table.rows.emplace_back();
      RowWriter(row) << phi << a << coherent_overlap(t.n_a, t.n_c, phi, a)
                     << conditional_gate_error(t.n_a, t.n_c, phi, a);
    }
  }
  return table;
}

Table dressed(const SystemSpec& spec, const TaskParams& t) {
  if (spec.scheme != Scheme::ThreeLevel) {
    throw ScenarioError("system.scheme", "dressed needs a three-level system");
  }
  const DressedStates ds = dressed_states_three_level(spec.rabi(ModeLabel::A), spec.rabi(ModeLabel::B));
  Table table;
  for (const char* c : {"t", "eig_minus", "eig_zero", "eig_plus", "splitting", "degenerate",
                        "excited_population"}) {
    table.add_column(c);
  }
  for (double time : t.times) {
    auto& row = table.rows.emplace_back();
    RowWriter(row) << time << ds.eigenvalues[0] << ds.eigenvalues[1] << ds.eigenvalues[2]
                   << ds.dressed_splitting << ds.degenerate << ds.excited_population(time);
  }
  return table;
}

Table milestones(const TaskParams& t) {
  Table table;
  for (const char* c : {"q", "nu_a", "t_q", "phi_q"}) table.add_column(c);
  for (int q : t.q) {
    const PhaseMilestone m = phase_milestones(t.omega_a, q);
    auto& row = table.rows.emplace_back();
    RowWriter(row) << static_cast<double>(q) << m.nu_a << m.t_q << m.phi_q;
  }
  return table;
}

}  // namespace

Table run_task(const RunPoint& p) {
  const TaskParams& t = p.task;
  switch (t.kind) {
    case TaskKind::Evolve: return evolve(*p.system, t);
    case TaskKind::Steady: return steady(*p.system, t);
    case TaskKind::Spectrum: return spectrum(*p.system, t);
    case TaskKind::GateMetrics: return gate_metrics(*p.system, t);
    case TaskKind::KerrOverlap: return kerr_overlap(t);
    case TaskKind::Dressed: return dressed(*p.system, t);
    case TaskKind::Milestones: return milestones(t);
  }
  return {};
}

std::string task_columns_help() {
  return R"(Output columns (complex values are split into <name>_re, <name>_im):
  every task   sweep_index, sweep_value (nan without a sweep), then:
  evolve       time, trace_deviation, purity, min_eigenvalue, hermiticity_error,
               pop_<i> for each basis index i, rho_<i>_<j> for task.elements
               (default: every [i, 0] with i >= 1)
  steady       t, tau_a, validity_lower, validity_upper, validity_ok,
               weak_field_warning, rho_11, rho_21, rho_31, rho_41, w10
               (nan where the scheme has no such level)
  spectrum     nu_a, chi, eta, kappa, deta_dnu
  gate-metrics phase, t_for_pi, fidelity, entropy, decay_exponent, gamma10,
               deco2, schmlim, suppress, nondem, w10
  kerr-overlap phi, alpha_sq, overlap, gate_error
  dressed      t, eig_minus, eig_zero, eig_plus, splitting, degenerate,
               excited_population
  milestones   q, nu_a, t_q, phi_q
Flags are written as 0 or 1. Rows follow sweep order, then grid order.
)";
}

}  // namespace eitsim::cli
