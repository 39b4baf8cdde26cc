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

// Gate-level figures of merit for dual-rail phase gates and cross-Kerr
// conditional phases.

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "eitsim/model.hpp"

namespace eitsim {

/// tr sqrt(sqrt(rho1) rho2 sqrt(rho1)). Eigenvalues down to -1e-9 are clipped
/// to zero; anything more negative raises NumericalError.
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);
double fidelity(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2);

/// sqrt(<psi|rho|psi>) for a unit-norm psi.
double fidelity_pure(const Eigen::VectorXcd& psi, const DensityMatrix& rho);
double fidelity_pure(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& rho);

/// -sum lambda log2 lambda over positive eigenvalues.
double entropy(const DensityMatrix& rho);
double entropy(const Eigen::MatrixXcd& rho);

struct RegimeFlags {
  bool deco2 = false;
  bool schmlim = false;
  bool suppress = false;
  bool nondem = false;
};

struct GateMetrics {
  double phase = 0.0;      // accumulated phase, negative for nu > 0
  double t_for_pi = 0.0;   // elapsed time to reach |target_phase|
  double fidelity = 1.0;
  double entropy = 0.0;    // base 2
  double decay_exponent = 0.0;  // x = gamma |phi| / nu
  RegimeFlags regime;
};

/// Two-level dual-rail gate. With x = gamma20 |phi| / nu_a:
/// F = 1/2 sqrt(1 + e^{-2x} + 2 e^{-x - gamma10 t}) (= (1 + e^{-x}) / 2 at
/// gamma10 = 0), S = x (1 - ln x) log2 e and t = |phi| nu_a / (N |Omega_a|^2).
/// Throws ValidationError("no dispersive phase") when nu_a = 0 and phi != 0.
GateMetrics dual_rail_metrics_two_level(double nu_a, double gamma20, double gamma10,
                                        Complex omega_a, int atom_count,
                                        double target_phase, double margin = 10.0);

/// Four-level gate with nu_a = nu_b = 0: the two-level formulas with
/// nu -> nu~_c and gamma20 -> gamma~_20.
GateMetrics dual_rail_metrics_four_level(Complex omega_a, Complex omega_b, Complex omega_c,
                                         double nu_c, double gamma20, double gamma40,
                                         int atom_count, double target_phase,
                                         double margin = 10.0);

struct PhaseMilestone {
  double nu_a = 0.0;
  double t_q = 0.0;
  double phi_q = 0.0;
};

/// Undamped detuning and time at which the loaded rail first reaches a
/// phase of -pi on the q-th Rabi revival. Throws ValidationError for q < 1
/// or omega_a <= 0.
PhaseMilestone phase_milestones(double omega_a, int q);

struct KerrOccupancy {
  long long n_a = 1;
  long long n_b = 1;
  long long n_c = 1;
  /// Coherent-state |alpha_b|^2; unset uses n_b.
  std::optional<double> alpha_sq;
};

struct KerrResult {
  Complex w;
  /// Per-photon coefficients with vacuum Rabi frequencies Omega_k / sqrt(n_k);
  /// unset when nu_c = 0.
  std::optional<double> w_tilde_fock;
  std::optional<double> w_tilde_coherent;
  double scatter_rate = 0.0;  // -2 Im W, the decay rate of |e^{-i W t}|^2
  bool nondem = false;
};

/// W = N |Oa|^2 |Oc|^2 / (nu_c |Ob|^2 + i (gamma41 |Ob|^2 + gamma21 |Oc|^2)).
/// Throws ValidationError when Omega_b = 0.
KerrResult kerr_w(int atom_count, Complex omega_a, Complex omega_b, Complex omega_c,
                  double nu_c, double gamma21, double gamma41,
                  const KerrOccupancy& occupancy = {}, double margin = 10.0);

/// amplitude * e^{-i W t}. Im W < 0 for a lossy medium.
Complex kerr_fock_evolution(Complex amplitude, Complex w, double t);
Eigen::VectorXcd kerr_fock_evolution(const Eigen::VectorXcd& state, Complex w, double t);

/// |sum_n P(n; alpha_sq) exp(-i n_a n_c phi alpha_sq / n)|^2 with Poisson
/// weights summed in log space over mu +- (10 sqrt(mu) + 10). The n = 0 term
/// uses n + 1 in the denominator. Throws ValidationError for negative
/// alpha_sq or photon numbers.
double coherent_overlap(long long n_a, long long n_c, double phi, double alpha_sq);

/// 1 - F^2 between the ideal e^{-i n_a n_c phi}|psi(0)> and the evolved
/// coherent superposition, computed from explicit amplitude vectors.
double conditional_gate_error(long long n_a, long long n_c, double phi, double alpha_sq);

/// alpha_sq in [lo, hi] at which coherent_overlap crosses `target`, by
/// bisection in log(alpha_sq). Throws NumericalError if not bracketed.
double overlap_threshold(long long n_a, long long n_c, double phi, double target = 0.99,
                         double lo = 1.0, double hi = 1e8, double rel_tol = 1e-6);

}  // namespace eitsim
