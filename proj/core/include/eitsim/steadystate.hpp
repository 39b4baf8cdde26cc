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

// Closed-form quasi-steady-state (QSS) solutions in the weak-probe limit.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "eitsim/model.hpp"

namespace eitsim {

struct ValidityWindow {
  double lower = 0.0;  // max over k of 1 / gamma_k1
  double upper = 0.0;  // tau_a
  bool satisfiable = false;
};

struct QssOptions {
  /// Factor standing in for "much less than" in the validity window.
  double margin = 10.0;
  /// Probe strength |Omega_a| / gamma21 above which weak_field_warning is set.
  double weak_field_limit = 0.3;
};

struct QssSolution {
  Scheme scheme = Scheme::TwoLevel;
  int atom_count = 1;
  /// Per-atom steady values keyed by (k, 1): rho~_21, rho~_31, rho~_41.
  std::map<std::pair<int, int>, Complex> elements;
  double tau_a = 0.0;
  std::optional<Complex> w10;
  ValidityWindow validity;
  /// Envelope rates gamma_k1 of (1 - e^{-gamma_k1 t}), keyed by k.
  std::map<int, double> transient_rates;
  bool weak_field_warning = false;

  Complex omega_a;
  double nu_a = 0.0;
  double gamma22 = 0.0;

  /// rho~_k1, zero for levels the scheme does not have.
  Complex element(int k) const;
  /// N rho~_21, the collective coherence of an N-atom ensemble.
  Complex collective_rho21() const { return static_cast<double>(atom_count) * element(2); }

  double rho11(double t) const;
  /// Two-level only; throws ValidationError otherwise.
  double rho22(double t) const;
  /// Time-domain rho_k1(t). The two-level form keeps the oscillating
  /// transient (1 - e^{i (nu_a + i gamma21) t}); three- and four-level forms
  /// use the envelope (1 - e^{-gamma_k1 t}).
  Complex rho_k1(int k, double t) const;
};

/// Two-level QSS with N atoms. Throws NumericalError("no steady state") when
/// gamma21 = nu_a = 0 and Omega_a != 0.
QssSolution qss_two_level(Complex omega_a, double nu_a, double gamma21, double gamma22,
                          int atom_count = 1, const QssOptions& options = {});

/// Throws NumericalError("singular parameters") on an exact pole.
QssSolution qss_three_level(Complex omega_a, Complex omega_b, double nu_a, double nu_b,
                            double gamma21, double gamma31, const QssOptions& options = {});

QssSolution qss_four_level(Complex omega_a, Complex omega_b, Complex omega_c, double nu_a,
                           double nu_b, double nu_c, double gamma21, double gamma31,
                           double gamma41, const QssOptions& options = {});

/// Dispatches on spec.scheme using derived_gammas.
QssSolution qss(const SystemSpec& spec, const QssOptions& options = {});

/// Dual-rail complex frequency shift and the rho_10(t) evaluator.
struct DualRailShift {
  Complex w10;
  double gamma10 = 0.0;
  /// Two-level transient: rho_10 carries exp[-(1 - e^{i delta t}) |Omega|^2 / delta^2].
  bool has_transient = false;
  Complex delta;
  double omega_sq = 0.0;

  Complex rho10(double t) const;
};

/// W10 = -|Omega_a|^2 / (nu_a + i gamma20).
Complex w10_two_level(double omega_a_sq, double nu_a, double gamma20);

/// Full four-level W10 (continued-fraction evaluation of the rational form).
Complex w10_four_level(double omega_a_sq, double omega_b_sq, double omega_c_sq, double nu_a,
                       double nu_b, double nu_c, double gamma20, double gamma30,
                       double gamma40);

/// Product form -|Oa|^2 |Oc|^2 / (nu_c |Ob|^2 + i (gamma40 |Ob|^2 + gamma20 |Oc|^2)).
Complex w10_four_level_product(double omega_a_sq, double omega_b_sq, double omega_c_sq,
                               double nu_c, double gamma20, double gamma40);

/// Detuned form -(nu~_c - i gamma~_20) / (nu~_c^2 + gamma~_20^2) |Oa|^2.
Complex w10_four_level_detuned(double omega_a_sq, double omega_b_sq, double omega_c_sq,
                               double nu_c, double gamma20, double gamma40);

/// nu~_c = (|Ob|^2 / |Oc|^2) nu_c.
double nu_c_tilde(double omega_b_sq, double omega_c_sq, double nu_c);
/// gamma~_20 = gamma20 + (|Ob|^2 / |Oc|^2) gamma40.
double gamma20_tilde(double omega_b_sq, double omega_c_sq, double gamma20, double gamma40);

struct DualRailOptions {
  /// Rate used in the N-atom substitution gamma10 -> N gamma'_21 / 4.
  /// Unset selects gamma'_2.
  std::optional<double> gamma_prime_21;
};

/// W10 and rho_10(t) for a dual-rail system. With N > 1 atoms |Omega_a|^2 is
/// replaced by N |Omega_a|^2 and gamma10 by N gamma'_21 / 4.
DualRailShift dual_rail_w10(const SystemSpec& spec, const DualRailOptions& options = {});

struct DressedStates {
  std::array<double, 3> eigenvalues{};  // ascending: -Omega_R, 0, +Omega_R
  Eigen::Matrix3cd eigenvectors;        // columns match eigenvalues
  double dressed_splitting = 0.0;
  bool degenerate = false;
  Complex omega_a;

  Eigen::Vector3cd dark_state() const { return eigenvectors.col(1); }
  /// |Omega_a / Omega_R|^2 sin^2(Omega_R t).
  double excited_population(double t) const;
};

/// Dressed states of the resonant three-level block (ground, 2, 3).
DressedStates dressed_states_three_level(Complex omega_a, Complex omega_b);

}  // namespace eitsim
