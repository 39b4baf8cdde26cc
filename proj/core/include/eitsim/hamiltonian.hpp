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

#pragma once

#include <Eigen/Dense>

#include "eitsim/model.hpp"

namespace eitsim {

/// Total Hamiltonian of a resonant manifold, stored as M = H / (-hbar) so
/// that entries are Rabi frequencies and detunings. The equation of motion
/// for the density matrix is then d(rho)/dt = i [M, rho] - Gamma(rho).
struct Hamiltonian {
  Basis basis;
  Eigen::MatrixXcd data;

  std::size_t dimension() const { return basis.size(); }
};

/// Ground row couples to level 2 of every atom with Omega_a^*; each excited
/// block carries detunings nu_a, nu_a - nu_b, nu_a - nu_b + nu_c on its
/// diagonal and the ladder couplings Omega_b, Omega_c. Environment and rail
/// rows are zero.
Hamiltonian build_hamiltonian(const SystemSpec& spec);

/// Same matrix on an externally supplied basis. Throws ValidationError when
/// the basis is not the canonical basis of `spec`.
Hamiltonian build_hamiltonian(const SystemSpec& spec, const Basis& basis);

/// |Omega_a|^2 = (1 / 8 pi) (sigma_a / A) A21 bandwidth n_a.
/// Throws ValidationError for non-positive rates or negative n_a.
double rabi_from_experiment(double sigma_over_area, double a21, double bandwidth,
                            long long n_a);

/// Control Rabi magnitude that opens a transparency window of width
/// |Omega_b|^2 / gamma21 for a probe of strength |Omega_a|:
/// |Omega_b|^2 = 8 pi (A / sigma_a) (gamma21 / A21) |Omega_a|^2 / n_a.
double control_rabi_for_window(double sigma_over_area, double a21, double gamma21,
                               double omega_a_abs, long long n_a);

/// A21 = prefactor * omega21^3 * |d21|^2. The default prefactor of 1 is the
/// reduced-unit convention; kSiSpontaneousPrefactor gives SI units.
double spontaneous_rate(double omega21, double dipole_sq, double prefactor = 1.0);

/// 1 / (3 pi epsilon_0 hbar c^3) in SI units.
extern const double kSiSpontaneousPrefactor;

}  // namespace eitsim
