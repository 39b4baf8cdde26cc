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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "eitsim/hamiltonian.hpp"
#include "eitsim/lindblad.hpp"
#include "eitsim/model.hpp"

namespace eitsim {

struct MasterOptions {
  /// Fixed RK4 step. Zero selects 1e-3 / max(max|M_ij|, max gamma, 1).
  double step = 0.0;
  /// Record a snapshot every `stride` steps (t = 0 and t_end always).
  std::size_t stride = 100;
  /// Step-doubling error control instead of a fixed step.
  bool adaptive = false;
  /// Per-step max-abs error target in adaptive mode.
  double tolerance = 1e-10;
  /// Largest adaptive step. Zero selects 0.5 / max(max|M_ij|, max gamma, 1).
  double max_step = 0.0;
};

struct SnapshotDiagnostics {
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
  double purity = 0.0;
  double hermiticity_error = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<SnapshotDiagnostics> diagnostics;
  std::size_t steps = 0;
  /// Largest |tr(rho) - 1| over every step, not only snapshots.
  double max_trace_deviation = 0.0;

  const DensityMatrix& final_state() const { return states.back(); }
};

/// Integrates d(rho)/dt = i [M, rho] - Gamma(rho) with classical RK4.
/// No trace renormalization is applied. Throws NumericalError("integration
/// diverged") on non-finite entries and ValidationError on bad inputs.
Trajectory evolve_master(const Hamiltonian& h, const GammaCoefficients& gamma,
                         const DensityMatrix& rho0, double t_end,
                         const MasterOptions& options = {});

/// Same integrator with an arbitrary decoherence superoperator (for example
/// the operator form from lindblad_superoperator). `gamma_scale` enters the
/// default step only.
Trajectory evolve_master(const Hamiltonian& h, const Superoperator& gamma,
                         double gamma_scale, const DensityMatrix& rho0, double t_end,
                         const MasterOptions& options = {});

/// Omega_R = 1/2 sqrt(nu^2 + 4 |Omega|^2).
double generalized_rabi(Complex omega, double nu);

/// U(t) = exp(i M t) for M = [[0, Omega^*], [Omega, nu]].
Eigen::Matrix2cd evolve_unitary_two_level(Complex omega, double nu, double t);

struct DualRailElements {
  double rho11 = 0.0;
  double rho22 = 0.0;
  Complex rho21;
  Complex rho10;
  Complex rho20;
};

/// Closed-form undamped elements for the initial state
/// (|rail> + |ground>) / sqrt(2).
DualRailElements undamped_dual_rail_elements(Complex omega, double nu, double t);

/// (|rail> + |ground>) / sqrt(2) on a dual-rail basis.
DensityMatrix dual_rail_initial_state(const Basis& basis);

}  // namespace eitsim
