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

// Normalized susceptibilities. Every curve is scaled so that the two-level
// absorption at resonance is one: chi = gamma21 rho~_21 / Omega_a, which
// gives chi(0) = i for the two-level atom.

#pragma once

#include <string>
#include <vector>

#include "eitsim/model.hpp"

namespace eitsim {

struct SpectralCurve {
  std::vector<double> axis;  // nu_a in units of gamma21
  std::vector<Complex> chi;
  std::string normalization = "two-level kappa(nu_a=0)=1";
};

/// chi = -gamma21 / (nu + i gamma21). Throws ValidationError unless gamma21 > 0.
SpectralCurve susceptibility_two_level(const std::vector<double>& nu_a, double gamma21);

/// Linear three-level susceptibility. Throws NumericalError on an exact pole.
SpectralCurve susceptibility_three_level(const std::vector<double>& nu_a, double nu_b,
                                         Complex omega_b, double gamma21, double gamma31);

/// Total four-level susceptibility from the exact weak-probe coherence.
SpectralCurve susceptibility_four_level(const std::vector<double>& nu_a, double nu_b,
                                        double nu_c, Complex omega_b, Complex omega_c,
                                        double gamma21, double gamma31, double gamma41);

/// Third-order coefficient d(chi)/d|Omega_c|^2 at Omega_c = 0:
/// -gamma21 |Ob|^2 / (d4 (d2 d3 - |Ob|^2)^2).
SpectralCurve kerr_susceptibility_shape(const std::vector<double>& nu_a, double nu_b,
                                        double nu_c, Complex omega_b, double gamma21,
                                        double gamma31, double gamma41);

/// sqrt(4 |Omega_b|^2 + gamma21^2) - gamma21, evaluated without cancellation.
double transparency_fwhm(Complex omega_b, double gamma21);

struct ResonantDiagnostics {
  /// Absorption at nu_a = 0 relative to the two-level value.
  double kappa_ratio = 0.0;
  /// d Re(chi) / d nu_a at nu_a = 0 in normalized units.
  double dispersion_shape = 0.0;
  /// |Omega_b| maximizing dispersion_shape.
  double optimal_omega_b = 0.0;
};

/// Throws ValidationError unless gamma21 > 0 and gamma31 >= 0.
ResonantDiagnostics resonant_diagnostics(Complex omega_b, double gamma21, double gamma31);

struct EtaKappa {
  std::vector<double> eta;
  std::vector<double> kappa;
  std::vector<double> deta_dnu;
  /// Richardson estimate max |D_h - D_2h| / 3 over points where both exist.
  double derivative_error = 0.0;
};

/// eta = sqrt(1 + Re chi), kappa = Im chi / eta in reduced units omega/c = 1.
/// `scale` multiplies chi first. Throws ValidationError("unphysical
/// susceptibility magnitude") when 1 + Re chi <= 0.
EtaKappa eta_kappa(const SpectralCurve& curve, double scale = 1.0);

/// Evenly spaced grid from start to stop inclusive.
std::vector<double> linear_grid(double start, double stop, double step);

}  // namespace eitsim
