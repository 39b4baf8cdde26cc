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

#include "eitsim/hamiltonian.hpp"

#include <cmath>
#include <numbers>

#include "eitsim/error.hpp"

namespace eitsim {

const double kSiSpontaneousPrefactor = [] {
  constexpr double eps0 = 8.8541878128e-12;
  constexpr double hbar = 1.054571817e-34;
  constexpr double c = 299792458.0;
  return 1.0 / (3.0 * std::numbers::pi * eps0 * hbar * c * c * c);
}();

Hamiltonian build_hamiltonian(const SystemSpec& spec) {
  return build_hamiltonian(spec, build_basis(spec));
}

Hamiltonian build_hamiltonian(const SystemSpec& spec, const Basis& basis) {
  if (basis != build_basis(spec)) {
    throw ValidationError("hamiltonian: basis does not match the system spec");
  }
  const auto d = static_cast<Eigen::Index>(basis.size());
  Hamiltonian h{basis, Eigen::MatrixXcd::Zero(d, d)};
  const Complex wa = spec.rabi(ModeLabel::A);
  const Complex wb = spec.rabi(ModeLabel::B);
  const Complex wc = spec.rabi(ModeLabel::C);
  const double na = spec.detuning(ModeLabel::A);
  const double nb = spec.detuning(ModeLabel::B);
  const double nc = spec.detuning(ModeLabel::C);
  const int top = level_count(spec.scheme);
  auto& m = h.data;
  for (int k = 1; k <= spec.atom_count; ++k) {
    const auto i2 = static_cast<Eigen::Index>(excited_index(spec.scheme, k, 2));
    m(0, i2) = std::conj(wa);
    m(i2, 0) = wa;
    m(i2, i2) = na;
    if (top >= 3) {
      const Eigen::Index i3 = i2 + 1;
      m(i2, i3) = wb;
      m(i3, i2) = std::conj(wb);
      m(i3, i3) = na - nb;
    }
    if (top >= 4) {
      const Eigen::Index i3 = i2 + 1;
      const Eigen::Index i4 = i2 + 2;
      m(i3, i4) = std::conj(wc);
      m(i4, i3) = wc;
      m(i4, i4) = na - nb + nc;
    }
  }
  return h;
}

double rabi_from_experiment(double sigma_over_area, double a21, double bandwidth,
                            long long n_a) {
  if (!(sigma_over_area > 0.0) || !(a21 > 0.0) || !(bandwidth > 0.0)) {
    throw ValidationError("rabi_from_experiment: inputs must be positive");
  }
  if (n_a < 0) throw ValidationError("rabi_from_experiment: n_a must be non-negative");
  return sigma_over_area * a21 * bandwidth * static_cast<double>(n_a) /
         (8.0 * std::numbers::pi);
}

double control_rabi_for_window(double sigma_over_area, double a21, double gamma21,
                               double omega_a_abs, long long n_a) {
  if (!(sigma_over_area > 0.0) || !(a21 > 0.0) || !(gamma21 > 0.0) || n_a <= 0 ||
      !(omega_a_abs >= 0.0)) {
    throw ValidationError("control_rabi_for_window: inputs must be positive");
  }
  return std::sqrt(8.0 * std::numbers::pi / sigma_over_area * (gamma21 / a21) *
                   omega_a_abs * omega_a_abs / static_cast<double>(n_a));
}

double spontaneous_rate(double omega21, double dipole_sq, double prefactor) {
  if (!(omega21 > 0.0) || !(dipole_sq > 0.0) || !(prefactor > 0.0)) {
    throw ValidationError("spontaneous_rate: inputs must be positive");
  }
  return prefactor * omega21 * omega21 * omega21 * dipole_sq;
}

}  // namespace eitsim
