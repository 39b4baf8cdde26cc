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

// Decoherence operators. Two independent constructions are provided: the
// operator form built from explicit jump operators, and the coefficient-rule
// form used in production. Tests hold them equal.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "eitsim/model.hpp"

namespace eitsim {

struct LindbladChannel {
  enum class Kind { Lowering, Dephasing };

  Kind kind = Kind::Lowering;
  std::size_t target = 0;  // basis index j
  double rate = 0.0;
  Eigen::MatrixXcd matrix;

  /// L = |e><j| on a basis of dimension `dim`.
  static LindbladChannel lowering(std::size_t dim, std::size_t j, std::size_t env,
                                  double rate);
  /// L = (I - 2 sigma_jj) / sqrt(2) over the full basis.
  static LindbladChannel dephasing(std::size_t dim, std::size_t j, double rate);
};

using Superoperator = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

/// Gamma(rho) = 1/2 sum_m gamma_m (rho L^+ L + L^+ L rho - 2 L rho L^+).
/// Throws ValidationError when channel dimensions disagree.
Superoperator lindblad_superoperator(std::vector<LindbladChannel> channels);

/// Jump operators implied by a decoherence spec on a basis: a lowering and a
/// dephasing channel for every ground or excited label with a nonzero rate.
std::vector<LindbladChannel> channels_for(const DecoherenceSpec& spec, const Basis& basis);

/// Rule-based coefficients. gamma(i, j) multiplies rho_ij in Gamma(rho); the
/// environment diagonal is instead -sum_j gamma(j, j) rho_jj, so
/// gamma(env, env) is stored as zero.
struct GammaCoefficients {
  Eigen::MatrixXd gamma;
  std::size_t env = 0;

  std::size_t dimension() const { return static_cast<std::size_t>(gamma.rows()); }
  double max_rate() const;
};

/// Throws ValidationError when the basis has no environment label.
GammaCoefficients rule_based_gamma(const DecoherenceSpec& spec, const Basis& basis);

/// Throws ValidationError on dimension mismatch.
Eigen::MatrixXcd apply_gamma(const GammaCoefficients& coeffs, const Eigen::MatrixXcd& rho);
Eigen::MatrixXcd apply_gamma(const GammaCoefficients& coeffs, const DensityMatrix& rho);
/// Allocation-free form for integrators; `out` is resized as needed.
void apply_gamma_into(const GammaCoefficients& coeffs, const Eigen::MatrixXcd& rho,
                      Eigen::MatrixXcd& out);

}  // namespace eitsim
