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

#include "eitsim/lindblad.hpp"

#include <cmath>
#include <utility>

#include "eitsim/error.hpp"

namespace eitsim {

LindbladChannel LindbladChannel::lowering(std::size_t dim, std::size_t j, std::size_t env,
                                          double rate) {
  if (j >= dim || env >= dim) throw ValidationError("lowering channel index out of range");
  LindbladChannel c;
  c.kind = Kind::Lowering;
  c.target = j;
  c.rate = rate;
  const auto d = static_cast<Eigen::Index>(dim);
  c.matrix = Eigen::MatrixXcd::Zero(d, d);
  c.matrix(static_cast<Eigen::Index>(env), static_cast<Eigen::Index>(j)) = 1.0;
  return c;
}

LindbladChannel LindbladChannel::dephasing(std::size_t dim, std::size_t j, double rate) {
  if (j >= dim) throw ValidationError("dephasing channel index out of range");
  LindbladChannel c;
  c.kind = Kind::Dephasing;
  c.target = j;
  c.rate = rate;
  const auto d = static_cast<Eigen::Index>(dim);
  c.matrix = Eigen::MatrixXcd::Identity(d, d);
  c.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = -1.0;
  c.matrix *= 1.0 / std::sqrt(2.0);
  return c;
}

Superoperator lindblad_superoperator(std::vector<LindbladChannel> channels) {
  Eigen::Index dim = -1;
  std::vector<Eigen::MatrixXcd> ldl;
  ldl.reserve(channels.size());
  for (const auto& c : channels) {
    if (c.matrix.rows() != c.matrix.cols()) {
      throw ValidationError("lindblad channel matrix must be square");
    }
    if (dim >= 0 && c.matrix.rows() != dim) {
      throw ValidationError("lindblad channels have mismatched dimensions");
    }
    dim = c.matrix.rows();
    ldl.push_back(c.matrix.adjoint() * c.matrix);
  }
  return [channels = std::move(channels), ldl = std::move(ldl),
          dim](const Eigen::MatrixXcd& rho) -> Eigen::MatrixXcd {
    if (channels.empty()) return Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    if (rho.rows() != dim || rho.cols() != dim) {
      throw ValidationError("density matrix dimension does not match lindblad channels");
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t m = 0; m < channels.size(); ++m) {
      const auto& L = channels[m].matrix;
      out += 0.5 * channels[m].rate *
             (rho * ldl[m] + ldl[m] * rho - 2.0 * L * rho * L.adjoint());
    }
    return out;
  };
}

namespace {

// Per-label rates. Environment and rail labels carry no channels.
std::pair<double, double> label_rates(const DecoherenceSpec& spec, const BasisLabel& b) {
  if (b.kind != LabelKind::Ground && b.kind != LabelKind::Excited) return {0.0, 0.0};
  return {spec.depop_rate(b.level), spec.dephase_rate(b.level)};
}

}  // namespace

std::vector<LindbladChannel> channels_for(const DecoherenceSpec& spec, const Basis& basis) {
  spec.validate();
  const std::size_t env = environment_index(basis);
  std::vector<LindbladChannel> out;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto [dp, dh] = label_rates(spec, basis[j]);
    if (dp > 0.0) out.push_back(LindbladChannel::lowering(basis.size(), j, env, dp));
    if (dh > 0.0) out.push_back(LindbladChannel::dephasing(basis.size(), j, dh));
  }
  return out;
}

double GammaCoefficients::max_rate() const {
  return gamma.size() == 0 ? 0.0 : gamma.cwiseAbs().maxCoeff();
}

GammaCoefficients rule_based_gamma(const DecoherenceSpec& spec, const Basis& basis) {
  spec.validate();
  GammaCoefficients g;
  g.env = environment_index(basis);
  const auto d = static_cast<Eigen::Index>(basis.size());
  std::vector<double> dp(basis.size()), dh(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::tie(dp[i], dh[i]) = label_rates(spec, basis[i]);
  }
  g.gamma = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    // Populations decay at gamma'; coherences at the mean gamma' plus both
    // gamma''. Environment and rail carry zero rates of their own.
    g.gamma(i, i) = dp[ui];
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const double v = 0.5 * (dp[ui] + dp[uj]) + dh[ui] + dh[uj];
      g.gamma(i, j) = v;
      g.gamma(j, i) = v;
    }
  }
  const auto e = static_cast<Eigen::Index>(g.env);
  g.gamma(e, e) = 0.0;
  return g;
}

void apply_gamma_into(const GammaCoefficients& coeffs, const Eigen::MatrixXcd& rho,
                      Eigen::MatrixXcd& out) {
  if (rho.rows() != coeffs.gamma.rows() || rho.cols() != coeffs.gamma.cols()) {
    throw ValidationError("apply_gamma: dimension mismatch");
  }
  out.resize(rho.rows(), rho.cols());
  const auto e = static_cast<Eigen::Index>(coeffs.env);
  Complex feed = 0.0;
  for (Eigen::Index j = 0; j < rho.cols(); ++j) {
    for (Eigen::Index i = 0; i < rho.rows(); ++i) out(i, j) = coeffs.gamma(i, j) * rho(i, j);
    if (j != e) feed += out(j, j);
  }
  out(e, e) = -feed;
}

Eigen::MatrixXcd apply_gamma(const GammaCoefficients& coeffs, const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd out;
  apply_gamma_into(coeffs, rho, out);
  return out;
}

Eigen::MatrixXcd apply_gamma(const GammaCoefficients& coeffs, const DensityMatrix& rho) {
  return apply_gamma(coeffs, rho.data());
}

}  // namespace eitsim
