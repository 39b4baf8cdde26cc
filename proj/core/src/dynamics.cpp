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

#include "eitsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "eitsim/error.hpp"

namespace eitsim {
namespace {

using Mat = Eigen::MatrixXcd;

// Writes rho -> Gamma(rho) into its second argument.
using DecayInto = std::function<void(const Mat&, Mat&)>;

class Integrator {
 public:
  Integrator(const Mat& m, DecayInto decay) : m_(m), decay_(std::move(decay)) {
    const Eigen::Index d = m.rows();
    for (Mat* w : {&a_, &g_, &k1_, &k2_, &k3_, &k4_, &tmp_}) w->resize(d, d);
  }

  // i[M, rho] - Gamma(rho), written as A + A^+ with A = i M rho so that the
  // result is Hermitian bit for bit whenever rho is.
  void rhs(const Mat& rho, Mat& out) const {
    a_.noalias() = m_ * rho;
    a_ *= Complex(0.0, 1.0);
    decay_(rho, g_);
    out = a_ + a_.adjoint();
    out -= g_;
  }

  void rk4(const Mat& rho, double h, Mat& out) const {
    rhs(rho, k1_);
    tmp_ = rho + (0.5 * h) * k1_;
    rhs(tmp_, k2_);
    tmp_ = rho + (0.5 * h) * k2_;
    rhs(tmp_, k3_);
    tmp_ = rho + h * k3_;
    rhs(tmp_, k4_);
    out = rho + (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  const Mat& m_;
  DecayInto decay_;
  mutable Mat a_, g_, k1_, k2_, k3_, k4_, tmp_;
};

SnapshotDiagnostics diagnose(const DensityMatrix& s) {
  return {std::abs(s.trace() - 1.0), s.min_eigenvalue(), s.purity(), s.hermiticity_error()};
}

Trajectory integrate(const Hamiltonian& h, const Integrator& integ, double gamma_scale,
                     const DensityMatrix& rho0, double t_end, const MasterOptions& opt) {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) {
    throw ValidationError("evolve_master: t_end must be positive and finite");
  }
  if (h.data.rows() != static_cast<Eigen::Index>(rho0.dimension())) {
    throw ValidationError("evolve_master: hamiltonian and state dimensions differ");
  }
  if (opt.stride == 0) throw ValidationError("evolve_master: stride must be positive");
  check_density_matrix(rho0.data());

  const double scale =
      std::max({h.data.size() ? h.data.cwiseAbs().maxCoeff() : 0.0, gamma_scale, 1.0});
  const Basis& basis = rho0.basis();

  Trajectory traj;
  const auto record = [&](double t, const Mat& rho) {
    DensityMatrix s(basis, rho, DensityMatrix::Check::None);
    traj.diagnostics.push_back(diagnose(s));
    traj.times.push_back(t);
    traj.states.push_back(std::move(s));
  };
  const auto track = [&](const Mat& rho) {
    if (!rho.allFinite()) throw NumericalError("integration diverged");
    traj.max_trace_deviation =
        std::max(traj.max_trace_deviation, std::abs(rho.trace().real() - 1.0));
  };

  Mat rho = rho0.data();
  Mat next(rho.rows(), rho.cols());
  record(0.0, rho);

  if (!opt.adaptive) {
    const double h0 = opt.step > 0.0 ? opt.step : 1e-3 / scale;
    const double n_real = std::ceil(t_end / h0 - 1e-9);
    if (n_real > 1e12) throw ValidationError("evolve_master: too many steps");
    const auto n = static_cast<std::size_t>(std::max(1.0, n_real));
    const double step = t_end / static_cast<double>(n);
    for (std::size_t i = 1; i <= n; ++i) {
      integ.rk4(rho, step, next);
      rho.swap(next);
      track(rho);
      if (i % opt.stride == 0 || i == n) {
        record(i == n ? t_end : static_cast<double>(i) * step, rho);
      }
    }
    traj.steps = n;
    return traj;
  }

  if (!(opt.tolerance > 0.0)) throw ValidationError("evolve_master: tolerance must be positive");
  const double h_max = opt.max_step > 0.0 ? opt.max_step : 0.5 / scale;
  double step = opt.step > 0.0 ? std::min(opt.step, h_max) : 1e-3 / scale;
  double t = 0.0;
  std::size_t accepted = 0;
  Mat full(rho.rows(), rho.cols()), mid(rho.rows(), rho.cols()), half(rho.rows(), rho.cols());
  while (t < t_end) {
    bool last = false;
    if (t + step >= t_end) {
      step = t_end - t;
      last = true;
    }
    integ.rk4(rho, step, full);
    integ.rk4(rho, 0.5 * step, mid);
    integ.rk4(mid, 0.5 * step, half);
    if (!half.allFinite() || !full.allFinite()) throw NumericalError("integration diverged");
    const double err = (half - full).cwiseAbs().maxCoeff() / 15.0;
    if (err <= opt.tolerance || step < 1e-14 * std::max(1.0, t_end)) {
      rho.swap(half);
      t = last ? t_end : t + step;
      track(rho);
      ++accepted;
      if (accepted % opt.stride == 0 || last) record(t, rho);
      if (last) break;
    }
    const double grow = err > 0.0 ? 0.9 * std::pow(opt.tolerance / err, 0.2) : 2.0;
    step = std::min(h_max, step * std::clamp(grow, 0.2, 2.0));
  }
  traj.steps = accepted;
  return traj;
}

}  // namespace

Trajectory evolve_master(const Hamiltonian& h, const GammaCoefficients& gamma,
                         const DensityMatrix& rho0, double t_end,
                         const MasterOptions& options) {
  if (gamma.gamma.rows() != h.data.rows()) {
    throw ValidationError("evolve_master: decoherence and hamiltonian dimensions differ");
  }
  Integrator integ(h.data,
                   [&gamma](const Mat& rho, Mat& out) { apply_gamma_into(gamma, rho, out); });
  return integrate(h, integ, gamma.max_rate(), rho0, t_end, options);
}

Trajectory evolve_master(const Hamiltonian& h, const Superoperator& gamma,
                         double gamma_scale, const DensityMatrix& rho0, double t_end,
                         const MasterOptions& options) {
  Integrator integ(h.data, [&gamma](const Mat& rho, Mat& out) { out = gamma(rho); });
  return integrate(h, integ, gamma_scale, rho0, t_end, options);
}

double generalized_rabi(Complex omega, double nu) {
  return 0.5 * std::sqrt(nu * nu + 4.0 * std::norm(omega));
}

Eigen::Matrix2cd evolve_unitary_two_level(Complex omega, double nu, double t) {
  const double wr = generalized_rabi(omega, nu);
  const Complex i(0.0, 1.0);
  const double c = std::cos(wr * t);
  // sin(wr t) / wr, continuous at wr = 0.
  const double s = wr > 0.0 ? std::sin(wr * t) / wr : t;
  Eigen::Matrix2cd u;
  u(0, 0) = c - i * (0.5 * nu) * s;
  u(0, 1) = i * std::conj(omega) * s;
  u(1, 0) = i * omega * s;
  u(1, 1) = c + i * (0.5 * nu) * s;
  return std::exp(i * (0.5 * nu * t)) * u;
}

DualRailElements undamped_dual_rail_elements(Complex omega, double nu, double t) {
  const Eigen::Matrix2cd u = evolve_unitary_two_level(omega, nu, t);
  DualRailElements e;
  e.rho11 = 0.5 * std::norm(u(0, 0));
  e.rho22 = 0.5 * std::norm(u(1, 0));
  e.rho21 = 0.5 * u(1, 0) * std::conj(u(0, 0));
  e.rho10 = 0.5 * u(0, 0);
  e.rho20 = 0.5 * u(1, 0);
  return e;
}

DensityMatrix dual_rail_initial_state(const Basis& basis) {
  const auto rail = rail_index(basis);
  if (!rail) throw ValidationError("dual_rail_initial_state: basis has no rail label");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  psi(0) = 1.0;
  psi(static_cast<Eigen::Index>(*rail)) = 1.0;
  return DensityMatrix::pure(basis, psi);
}

}  // namespace eitsim
