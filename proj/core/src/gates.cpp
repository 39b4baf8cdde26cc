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

#include "eitsim/gates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "eitsim/error.hpp"
#include "eitsim/steadystate.hpp"

namespace eitsim {
namespace {

constexpr double kClip = 1e-9;

Eigen::VectorXd clipped_eigenvalues(const Eigen::VectorXd& ev) {
  Eigen::VectorXd out = ev;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) < -kClip) throw NumericalError("matrix is not positive semidefinite");
    out(i) = std::max(out(i), 0.0);
  }
  return out;
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

void check_square_pair(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw ValidationError("fidelity: dimension mismatch");
  }
}

// x (1 - ln x) log2 e, zero at x = 0 and clamped at zero where the
// small-x expansion turns negative.
double asymptotic_entropy(double x) {
  if (x <= 0.0) return 0.0;
  return std::max(0.0, x * (1.0 - std::log(x)) * std::numbers::log2e);
}

bool much_greater(double a, double b, double margin) { return a > margin * b; }

void check_photons(long long n_a, long long n_c, double alpha_sq) {
  if (n_a < 0 || n_c < 0) throw ValidationError("photon numbers must be non-negative");
  if (!(alpha_sq >= 0.0) || !std::isfinite(alpha_sq)) {
    throw ValidationError("alpha_sq must be finite and non-negative");
  }
}

struct PoissonWindow {
  long long lo = 0;
  long long hi = 0;
};

PoissonWindow window(double mu) {
  const double w = 10.0 * std::sqrt(mu) + 10.0;
  return {static_cast<long long>(std::max(0.0, std::floor(mu - w))),
          static_cast<long long>(std::ceil(mu + w))};
}

double log_poisson(long long n, double mu) {
  if (mu == 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const double k = static_cast<double>(n);
  return -mu + k * std::log(mu) - std::lgamma(k + 1.0);
}

double kerr_phase(long long n_a, long long n_c, double phi, double mu, long long n) {
  const double denom = static_cast<double>(std::max<long long>(n, 1));
  return static_cast<double>(n_a) * static_cast<double>(n_c) * phi * mu / denom;
}

}  // namespace

double fidelity(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2) {
  check_square_pair(rho1, rho2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es1(hermitian_part(rho1));
  const Eigen::VectorXd l1 = clipped_eigenvalues(es1.eigenvalues());
  const Eigen::MatrixXcd s = es1.eigenvectors() * l1.cwiseSqrt().asDiagonal() *
                             es1.eigenvectors().adjoint();
  const Eigen::MatrixXcd m = s * hermitian_part(rho2) * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(hermitian_part(m),
                                                      Eigen::EigenvaluesOnly);
  const Eigen::VectorXd l2 = clipped_eigenvalues(es2.eigenvalues());
  return std::clamp(l2.cwiseSqrt().sum(), 0.0, 1.0);
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.basis() != rho2.basis()) throw ValidationError("fidelity: bases differ");
  return fidelity(rho1.data(), rho2.data());
}

double fidelity_pure(const Eigen::VectorXcd& psi, const Eigen::MatrixXcd& rho) {
  if (psi.size() != rho.rows() || rho.rows() != rho.cols()) {
    throw ValidationError("fidelity_pure: dimension mismatch");
  }
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) {
    throw ValidationError("fidelity_pure: state vector must have unit norm");
  }
  const double v = (psi.adjoint() * rho * psi)(0, 0).real();
  if (v < -kClip) throw NumericalError("fidelity_pure: negative expectation value");
  return std::clamp(std::sqrt(std::max(v, 0.0)), 0.0, 1.0);
}

double fidelity_pure(const Eigen::VectorXcd& psi, const DensityMatrix& rho) {
  return fidelity_pure(psi, rho.data());
}

double entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols()) throw ValidationError("entropy: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(rho),
                                                     Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

double entropy(const DensityMatrix& rho) { return entropy(rho.data()); }

GateMetrics dual_rail_metrics_two_level(double nu_a, double gamma20, double gamma10,
                                        Complex omega_a, int atom_count,
                                        double target_phase, double margin) {
  if (!std::isfinite(nu_a) || !std::isfinite(target_phase)) {
    throw ValidationError("dual_rail_metrics_two_level: non-finite input");
  }
  if (!(gamma20 >= 0.0) || !(gamma10 >= 0.0)) {
    throw ValidationError("dual_rail_metrics_two_level: rates must be non-negative");
  }
  if (atom_count < 1) throw ValidationError("atom_count must be >= 1");
  const double phi = std::abs(target_phase);
  const double wa2 = std::norm(omega_a);
  const double n = static_cast<double>(atom_count);
  GateMetrics g;
  if (phi == 0.0) return g;
  if (nu_a == 0.0 || wa2 == 0.0) throw ValidationError("no dispersive phase");
  const double nu = std::abs(nu_a);
  const double x = gamma20 * phi / nu;
  g.decay_exponent = x;
  g.t_for_pi = phi * nu / (n * wa2);
  g.phase = nu_a > 0.0 ? -phi : phi;
  g.fidelity = gamma10 == 0.0
                   ? 0.5 * (1.0 + std::exp(-x))
                   : 0.5 * std::sqrt(1.0 + std::exp(-2.0 * x) +
                                     2.0 * std::exp(-x - gamma10 * g.t_for_pi));
  g.entropy = asymptotic_entropy(x);
  const double amp = std::sqrt(wa2);
  const bool upper =
      gamma10 == 0.0 || nu < std::sqrt(n * gamma20 / gamma10) * amp;
  g.regime.deco2 = much_greater(gamma20, amp, margin) && much_greater(nu, gamma20, margin) &&
                   upper;
  return g;
}

GateMetrics dual_rail_metrics_four_level(Complex omega_a, Complex omega_b, Complex omega_c,
                                         double nu_c, double gamma20, double gamma40,
                                         int atom_count, double target_phase,
                                         double margin) {
  if (!(gamma20 >= 0.0) || !(gamma40 >= 0.0)) {
    throw ValidationError("dual_rail_metrics_four_level: rates must be non-negative");
  }
  if (atom_count < 1) throw ValidationError("atom_count must be >= 1");
  const double b2 = std::norm(omega_b);
  const double c2 = std::norm(omega_c);
  if (c2 == 0.0) throw ValidationError("dual_rail_metrics_four_level: Omega_c must be nonzero");
  const double nt = nu_c_tilde(b2, c2, nu_c);
  const double gt = gamma20_tilde(b2, c2, gamma20, gamma40);
  if (nt == 0.0) throw ValidationError("no dispersive phase");
  GateMetrics g = dual_rail_metrics_two_level(nt, gt, 0.0, omega_a, atom_count, target_phase,
                                              margin);
  const double lhs = (b2 / gamma20) * (nu_c / gamma40);
  g.regime.deco2 = false;
  g.regime.schmlim =
      much_greater(lhs, b2 / gamma20, margin) && much_greater(b2 / gamma20, c2 / gamma40, margin);
  g.regime.suppress =
      much_greater(lhs, c2 / gamma40, margin) && much_greater(c2 / gamma40, b2 / gamma20, margin);
  return g;
}

PhaseMilestone phase_milestones(double omega_a, int q) {
  if (q < 1) throw ValidationError("phase_milestones: q must be >= 1");
  if (!(omega_a > 0.0) || !std::isfinite(omega_a)) {
    throw ValidationError("phase_milestones: omega_a must be positive");
  }
  const double root = std::sqrt(2.0 * q - 1.0);
  PhaseMilestone m;
  m.nu_a = 2.0 * (q - 1) * omega_a / root;
  m.t_q = root * std::numbers::pi / omega_a;
  const double wr = 0.5 * std::sqrt(m.nu_a * m.nu_a + 4.0 * omega_a * omega_a);
  m.phi_q = -(1.0 - m.nu_a / (2.0 * wr)) * q * std::numbers::pi;
  return m;
}

KerrResult kerr_w(int atom_count, Complex omega_a, Complex omega_b, Complex omega_c,
                  double nu_c, double gamma21, double gamma41,
                  const KerrOccupancy& occupancy, double margin) {
  if (atom_count < 1) throw ValidationError("atom_count must be >= 1");
  if (!(gamma21 >= 0.0) || !(gamma41 >= 0.0) || !std::isfinite(nu_c)) {
    throw ValidationError("kerr_w: invalid rates or detuning");
  }
  const double a2 = std::norm(omega_a);
  const double b2 = std::norm(omega_b);
  const double c2 = std::norm(omega_c);
  if (b2 == 0.0) throw ValidationError("kerr_w: Omega_b must be nonzero");
  const double n = static_cast<double>(atom_count);
  KerrResult r;
  r.w = n * a2 * c2 / Complex(nu_c * b2, gamma41 * b2 + gamma21 * c2);
  r.scatter_rate = -2.0 * r.w.imag();
  if (nu_c != 0.0) {
    if (occupancy.n_a < 1 || occupancy.n_b < 1 || occupancy.n_c < 1) {
      throw ValidationError("kerr_w: photon numbers must be >= 1 for vacuum Rabi frequencies");
    }
    const double na = static_cast<double>(occupancy.n_a);
    const double nb = static_cast<double>(occupancy.n_b);
    const double nc = static_cast<double>(occupancy.n_c);
    const double ta = a2 / na, tc = c2 / nc;
    r.w_tilde_fock = n * ta * tc / (nu_c * (b2 / nb) * nb);
    const double al = occupancy.alpha_sq.value_or(nb);
    if (!(al > 0.0)) throw ValidationError("kerr_w: alpha_sq must be positive");
    r.w_tilde_coherent = n * ta * tc / (nu_c * (b2 / al) * al);
  }
  const double lhs = (b2 / gamma21) * (nu_c / gamma41);
  r.nondem = much_greater(lhs, b2 / gamma21 + c2 / gamma41, margin);
  return r;
}

Complex kerr_fock_evolution(Complex amplitude, Complex w, double t) {
  return amplitude * std::exp(Complex(0.0, -1.0) * w * t);
}

Eigen::VectorXcd kerr_fock_evolution(const Eigen::VectorXcd& state, Complex w, double t) {
  return state * std::exp(Complex(0.0, -1.0) * w * t);
}

double coherent_overlap(long long n_a, long long n_c, double phi, double alpha_sq) {
  check_photons(n_a, n_c, alpha_sq);
  if (!std::isfinite(phi)) throw ValidationError("phi must be finite");
  const PoissonWindow w = window(alpha_sq);
  Complex sum = 0.0;
  for (long long n = w.lo; n <= w.hi; ++n) {
    const double p = std::exp(log_poisson(n, alpha_sq));
    if (p == 0.0) continue;
    sum += p * std::exp(Complex(0.0, -kerr_phase(n_a, n_c, phi, alpha_sq, n)));
  }
  return std::min(1.0, std::norm(sum));
}

double conditional_gate_error(long long n_a, long long n_c, double phi, double alpha_sq) {
  check_photons(n_a, n_c, alpha_sq);
  if (!std::isfinite(phi)) throw ValidationError("phi must be finite");
  const PoissonWindow w = window(alpha_sq);
  const auto len = static_cast<Eigen::Index>(w.hi - w.lo + 1);
  const double global = static_cast<double>(n_a) * static_cast<double>(n_c) * phi;
  Eigen::VectorXcd ideal(len), actual(len);
  for (Eigen::Index i = 0; i < len; ++i) {
    const long long n = w.lo + i;
    const double amp = std::exp(0.5 * log_poisson(n, alpha_sq));
    ideal(i) = amp * std::exp(Complex(0.0, -global));
    actual(i) = amp * std::exp(Complex(0.0, -kerr_phase(n_a, n_c, phi, alpha_sq, n)));
  }
  const double f = std::abs(ideal.dot(actual));
  return std::max(0.0, 1.0 - f * f);
}

double overlap_threshold(long long n_a, long long n_c, double phi, double target, double lo,
                         double hi, double rel_tol) {
  if (!(lo > 0.0) || !(hi > lo)) throw ValidationError("overlap_threshold: need 0 < lo < hi");
  const auto f = [&](double a) { return coherent_overlap(n_a, n_c, phi, a) - target; };
  if (f(lo) >= 0.0) return lo;
  if (f(hi) < 0.0) throw NumericalError("overlap_threshold: target not reached in bracket");
  double a = std::log(lo), b = std::log(hi);
  while (b - a > rel_tol) {
    const double m = 0.5 * (a + b);
    if (f(std::exp(m)) >= 0.0) {
      b = m;
    } else {
      a = m;
    }
  }
  return std::exp(b);
}

}  // namespace eitsim
