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

#include "eitsim/steadystate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eitsim/error.hpp"

namespace eitsim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPoleTolerance = 1e-12;

struct Ladder {
  Complex r21, r31, r41;
};

// Weak-probe solution of the 1-2-3-4 ladder written as a continued fraction:
//   e3 = d3 - |Oc|^2 / d4,  D = d2 - |Ob|^2 / e3,
//   r21 = -num / D,  r31 = num Ob^* / (e3 D),  r41 = -r31 Oc / d4.
// Every scheme goes through this one routine, and absent drives short-circuit
// the corresponding fraction, so the reductions four -> three -> two are
// bitwise exact. Exact poles of the inner fractions use the polynomial form.
Ladder solve_ladder(Complex num, Complex wb, Complex wc, Complex d2, Complex d3,
                    Complex d4) {
  Ladder out;
  if (num == 0.0) return out;
  const double b2 = std::norm(wb);
  const double c2 = std::norm(wc);
  const auto singular = [] { return NumericalError("singular parameters"); };

  if (c2 != 0.0 && d4 == 0.0) {
    // Numerator and denominator of r21 both reduce to -|Oc|^2 (times d2).
    if (d2 == 0.0) throw singular();
    out.r21 = -num / d2;
    out.r41 = -num * std::conj(wb) * wc / (-c2 * d2);
    return out;
  }
  const Complex e3 = c2 == 0.0 ? d3 : d3 - c2 / d4;
  if (b2 == 0.0) {
    if (std::abs(d2) == 0.0) throw singular();
    out.r21 = -num / d2;
    return out;
  }
  if (e3 == 0.0) {
    // Perfect dark-state cancellation: D is infinite.
    out.r31 = -num * std::conj(wb) / b2;
    if (c2 != 0.0) out.r41 = -out.r31 * wc / d4;
    return out;
  }
  const Complex d = d2 - b2 / e3;
  const double scale = std::max(std::abs(d2), b2 / std::abs(e3));
  if (std::abs(d) <= kPoleTolerance * scale) throw singular();
  out.r21 = -num / d;
  out.r31 = num * std::conj(wb) / (e3 * d);
  if (c2 != 0.0) out.r41 = -out.r31 * wc / d4;
  return out;
}

void check_finite(std::initializer_list<double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite input");
  }
}

void check_rates(std::initializer_list<double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x) || x < 0.0) {
      throw ValidationError(std::string(what) + ": rates must be finite and non-negative");
    }
  }
}

void finish(QssSolution& s, const QssOptions& opt, double gamma21) {
  const double im = std::imag(s.element(2) * std::conj(s.omega_a));
  const double rate = 2.0 * static_cast<double>(s.atom_count) * im;
  s.tau_a = rate > 0.0 ? 1.0 / rate : kInf;
  double lower = 0.0;
  for (const auto& [k, g] : s.transient_rates) lower = std::max(lower, g > 0.0 ? 1.0 / g : kInf);
  s.validity.lower = lower;
  s.validity.upper = s.tau_a;
  s.validity.satisfiable = std::isfinite(lower) && s.tau_a / lower > opt.margin;
  const double amp = std::abs(s.omega_a);
  s.weak_field_warning =
      gamma21 > 0.0 ? amp / gamma21 > opt.weak_field_limit : amp > 0.0;
}

}  // namespace

Complex QssSolution::element(int k) const {
  auto it = elements.find({k, 1});
  return it == elements.end() ? Complex{} : it->second;
}

double QssSolution::rho11(double t) const {
  return std::isfinite(tau_a) ? std::exp(-t / tau_a) : 1.0;
}

double QssSolution::rho22(double t) const {
  if (scheme != Scheme::TwoLevel) {
    throw ValidationError("rho22(t) closed form exists for the two-level scheme only");
  }
  if (!std::isfinite(tau_a)) return 0.0;
  const double grow = gamma22 > 0.0 ? -std::expm1(-gamma22 * t) / gamma22 : t;
  return grow / tau_a * std::exp(-t / tau_a);
}

Complex QssSolution::rho_k1(int k, double t) const {
  const Complex r = element(k);
  if (scheme == Scheme::TwoLevel) {
    if (k != 2) return {};
    const Complex d2(nu_a, transient_rates.at(2));
    return r * (1.0 - std::exp(Complex(0.0, 1.0) * d2 * t)) * rho11(t);
  }
  auto it = transient_rates.find(k);
  if (it == transient_rates.end()) return {};
  return r * (-std::expm1(-it->second * t)) * rho11(t);
}

QssSolution qss_two_level(Complex omega_a, double nu_a, double gamma21, double gamma22,
                          int atom_count, const QssOptions& options) {
  check_finite({omega_a.real(), omega_a.imag(), nu_a}, "qss_two_level");
  check_rates({gamma21, gamma22}, "qss_two_level");
  if (atom_count < 1) throw ValidationError("qss_two_level: atom_count must be >= 1");
  if (gamma21 == 0.0 && nu_a == 0.0 && omega_a != 0.0) {
    throw NumericalError("no steady state");
  }
  QssSolution s;
  s.scheme = Scheme::TwoLevel;
  s.atom_count = atom_count;
  s.omega_a = omega_a;
  s.nu_a = nu_a;
  s.gamma22 = gamma22;
  const Ladder l = solve_ladder(omega_a, {}, {}, Complex(nu_a, gamma21), {}, {});
  s.elements[{2, 1}] = l.r21;
  s.transient_rates[2] = gamma21;
  finish(s, options, gamma21);
  return s;
}

QssSolution qss_three_level(Complex omega_a, Complex omega_b, double nu_a, double nu_b,
                            double gamma21, double gamma31, const QssOptions& options) {
  check_finite({omega_a.real(), omega_a.imag(), omega_b.real(), omega_b.imag(), nu_a, nu_b},
               "qss_three_level");
  check_rates({gamma21, gamma31}, "qss_three_level");
  QssSolution s;
  s.scheme = Scheme::ThreeLevel;
  s.omega_a = omega_a;
  s.nu_a = nu_a;
  const Ladder l = solve_ladder(omega_a, omega_b, {}, Complex(nu_a, gamma21),
                                Complex(nu_a - nu_b, gamma31), {});
  s.elements[{2, 1}] = l.r21;
  s.elements[{3, 1}] = l.r31;
  s.transient_rates[2] = gamma21;
  s.transient_rates[3] = gamma31;
  finish(s, options, gamma21);
  return s;
}

QssSolution qss_four_level(Complex omega_a, Complex omega_b, Complex omega_c, double nu_a,
                           double nu_b, double nu_c, double gamma21, double gamma31,
                           double gamma41, const QssOptions& options) {
  check_finite({omega_a.real(), omega_a.imag(), omega_b.real(), omega_b.imag(),
                omega_c.real(), omega_c.imag(), nu_a, nu_b, nu_c},
               "qss_four_level");
  check_rates({gamma21, gamma31, gamma41}, "qss_four_level");
  QssSolution s;
  s.scheme = Scheme::FourLevel;
  s.omega_a = omega_a;
  s.nu_a = nu_a;
  const Ladder l =
      solve_ladder(omega_a, omega_b, omega_c, Complex(nu_a, gamma21),
                   Complex(nu_a - nu_b, gamma31), Complex(nu_a - nu_b + nu_c, gamma41));
  s.elements[{2, 1}] = l.r21;
  s.elements[{3, 1}] = l.r31;
  s.elements[{4, 1}] = l.r41;
  s.transient_rates[2] = gamma21;
  s.transient_rates[3] = gamma31;
  s.transient_rates[4] = gamma41;
  finish(s, options, gamma21);
  return s;
}

QssSolution qss(const SystemSpec& spec, const QssOptions& options) {
  spec.validate();
  const DerivedGammas g = derived_gammas(spec.decoherence, spec.scheme);
  const Complex wa = spec.rabi(ModeLabel::A);
  const Complex wb = spec.rabi(ModeLabel::B);
  const Complex wc = spec.rabi(ModeLabel::C);
  const double na = spec.detuning(ModeLabel::A);
  const double nb = spec.detuning(ModeLabel::B);
  const double nc = spec.detuning(ModeLabel::C);
  switch (spec.scheme) {
    case Scheme::TwoLevel:
      return qss_two_level(wa, na, g.g21, g.g22, spec.atom_count, options);
    case Scheme::ThreeLevel: {
      QssSolution s = qss_three_level(wa, wb, na, nb, g.g21, g.g31, options);
      s.atom_count = spec.atom_count;
      finish(s, options, g.g21);
      return s;
    }
    case Scheme::FourLevel: {
      QssSolution s = qss_four_level(wa, wb, wc, na, nb, nc, g.g21, g.g31, g.g41, options);
      s.atom_count = spec.atom_count;
      finish(s, options, g.g21);
      return s;
    }
  }
  throw ValidationError("unknown scheme");
}

Complex DualRailShift::rho10(double t) const {
  Complex expo = Complex(-gamma10, 0.0) * t + Complex(0.0, 1.0) * w10 * t;
  if (has_transient && omega_sq != 0.0) {
    const Complex i(0.0, 1.0);
    expo -= (1.0 - std::exp(i * delta * t)) / (delta * delta) * omega_sq;
  }
  return 0.5 * std::exp(expo);
}

Complex w10_two_level(double omega_a_sq, double nu_a, double gamma20) {
  check_finite({omega_a_sq, nu_a}, "w10_two_level");
  check_rates({gamma20}, "w10_two_level");
  if (omega_a_sq == 0.0) return {};
  if (nu_a == 0.0 && gamma20 == 0.0) throw NumericalError("singular parameters");
  return -omega_a_sq / Complex(nu_a, gamma20);
}

Complex w10_four_level(double omega_a_sq, double omega_b_sq, double omega_c_sq, double nu_a,
                       double nu_b, double nu_c, double gamma20, double gamma30,
                       double gamma40) {
  check_finite({omega_a_sq, omega_b_sq, omega_c_sq, nu_a, nu_b, nu_c}, "w10_four_level");
  check_rates({gamma20, gamma30, gamma40, omega_a_sq, omega_b_sq, omega_c_sq},
              "w10_four_level");
  // W10 = -|Oa|^2 / D: the r21 element of the ladder with numerator |Oa|^2.
  return solve_ladder(Complex(omega_a_sq, 0.0), std::sqrt(omega_b_sq), std::sqrt(omega_c_sq),
                      Complex(nu_a, gamma20), Complex(nu_a - nu_b, gamma30),
                      Complex(nu_a - nu_b + nu_c, gamma40))
      .r21;
}

Complex w10_four_level_product(double omega_a_sq, double omega_b_sq, double omega_c_sq,
                               double nu_c, double gamma20, double gamma40) {
  const Complex den(nu_c * omega_b_sq, gamma40 * omega_b_sq + gamma20 * omega_c_sq);
  if (den == 0.0) throw NumericalError("singular parameters");
  return -omega_a_sq * omega_c_sq / den;
}

double nu_c_tilde(double omega_b_sq, double omega_c_sq, double nu_c) {
  if (omega_c_sq == 0.0) throw ValidationError("nu_c_tilde: Omega_c must be nonzero");
  return omega_b_sq / omega_c_sq * nu_c;
}

double gamma20_tilde(double omega_b_sq, double omega_c_sq, double gamma20, double gamma40) {
  if (omega_c_sq == 0.0) throw ValidationError("gamma20_tilde: Omega_c must be nonzero");
  return gamma20 + omega_b_sq / omega_c_sq * gamma40;
}

Complex w10_four_level_detuned(double omega_a_sq, double omega_b_sq, double omega_c_sq,
                               double nu_c, double gamma20, double gamma40) {
  const double nt = nu_c_tilde(omega_b_sq, omega_c_sq, nu_c);
  const double gt = gamma20_tilde(omega_b_sq, omega_c_sq, gamma20, gamma40);
  const double den = nt * nt + gt * gt;
  if (den == 0.0) throw NumericalError("singular parameters");
  return -Complex(nt, -gt) / den * omega_a_sq;
}

DualRailShift dual_rail_w10(const SystemSpec& spec, const DualRailOptions& options) {
  spec.validate();
  const DerivedGammas g = derived_gammas(spec.decoherence, spec.scheme);
  const double n = static_cast<double>(spec.atom_count);
  const double wa2 = n * std::norm(spec.rabi(ModeLabel::A));
  DualRailShift out;
  if (spec.atom_count > 1) {
    const double gp = options.gamma_prime_21.value_or(spec.decoherence.depop_rate(2));
    check_rates({gp}, "dual_rail_w10: gamma_prime_21");
    out.gamma10 = n * gp / 4.0;
  } else {
    out.gamma10 = g.g10;
  }
  const double na = spec.detuning(ModeLabel::A);
  if (spec.scheme == Scheme::TwoLevel) {
    out.w10 = w10_two_level(wa2, na, g.g20);
    out.has_transient = true;
    out.delta = Complex(na, g.g20);
    out.omega_sq = wa2;
    return out;
  }
  out.w10 = w10_four_level(wa2, std::norm(spec.rabi(ModeLabel::B)),
                           std::norm(spec.rabi(ModeLabel::C)), na,
                           spec.detuning(ModeLabel::B), spec.detuning(ModeLabel::C), g.g20,
                           g.g30, g.g40);
  return out;
}

double DressedStates::excited_population(double t) const {
  if (degenerate || dressed_splitting == 0.0) return 0.0;
  const double s = std::sin(dressed_splitting * t);
  return std::norm(omega_a / dressed_splitting) * s * s;
}

DressedStates dressed_states_three_level(Complex omega_a, Complex omega_b) {
  DressedStates d;
  d.omega_a = omega_a;
  const double r = std::sqrt(std::norm(omega_a) + std::norm(omega_b));
  d.dressed_splitting = r;
  if (r == 0.0) {
    d.degenerate = true;
    d.eigenvalues = {0.0, 0.0, 0.0};
    d.eigenvectors = Eigen::Matrix3cd::Identity();
    return d;
  }
  d.eigenvalues = {-r, 0.0, r};
  const double h = 1.0 / std::sqrt(2.0);
  const Complex a = std::conj(omega_a) / r;
  const Complex b = std::conj(omega_b) / r;
  d.eigenvectors.col(0) << h * a, -h, h * b;
  d.eigenvectors.col(1) << -omega_b / r, 0.0, omega_a / r;
  d.eigenvectors.col(2) << h * a, h, h * b;
  return d;
}

}  // namespace eitsim
