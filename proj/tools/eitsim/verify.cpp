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

// Self-checks runnable from the installed binary.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "eitsim/eitsim.hpp"
#include "runner.hpp"

namespace eitsim::cli {
namespace {

constexpr double kPi = std::numbers::pi;

struct Report {
  std::ostream& out;
  int failed = 0;

  void check(const std::string& name, bool ok, double measured, const std::string& expected) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", measured);
    out << (ok ? "PASS " : "FAIL ") << name << ": measured " << buf << ", expected " << expected
        << "\n";
    if (!ok) ++failed;
  }

  void near(const std::string& name, double measured, double expected, double tol) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.10g +/- %.3g", expected, tol);
    check(name, std::abs(measured - expected) <= tol, measured, buf);
  }

  void relative(const std::string& name, double measured, double expected, double rel) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.10g +/- %.3g%%", expected, 100 * rel);
    check(name, std::abs(measured / expected - 1.0) <= rel, measured, buf);
  }

  void at_most(const std::string& name, double measured, double bound) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "<= %.3g", bound);
    check(name, measured <= bound, measured, buf);
  }
};

FieldDrive drive(ModeLabel m, Complex rabi, double detuning) {
  FieldDrive d;
  d.label = m;
  d.rabi = rabi;
  d.detuning = detuning;
  return d;
}

SystemSpec make_system(Scheme scheme, std::vector<Complex> rabi, std::vector<double> nu,
                       DecoherenceSpec dec, int atoms = 1, bool rail = false) {
  SystemSpec s;
  s.scheme = scheme;
  for (int k = 0; k < level_count(scheme) - 1; ++k) {
    s.drives.push_back(drive(static_cast<ModeLabel>(k), rabi[static_cast<std::size_t>(k)],
                             nu[static_cast<std::size_t>(k)]));
  }
  s.decoherence = std::move(dec);
  s.atom_count = atoms;
  s.dual_rail = rail;
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng_); }
  Complex complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }
  Eigen::MatrixXcd hermitian(Eigen::Index n) {
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = complex(1.0);
    }
    return a + a.adjoint();
  }
  SystemSpec system(Scheme scheme, int atoms, bool rail) {
    DecoherenceSpec d;
    for (int l = 2; l <= level_count(scheme); ++l) {
      d.depop[l] = uniform(0.0, 2.0);
      d.dephase[l] = uniform(0.0, 0.5);
    }
    return make_system(scheme, {complex(1.0), complex(1.0), complex(1.0)},
                       {uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)}, d, atoms, rail);
  }

 private:
  std::mt19937_64 eng_;
};

void paper_anchors(Report& r) {
  const QssSolution q = qss_two_level(0.3, 3.0, 1.0, 2.0);
  r.relative("two-level gamma21 tau_a", q.tau_a, 55.6, 0.005);

  double worst = 0.0;
  for (double nu : {-3.0, -0.4, 0.0, 0.7, 2.5}) {
    const auto c = susceptibility_three_level({nu}, nu, Complex(0.6, 0.2), 1.0, 0.0);
    worst = std::max(worst, std::abs(c.chi[0].imag()));
  }
  r.at_most("transparency |Im chi| at nu_a = nu_b, gamma31 = 0", worst, 1e-12);
  r.near("kappa ratio, gamma31 = 0.01, |Omega_b| = 0.1",
         resonant_diagnostics(0.1, 1.0, 0.01).kappa_ratio, 0.5, 1e-12);

  const double opt = resonant_diagnostics(1.0, 1.0, 0.01).optimal_omega_b;
  r.near("optimal |Omega_b| for gamma31 = 0.01", opt, 0.101, 1e-5);
  const double ratio = resonant_diagnostics(opt, 1.0, 0.01).dispersion_shape /
                       resonant_diagnostics(0.1, 1.0, 0.0).dispersion_shape;
  r.relative("dispersion at optimum over ideal", ratio, 0.25, 0.02);

  const auto m30 = dual_rail_metrics_two_level(30.0, 1.0, 0.0, 0.05, 1, -kPi);
  const auto m4k = dual_rail_metrics_two_level(4000.0, 1.0, 0.0, 0.05, 1, -kPi);
  r.near("dual-rail fidelity, nu_a/gamma20 = 30", m30.fidelity, 0.9503, 1e-4);
  r.near("dual-rail entropy, nu_a/gamma20 = 30", m30.entropy, 0.492, 1e-3);
  r.near("dual-rail fidelity, nu_a/gamma20 = 4000", m4k.fidelity, 0.99961, 1e-5);
  r.near("dual-rail entropy, nu_a/gamma20 = 4000", m4k.entropy, 0.00923, 1e-4);

  r.relative("coherent overlap 0.99 threshold (n_a=1, n_c=5, phi=pi)",
             overlap_threshold(1, 5, kPi), 2.5e4, 0.10);
  const double at1000 = coherent_overlap(1, 5, kPi, 1000.0);
  r.check("coherent overlap at alpha_sq = 1000", at1000 < 0.99, at1000, "< 0.99");

  const DressedStates ds = dressed_states_three_level(3.0, 4.0);
  r.near("dressed eigenvalue +", ds.eigenvalues[2], 5.0, 1e-12);
  r.near("dressed eigenvalue -", ds.eigenvalues[0], -5.0, 1e-12);
}

void invariants(Report& r) {
  Rng rng(20260101);
  double drift = 0.0, herm = 0.0, min_eig = 0.0, purity = 0.0;
  for (int trial = 0; trial < 9; ++trial) {
    const auto scheme = static_cast<Scheme>(2 + trial % 3);
    const SystemSpec s = rng.system(scheme, 1 + trial % 2, trial % 3 == 0);
    const Hamiltonian h = build_hamiltonian(s);
    const GammaCoefficients g = rule_based_gamma(s.decoherence, h.basis);
    const DensityMatrix rho0 =
        s.dual_rail ? dual_rail_initial_state(h.basis) : DensityMatrix::projector(h.basis, 0);
    const double t_end = 5.0;
    const Trajectory tr = evolve_master(h, g, rho0, t_end);
    drift = std::max(drift, tr.max_trace_deviation / t_end);
    for (const auto& d : tr.diagnostics) {
      herm = std::max(herm, d.hermiticity_error);
      min_eig = std::min(min_eig, d.min_eigenvalue);
      purity = std::max(purity, d.purity);
    }
  }
  r.at_most("trace drift per unit time", drift, 1e-9);
  r.at_most("hermiticity error", herm, 1e-12);
  r.check("minimum eigenvalue", min_eig >= -1e-8, min_eig, ">= -1e-08");
  r.at_most("purity", purity, 1.0 + 1e-9);

  double lindblad = 0.0;
  for (int sc = 2; sc <= 4; ++sc) {
    const SystemSpec s = rng.system(static_cast<Scheme>(sc), 2, true);
    const Basis basis = build_basis(s);
    const GammaCoefficients rule = rule_based_gamma(s.decoherence, basis);
    const Superoperator op = lindblad_superoperator(channels_for(s.decoherence, basis));
    for (int i = 0; i < 20; ++i) {
      const Eigen::MatrixXcd m = rng.hermitian(static_cast<Eigen::Index>(basis.size()));
      lindblad = std::max(lindblad, (apply_gamma(rule, m) - op(m)).cwiseAbs().maxCoeff());
    }
  }
  r.at_most("rule-based vs operator-form dissipator", lindblad, 1e-12);

  double chain = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Complex wa = rng.complex(0.3), wb = rng.complex(1.0);
    const double na = rng.uniform(-3, 3), nb = rng.uniform(-3, 3), nc = rng.uniform(-3, 3);
    const double g21 = rng.uniform(0.2, 2), g31 = rng.uniform(0, 0.5), g41 = rng.uniform(0.1, 1);
    const auto four = qss_four_level(wa, wb, 0.0, na, nb, nc, g21, g31, g41);
    const auto three = qss_three_level(wa, wb, na, nb, g21, g31);
    const auto three0 = qss_three_level(wa, 0.0, na, nb, g21, g31);
    const auto two = qss_two_level(wa, na, g21, 2 * g21);
    chain = std::max({chain, std::abs(four.element(2) - three.element(2)),
                      std::abs(four.element(3) - three.element(3)),
                      std::abs(three0.element(2) - two.element(2))});
  }
  r.check("limit-reduction chain", chain == 0.0, chain, "exactly 0");
}

void oracle(Report& r) {
  DecoherenceSpec two;
  two.depop[2] = 2.0;
  DecoherenceSpec three = two;
  three.dephase[3] = 0.5;
  DecoherenceSpec four = three;
  four.depop[4] = 1.0;
  const std::vector<std::pair<std::string, SystemSpec>> cases = {
      {"two-level", make_system(Scheme::TwoLevel, {0.05}, {0.0}, two)},
      {"two-level detuned", make_system(Scheme::TwoLevel, {0.05}, {0.7}, two)},
      {"three-level", make_system(Scheme::ThreeLevel, {0.05, 0.5}, {0.0, 0.0}, three)},
      {"three-level detuned", make_system(Scheme::ThreeLevel, {0.05, 0.5}, {0.4, 0.1}, three)},
      {"four-level", make_system(Scheme::FourLevel, {0.05, 0.5, 0.3}, {0.0, 0.0, 0.5}, four)},
  };
  for (const auto& [name, spec] : cases) {
    const QssSolution q = qss(spec);
    const double lo = 10.0 * q.validity.lower, hi = q.tau_a / 10.0;
    const Hamiltonian h = build_hamiltonian(spec);
    const GammaCoefficients g = rule_based_gamma(spec.decoherence, h.basis);
    const Trajectory tr = evolve_master(h, g, DensityMatrix::projector(h.basis, 0), hi);
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      if (tr.times[i] <= lo) continue;
      const DensityMatrix& rho = tr.states[i];
      for (int k = 2; k <= level_count(spec.scheme); ++k) {
        const Complex num = rho(static_cast<std::size_t>(k - 1), 0) / rho(0, 0);
        worst = std::max(worst, std::abs(num - q.element(k)) / std::abs(q.element(k)));
      }
    }
    r.at_most("QSS vs master equation, " + name + " (max rel error)", worst, 0.01);
  }

  DecoherenceSpec d;
  d.depop[2] = 2.0;
  const SystemSpec s = make_system(Scheme::TwoLevel, {0.05}, {30.0}, d, 1, true);
  const GateMetrics m = dual_rail_metrics_two_level(30.0, 1.0, 0.0, 0.05, 1, -kPi);
  const Hamiltonian h = build_hamiltonian(s);
  const GammaCoefficients g = rule_based_gamma(s.decoherence, h.basis);
  MasterOptions opt;
  opt.adaptive = true;
  opt.stride = 1u << 30;
  const Trajectory tr = evolve_master(h, g, dual_rail_initial_state(h.basis), m.t_for_pi, opt);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(h.dimension()));
  psi(static_cast<Eigen::Index>(*rail_index(h.basis))) = 1.0 / std::sqrt(2.0);
  psi(0) = -1.0 / std::sqrt(2.0);
  r.near("dual-rail end-state fidelity vs closed form, nu_a/gamma20 = 30",
         fidelity_pure(psi, tr.final_state()), m.fidelity, 5e-3);
}

}  // namespace

int run_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
  const std::map<std::string, std::function<void(Report&)>> suites = {
      {"paper-anchors", paper_anchors}, {"invariants", invariants}, {"oracle", oracle}};
  const auto it = suites.find(suite);
  if (it == suites.end()) {
    err << "error: unknown suite '" << suite << "' (expected invariants, paper-anchors or oracle)\n";
    return kValidation;
  }
  Report r{out};
  try {
    it->second(r);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  out << (r.failed == 0 ? "all checks passed" : std::to_string(r.failed) + " check(s) failed")
      << "\n";
  return r.failed == 0 ? kOk : kCheckFailed;
}

}  // namespace eitsim::cli
