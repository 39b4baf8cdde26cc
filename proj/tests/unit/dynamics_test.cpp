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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "eitsim/dynamics.hpp"
#include "eitsim/error.hpp"
#include "eitsim/gates.hpp"
#include "eitsim/steadystate.hpp"
#include "generators.hpp"
#include "systems.hpp"

namespace eitsim {
namespace {

using Eigen::MatrixXcd;
using testing::Gen;
constexpr double kPi = std::numbers::pi;

void expect_trajectory_invariants(const Trajectory& tr) {
  ASSERT_EQ(tr.times.size(), tr.states.size());
  ASSERT_EQ(tr.times.size(), tr.diagnostics.size());
  for (std::size_t i = 1; i < tr.times.size(); ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
  const double t_end = tr.times.back();
  EXPECT_LE(tr.max_trace_deviation, 1e-9 * std::max(1.0, t_end));
  for (const auto& d : tr.diagnostics) {
    EXPECT_LE(d.hermiticity_error, 1e-12);
    EXPECT_GE(d.min_eigenvalue, -1e-8);
    EXPECT_LE(d.purity, 1.0 + 1e-9);
  }
}

TEST(EvolveMaster, TrivialGeneratorLeavesStateFixed) {
  const SystemSpec s = testing::three_level(0.0, 0.0, 0.0, 0.0);
  const auto h = build_hamiltonian(s);
  const auto g = rule_based_gamma(s.decoherence, h.basis);
  Gen gen(4);
  const DensityMatrix rho0(h.basis, gen.density(4));
  const auto tr = evolve_master(h, g, rho0, 5.0);
  for (const auto& st : tr.states) EXPECT_EQ(st.data(), rho0.data());
  EXPECT_DOUBLE_EQ(tr.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(tr.times.back(), 5.0);
}

TEST(EvolveMaster, UndampedTwoLevelMatchesUnitary) {
  const Complex wa{0.8, 0.3};
  const double nu = 1.7;
  const SystemSpec s = testing::two_level(wa, nu);
  const auto h = build_hamiltonian(s);
  const auto g = rule_based_gamma(s.decoherence, h.basis);
  const double wr = generalized_rabi(wa, nu);
  const auto tr = evolve_master(h, g, DensityMatrix::projector(h.basis, 0), 20.0 / wr);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const Eigen::Matrix2cd u = evolve_unitary_two_level(wa, nu, tr.times[i]);
    Eigen::Matrix2cd r0 = Eigen::Matrix2cd::Zero();
    r0(0, 0) = 1.0;
    const Eigen::Matrix2cd want = u * r0 * u.adjoint();
    worst = std::max(worst, (tr.states[i].data().topLeftCorner(2, 2) - want).cwiseAbs().maxCoeff());
    const double p2 = std::norm(wa) / (wr * wr) * std::pow(std::sin(wr * tr.times[i]), 2);
    EXPECT_NEAR(tr.states[i](1, 1).real(), p2, 1e-8);
  }
  EXPECT_LT(worst, 1e-8);
  expect_trajectory_invariants(tr);
}

TEST(EvolveMaster, UndampedDualRailMatchesClosedForm) {
  const Complex wa{0.5, -0.2};
  const double nu = 0.9;
  const SystemSpec s = testing::two_level(wa, nu, {}, 1, true);
  const auto h = build_hamiltonian(s);
  const auto g = rule_based_gamma(s.decoherence, h.basis);
  const auto tr = evolve_master(h, g, dual_rail_initial_state(h.basis), 30.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto e = undamped_dual_rail_elements(wa, nu, tr.times[i]);
    const auto& r = tr.states[i];
    worst = std::max({worst, std::abs(r(0, 0) - e.rho11), std::abs(r(1, 1) - e.rho22),
                      std::abs(r(1, 0) - e.rho21), std::abs(r(0, 3) - e.rho10),
                      std::abs(r(1, 3) - e.rho20)});
  }
  EXPECT_LT(worst, 1e-8);
  expect_trajectory_invariants(tr);
}

TEST(EvolveMaster, DampedDualRailPhaseMatchesShift) {
  for (double nu : {10.0, 20.0}) {
    DecoherenceSpec d;
    d.depop[2] = 2.0;  // gamma20 = 1
    const SystemSpec s = testing::two_level(0.1, nu, d, 1, true);
    const auto h = build_hamiltonian(s);
    const auto g = rule_based_gamma(s.decoherence, h.basis);
    MasterOptions opt;
    opt.stride = 1000;
    const auto tr = evolve_master(h, g, dual_rail_initial_state(h.basis), 40.0, opt);
    const DualRailShift shift = dual_rail_w10(s);
    int checked = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      if (tr.times[i] <= 10.0) continue;
      const double num = std::arg(tr.states[i](0, 3));
      const double ana = std::arg(shift.rho10(tr.times[i]));
      EXPECT_NEAR(num, ana, 0.01 * std::abs(ana)) << "nu=" << nu << " t=" << tr.times[i];
      ++checked;
    }
    EXPECT_GT(checked, 10);
    expect_trajectory_invariants(tr);
  }
}

TEST(EvolveMaster, OperatorFormAgreesWithRule) {
  Gen gen(31);
  const SystemSpec s = gen.system(Scheme::FourLevel, 2, true);
  const auto h = build_hamiltonian(s);
  const auto g = rule_based_gamma(s.decoherence, h.basis);
  const auto op = lindblad_superoperator(channels_for(s.decoherence, h.basis));
  const DensityMatrix rho0 = DensityMatrix::projector(h.basis, 0);
  const auto a = evolve_master(h, g, rho0, 3.0);
  const auto b = evolve_master(h, op, g.max_rate(), rho0, 3.0);
  ASSERT_EQ(a.states.size(), b.states.size());
  EXPECT_LT((a.final_state().data() - b.final_state().data()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EvolveMaster, RandomSystemsKeepInvariants) {
  Gen gen(2718);
  for (int trial = 0; trial < 8; ++trial) {
    const auto sc = static_cast<Scheme>(gen.integer(2, 4));
    const SystemSpec s = gen.system(sc, gen.integer(1, 3), gen.coin());
    const auto h = build_hamiltonian(s);
    const auto g = rule_based_gamma(s.decoherence, h.basis);
    const DensityMatrix rho0(h.basis, gen.density(static_cast<Eigen::Index>(h.dimension())));
    const auto tr = evolve_master(h, g, rho0, 4.0);
    expect_trajectory_invariants(tr);
  }
}

TEST(EvolveMaster, AdaptiveMatchesFixedStep) {
  DecoherenceSpec d;
  d.depop[2] = 1.0;
  d.dephase[3] = 0.1;
  const SystemSpec s = testing::three_level(0.2, 0.7, 0.5, 0.3, d);
  const auto h = build_hamiltonian(s);
  const auto g = rule_based_gamma(s.decoherence, h.basis);
  const DensityMatrix rho0 = DensityMatrix::projector(h.basis, 0);
  MasterOptions ad;
  ad.adaptive = true;
  const auto a = evolve_master(h, g, rho0, 20.0);
  const auto b = evolve_master(h, g, rho0, 20.0, ad);
  EXPECT_LT(b.steps, a.steps);
  EXPECT_LT((a.final_state().data() - b.final_state().data()).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_DOUBLE_EQ(b.times.back(), 20.0);
}

TEST(EvolveMaster, DivergenceIsReported) {
  const SystemSpec s = testing::two_level(1.0, 0.0);
  const auto h = build_hamiltonian(s);
  const auto g = rule_based_gamma(s.decoherence, h.basis);
  MasterOptions opt;
  opt.step = 100.0;
  try {
    evolve_master(h, g, DensityMatrix::projector(h.basis, 0), 1e5, opt);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("integration diverged"), std::string::npos);
  }
}

TEST(EvolveMaster, RejectsBadInputs) {
  const SystemSpec s = testing::two_level(1.0, 0.0);
  const auto h = build_hamiltonian(s);
  const auto g = rule_based_gamma(s.decoherence, h.basis);
  const DensityMatrix rho0 = DensityMatrix::projector(h.basis, 0);
  EXPECT_THROW(evolve_master(h, g, rho0, 0.0), ValidationError);
  const Basis big = build_basis(testing::two_level(1.0, 0.0, {}, 2));
  EXPECT_THROW(evolve_master(h, g, DensityMatrix::projector(big, 0), 1.0), ValidationError);
}

TEST(EvolveUnitary, IdentityAtZeroAndUnitary) {
  Gen gen(6);
  EXPECT_LT((evolve_unitary_two_level({0.3, 0.4}, 1.0, 0.0) - Eigen::Matrix2cd::Identity())
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  for (int i = 0; i < 200; ++i) {
    const auto u = evolve_unitary_two_level(gen.complex(2.0), gen.uniform(-5, 5),
                                            gen.uniform(0, 50));
    EXPECT_LT((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(std::abs(u.determinant()), 1.0, 1e-12);
  }
}

TEST(EvolveUnitary, ResonantQuarterPeriodFlips) {
  const double w = 0.7;
  const auto u = evolve_unitary_two_level(w, 0.0, kPi / (2.0 * w));
  EXPECT_NEAR(std::abs(u(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 0) - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(0, 1) - Complex(0.0, 1.0)), 0.0, 1e-15);
}

TEST(DualRailElements, InitialAndMilestones) {
  const auto e0 = undamped_dual_rail_elements(0.4, 0.3, 0.0);
  EXPECT_DOUBLE_EQ(e0.rho22, 0.0);
  EXPECT_NEAR(std::abs(e0.rho10 - 0.5), 0.0, 1e-15);
  Gen gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex wa = gen.complex(1.0);
    const double nu = gen.uniform(-2, 2);
    const double t = gen.uniform(0, 30);
    const auto e = undamped_dual_rail_elements(wa, nu, t);
    EXPECT_NEAR(e.rho11 + e.rho22, 0.5, 1e-14);
  }
  for (int q = 1; q <= 4; ++q) {
    const double w = 0.5;
    const PhaseMilestone m = phase_milestones(w, q);
    const auto e = undamped_dual_rail_elements(w, m.nu_a, m.t_q);
    EXPECT_NEAR(e.rho22, 0.0, 1e-12) << q;
    EXPECT_NEAR(std::abs(e.rho10), 0.5, 1e-12) << q;
    const double wr = generalized_rabi(w, m.nu_a);
    const double want = -(1.0 - m.nu_a / (2.0 * wr)) * q * kPi;
    EXPECT_NEAR(std::remainder(std::arg(e.rho10) - want, 2.0 * kPi), 0.0, 1e-10) << q;
    EXPECT_NEAR(std::remainder(m.phi_q - want, 2.0 * kPi), 0.0, 1e-12) << q;
  }
  const auto first = undamped_dual_rail_elements(0.5, 0.0, kPi / 0.5);
  EXPECT_NEAR(std::abs(std::remainder(std::arg(first.rho10), 2.0 * kPi)), kPi, 1e-12);
}

}  // namespace
}  // namespace eitsim
