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
#include <numeric>

#include <gtest/gtest.h>

#include "eitsim/error.hpp"
#include "eitsim/hamiltonian.hpp"
#include "generators.hpp"
#include "systems.hpp"

namespace eitsim {
namespace {

using Eigen::MatrixXcd;
using testing::Gen;

TEST(BuildHamiltonian, TwoLevelWithEnvironment) {
  const Complex wa{0.1, 0.02};
  const auto h = build_hamiltonian(testing::two_level(wa, 3.0));
  MatrixXcd want = MatrixXcd::Zero(3, 3);
  want(0, 1) = std::conj(wa);
  want(1, 0) = wa;
  want(1, 1) = 3.0;
  EXPECT_EQ(h.data, want);
}

TEST(BuildHamiltonian, ZeroDrivesGiveDetuningDiagonal) {
  const auto h = build_hamiltonian(testing::four_level(0.0, 0.0, 0.0, 1.5, 0.5, 0.25));
  EXPECT_TRUE(h.data.isDiagonal());
  EXPECT_EQ(h.data(1, 1), Complex(1.5));
  EXPECT_EQ(h.data(2, 2), Complex(1.0));
  EXPECT_EQ(h.data(3, 3), Complex(1.25));
  EXPECT_EQ(h.data(4, 4), Complex(0.0));
}

TEST(BuildHamiltonian, FourLevelTwoAtomBlocks) {
  const Complex wa{0.1, 0.0}, wb{1.0, 0.5}, wc{0.3, -0.2};
  const auto h = build_hamiltonian(testing::four_level(wa, wb, wc, 0.2, 0.1, 0.05, {}, 2));
  ASSERT_EQ(h.dimension(), 8u);
  EXPECT_EQ(h.data.block(1, 1, 3, 3), h.data.block(4, 4, 3, 3));
  EXPECT_EQ(h.data(0, 1), std::conj(wa));
  EXPECT_EQ(h.data(0, 4), std::conj(wa));
  EXPECT_EQ(h.data(0, 2), Complex(0.0));
  EXPECT_EQ(h.data.block(1, 4, 3, 3), MatrixXcd::Zero(3, 3));
  EXPECT_EQ(h.data(1, 2), wb);
  EXPECT_EQ(h.data(2, 3), std::conj(wc));
  EXPECT_EQ(h.data.row(7), MatrixXcd::Zero(1, 8));
}

TEST(BuildHamiltonian, HermitianAndEnvironmentRowsZero) {
  Gen gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto sc = static_cast<Scheme>(gen.integer(2, 4));
    const SystemSpec s = gen.system(sc, gen.integer(1, 4), gen.coin());
    const auto h = build_hamiltonian(s);
    EXPECT_LE((h.data - h.data.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    const auto e = static_cast<Eigen::Index>(environment_index(h.basis));
    EXPECT_EQ(h.data.row(e).cwiseAbs().sum(), 0.0);
    EXPECT_EQ(h.data.col(e).cwiseAbs().sum(), 0.0);
    if (auto r = rail_index(h.basis)) {
      EXPECT_EQ(h.data.row(static_cast<Eigen::Index>(*r)).cwiseAbs().sum(), 0.0);
    }
  }
}

TEST(BuildHamiltonian, FourLevelWithoutControlReducesToThreeLevel) {
  Gen gen(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex wa = gen.complex(), wb = gen.complex();
    const double na = gen.uniform(-2, 2), nb = gen.uniform(-2, 2), nc = gen.uniform(-2, 2);
    const auto h4 = build_hamiltonian(testing::four_level(wa, wb, 0.0, na, nb, nc));
    const auto h3 = build_hamiltonian(testing::three_level(wa, wb, na, nb));
    EXPECT_EQ(h4.data.topLeftCorner(3, 3), h3.data.topLeftCorner(3, 3));
    EXPECT_EQ(h4.data.row(3).head(3), MatrixXcd::Zero(1, 3));
    EXPECT_EQ(h4.data(4, 4), h3.data(3, 3));
  }
}

TEST(BuildHamiltonian, PermutingAtomsConjugatesByPermutation) {
  Gen gen(13);
  for (Scheme sc : {Scheme::TwoLevel, Scheme::ThreeLevel, Scheme::FourLevel}) {
    const int atoms = 4;
    const SystemSpec s = gen.system(sc, atoms, true);
    const auto h = build_hamiltonian(s);
    std::vector<int> order(atoms);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), gen.engine());
    // Basis position of each label after relabelling atom k as order[k-1].
    const int block = level_count(sc) - 1;
    std::vector<Eigen::Index> perm(h.dimension());
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = 1; k <= atoms; ++k) {
      for (int l = 0; l < block; ++l) {
        perm[static_cast<std::size_t>(1 + (k - 1) * block + l)] = 1 + (order[static_cast<std::size_t>(k - 1)] - 1) * block + l;
      }
    }
    MatrixXcd permuted(h.data.rows(), h.data.cols());
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = 0; j < perm.size(); ++j)
        permuted(perm[i], perm[j]) = h.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    EXPECT_EQ(permuted, h.data);
  }
}

TEST(BuildHamiltonian, RejectsForeignBasis) {
  const SystemSpec s = testing::two_level(0.1, 0.0);
  const Basis other = build_basis(testing::two_level(0.1, 0.0, {}, 2));
  EXPECT_THROW(build_hamiltonian(s, other), ValidationError);
}

TEST(RabiFromExperiment, FreeSpaceControlEstimate) {
  // Solve |Omega_a|^2 = (sigma/A) A21 (|Omega_b|^2 / gamma21) n_a / 8 pi for
  // |Omega_b| with A21 = gamma21 = 1, |Omega_a| = 1, n_a = 1.
  const double wb = control_rabi_for_window(0.2, 1.0, 1.0, 1.0, 1);
  EXPECT_NEAR(wb, 11.2, 0.01);
  EXPECT_NEAR(wb, std::sqrt(40.0 * std::numbers::pi), 1e-12);
  const double wa2 = rabi_from_experiment(0.2, 1.0, wb * wb / 1.0, 1);
  EXPECT_NEAR(wa2, 1.0, 1e-12);
  EXPECT_NEAR(control_rabi_for_window(0.2, 1.0, 1.0, 1.0, 4), wb / 2.0, 1e-12);
}

TEST(RabiFromExperiment, WaveguideIsSmallerByRootFive) {
  const double free_space = control_rabi_for_window(0.2, 1.0, 1.0, 1.0, 1);
  const double guide = control_rabi_for_window(1.0, 1.0, 1.0, 1.0, 1);
  EXPECT_NEAR(free_space / guide, std::sqrt(5.0), 1e-12);
}

TEST(RabiFromExperiment, EdgeCases) {
  EXPECT_EQ(rabi_from_experiment(0.2, 1.0, 3.0, 0), 0.0);
  EXPECT_THROW(rabi_from_experiment(0.0, 1.0, 3.0, 1), ValidationError);
  EXPECT_THROW(rabi_from_experiment(0.2, -1.0, 3.0, 1), ValidationError);
}

TEST(SpontaneousRate, ScalingLaws) {
  EXPECT_DOUBLE_EQ(spontaneous_rate(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(spontaneous_rate(2.0, 1.0) / spontaneous_rate(1.0, 1.0), 8.0);
  EXPECT_DOUBLE_EQ(spontaneous_rate(1.3, 2.0) / spontaneous_rate(1.3, 1.0), 2.0);
  EXPECT_GT(kSiSpontaneousPrefactor, 0.0);
  EXPECT_THROW(spontaneous_rate(0.0, 1.0), ValidationError);
}

}  // namespace
}  // namespace eitsim
