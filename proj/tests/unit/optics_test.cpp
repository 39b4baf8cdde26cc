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

#include <gtest/gtest.h>

#include "eitsim/error.hpp"
#include "eitsim/optics.hpp"
#include "generators.hpp"

namespace eitsim {
namespace {

using testing::Gen;

std::size_t index_of(const std::vector<double>& grid, double v) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (std::abs(grid[i] - v) < 1e-12) return i;
  }
  ADD_FAILURE() << "grid lacks " << v;
  return 0;
}

TEST(TwoLevelSusceptibility, NormalizationPoints) {
  const auto c = susceptibility_two_level({0.0, 1.0, -1.0}, 1.0);
  EXPECT_EQ(c.chi[0], Complex(0.0, 1.0));
  EXPECT_NEAR(std::abs(c.chi[1] - Complex(-0.5, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.chi[2] - Complex(0.5, 0.5)), 0.0, 1e-15);
  EXPECT_THROW(susceptibility_two_level({0.0}, 0.0), ValidationError);
}

TEST(TwoLevelSusceptibility, LorentzianSymmetry) {
  Gen gen(51);
  for (int i = 0; i < 200; ++i) {
    const double g = gen.uniform(0.1, 3), v = gen.uniform(-20, 20);
    const auto c = susceptibility_two_level({v, -v}, g);
    EXPECT_NEAR(c.chi[0].real(), -c.chi[1].real(), 1e-15);
    EXPECT_NEAR(c.chi[0].imag(), c.chi[1].imag(), 1e-15);
  }
}

TEST(ThreeLevelSusceptibility, ReducesToTwoLevelWithoutControl) {
  const auto grid = linear_grid(-5, 5, 0.25);
  const auto a = susceptibility_three_level(grid, 0.3, 0.0, 1.0, 0.2);
  const auto b = susceptibility_two_level(grid, 1.0);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(a.chi[i], b.chi[i]);
}

TEST(ThreeLevelSusceptibility, TransparencyAndHalfAbsorption) {
  Gen gen(52);
  for (int i = 0; i < 50; ++i) {
    const auto c = susceptibility_three_level({0.0}, 0.0, gen.complex(2.0), 1.0, 0.0);
    EXPECT_LE(std::abs(c.chi[0].imag()), 1e-12);
  }
  const auto h = susceptibility_three_level({0.0}, 0.0, 0.1, 1.0, 0.01);
  EXPECT_NEAR(h.chi[0].imag(), 0.5, 1e-12);
}

TEST(Susceptibility, PassiveForNonNegativeRates) {
  Gen gen(53);
  const auto grid = linear_grid(-10, 10, 0.1);
  for (int trial = 0; trial < 30; ++trial) {
    const double g21 = gen.uniform(0.1, 2), g31 = gen.rate(0.5), g41 = gen.uniform(0.01, 2);
    const auto c3 = susceptibility_three_level(grid, gen.uniform(-2, 2), gen.complex(2.0), g21, g31);
    const auto c4 = susceptibility_four_level(grid, gen.uniform(-2, 2), gen.uniform(-5, 5),
                                              gen.complex(2.0), gen.complex(2.0), g21, g31, g41);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_GE(c3.chi[i].imag(), -1e-12);
      EXPECT_GE(c4.chi[i].imag(), -1e-12);
    }
  }
}

TEST(Susceptibility, Deterministic) {
  const auto grid = linear_grid(-3, 3, 0.01);
  const auto a = susceptibility_four_level(grid, 0.1, 2.0, 0.4, 0.2, 1.0, 0.01, 0.5);
  const auto b = susceptibility_four_level(grid, 0.1, 2.0, 0.4, 0.2, 1.0, 0.01, 0.5);
  EXPECT_EQ(a.chi, b.chi);
}

TEST(TransparencyFwhm, ExactAndAsymptote) {
  EXPECT_EQ(transparency_fwhm(0.0, 1.0), 0.0);
  EXPECT_NEAR(transparency_fwhm(1.0, 1.0), std::sqrt(5.0) - 1.0, 1e-15);
  Gen gen(54);
  for (int i = 0; i < 100; ++i) {
    const double g = gen.uniform(0.1, 3), b = gen.uniform(0, 5) * g;
    EXPECT_NEAR(transparency_fwhm(b, g), std::sqrt(4 * b * b + g * g) - g, 1e-13 * g);
  }
  for (double r : {1e-4, 1e-3, 0.01, 0.03, 0.05}) {
    const double f = transparency_fwhm(r, 1.0);
    EXPECT_NEAR(f / (2.0 * r * r), 1.0, 0.01) << r;
  }
}

// With gamma31 = 0 the absorption peaks at 1 on the dressed lines; the dip
// edges at +-fwhm/2 sit at half that.
TEST(TransparencyFwhm, MatchesCurveHalfMaximum) {
  for (double wb : {0.05, 0.4, 2.0}) {
    const double half = transparency_fwhm(wb, 1.0) / 2.0;
    const auto c = susceptibility_three_level({-half, half, wb}, 0.0, wb, 1.0, 0.0);
    EXPECT_NEAR(c.chi[0].imag(), 0.5, 1e-12);
    EXPECT_NEAR(c.chi[1].imag(), 0.5, 1e-12);
    EXPECT_NEAR(c.chi[2].imag(), 1.0, 1e-12);
  }
}

TEST(ResonantDiagnostics, HalfAbsorptionAndOptimum) {
  const auto r = resonant_diagnostics(0.1, 1.0, 0.01);
  EXPECT_NEAR(r.kappa_ratio, 0.5, 1e-12);
  EXPECT_NEAR(r.optimal_omega_b, std::sqrt(0.0102), 1e-15);
  EXPECT_NEAR(r.optimal_omega_b, 0.10100, 5e-6);
  const double at_opt = resonant_diagnostics(r.optimal_omega_b, 1.0, 0.01).dispersion_shape;
  const double ideal = resonant_diagnostics(0.1, 1.0, 0.0).dispersion_shape;
  EXPECT_NEAR(ideal, 100.0, 1e-10);
  EXPECT_NEAR(at_opt, 0.0101 / (0.0202 * 0.0202), 1e-10);
  EXPECT_NEAR(at_opt, 24.75, 0.01);
  EXPECT_NEAR(at_opt / ideal, 0.25, 0.02 * 0.25);
}

TEST(ResonantDiagnostics, OptimumMaximizesDispersion) {
  Gen gen(55);
  for (int trial = 0; trial < 50; ++trial) {
    const double g21 = gen.uniform(0.2, 2), g31 = gen.uniform(0.001, 0.1);
    const auto r = resonant_diagnostics(1.0, g21, g31);
    const double best = resonant_diagnostics(r.optimal_omega_b, g21, g31).dispersion_shape;
    for (double f : {0.5, 0.9, 0.99, 1.01, 1.1, 2.0}) {
      EXPECT_LT(resonant_diagnostics(f * r.optimal_omega_b, g21, g31).dispersion_shape, best);
    }
  }
  EXPECT_DOUBLE_EQ(resonant_diagnostics(0.0, 1.0, 0.3).kappa_ratio, 1.0);
  EXPECT_LT(resonant_diagnostics(0.05, 1.0, 0.1).dispersion_shape, 0.0);
  EXPECT_GT(resonant_diagnostics(0.2, 1.0, 0.1).dispersion_shape, 0.0);
}

TEST(ResonantDiagnostics, ShapeIsSlopeOfCurve) {
  const double wb = 0.3, g21 = 1.0, g31 = 0.02, h = 1e-5;
  const auto c = susceptibility_three_level({-h, h}, 0.0, wb, g21, g31);
  const double slope = (c.chi[1].real() - c.chi[0].real()) / (2 * h);
  EXPECT_NEAR(slope / resonant_diagnostics(wb, g21, g31).dispersion_shape, 1.0, 1e-6);
}

TEST(KerrShape, SeriesMatchesFiniteDifference) {
  const double g21 = 1.0, g31 = 0.01, g41 = 1.0;
  const double wc = 1e-3 * g41;
  const auto grid = linear_grid(-3, 3, 0.05);
  for (double nu_c : {0.0, 3.0, 30.0}) {
    const auto total = susceptibility_four_level(grid, 0.0, nu_c, 0.3, wc, g21, g31, g41);
    const auto linear = susceptibility_three_level(grid, 0.0, 0.3, g21, g31);
    const auto shape = kerr_susceptibility_shape(grid, 0.0, nu_c, 0.3, g21, g31, g41);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Complex fd = (total.chi[i] - linear.chi[i]) / (wc * wc);
      EXPECT_LT(std::abs(fd - shape.chi[i]) / std::abs(shape.chi[i]), 0.01)
          << "nu_c=" << nu_c << " nu_a=" << grid[i];
    }
  }
}

TEST(FourLevelSusceptibility, SwitchAndZeroControl) {
  const auto grid = linear_grid(-2, 2, 0.5);
  const auto a = susceptibility_four_level(grid, 0.1, 1.0, 0.3, 0.0, 1.0, 0.01, 0.5);
  const auto b = susceptibility_three_level(grid, 0.1, 0.3, 1.0, 0.01);
  EXPECT_EQ(a.chi, b.chi);
  const auto closed = susceptibility_four_level({0.0}, 0.0, 0.0, 0.3, 0.3, 1.0, 0.0, 1.0);
  EXPECT_GT(closed.chi[0].imag(), 0.1);
}

TEST(EtaKappa, TrivialCurves) {
  SpectralCurve zero{{0.0, 1.0, 2.0}, {0.0, 0.0, 0.0}, ""};
  const auto z = eta_kappa(zero);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(z.eta[i], 1.0);
    EXPECT_EQ(z.kappa[i], 0.0);
    EXPECT_EQ(z.deta_dnu[i], 0.0);
  }
  SpectralCurve im{{0.0}, {Complex(0, 1)}, ""};
  const auto k = eta_kappa(im);
  EXPECT_EQ(k.eta[0], 1.0);
  EXPECT_EQ(k.kappa[0], 1.0);
}

TEST(EtaKappa, RejectsUnphysicalScale) {
  const auto c = susceptibility_two_level(linear_grid(-3, 3, 0.5), 1.0);
  try {
    eta_kappa(c, 10.0);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("unphysical susceptibility magnitude"), std::string::npos);
  }
  EXPECT_NO_THROW(eta_kappa(c, 0.1));
}

TEST(EtaKappa, SlopeScalesAsInverseControlIntensity) {
  const double g21 = 1.0;
  for (double wb : {0.5, 1.0, 2.0}) {
    const auto grid = linear_grid(-0.1, 0.1, 0.001);
    const auto ek = eta_kappa(susceptibility_three_level(grid, 0.0, wb, g21, 0.0), 0.1);
    const std::size_t mid = index_of(grid, 0.0);
    EXPECT_NEAR(ek.deta_dnu[mid] / (0.1 * g21 / (2.0 * wb * wb)), 1.0, 1e-4) << wb;
    EXPECT_LT(ek.derivative_error, 1e-3 * ek.deta_dnu[mid]);
  }
}

TEST(LinearGrid, Inclusive) {
  const auto g = linear_grid(-1, 1, 0.5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), -1.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_THROW(linear_grid(1, 0, 0.1), ValidationError);
  EXPECT_THROW(linear_grid(0, 1, 0.0), ValidationError);
}

}  // namespace
}  // namespace eitsim
