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

// Domain types shared by every module.
//
// Units: all rates, Rabi frequencies and detunings are expressed in units of
// one reference rate (conventionally gamma_21 = 1), and time is the
// dimensionless product rate * t.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace eitsim {

using Complex = std::complex<double>;

enum class Scheme { TwoLevel = 2, ThreeLevel = 3, FourLevel = 4 };

/// Number of atomic levels in the scheme.
constexpr int level_count(Scheme s) { return static_cast<int>(s); }

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

enum class ModeLabel { A = 0, B = 1, C = 2 };

char to_char(ModeLabel m);
ModeLabel mode_from_char(char c);

struct FockCount {
  long long n = 0;
};

struct Coherent {
  double alpha_sq = 0.0;
};

using PhotonOccupancy = std::variant<FockCount, Coherent>;

/// Mean photon number of an occupancy (n for Fock states, |alpha|^2 for
/// coherent states).
double mean_photons(const PhotonOccupancy& occ);

/// One classical or quantized field coupling a single atomic transition.
///
/// Mode a drives 1<->2, mode b drives 3<->2 and mode c drives 3<->4. For a
/// Fock occupancy with a known per-photon coupling the Rabi frequency obeys
/// |rabi|^2 = n |vacuum_rabi|^2 (modes a, c) or (n + 1) |vacuum_rabi|^2
/// (mode b, which gains a photon in the resonant manifold).
struct FieldDrive {
  ModeLabel label = ModeLabel::A;
  Complex rabi{0.0, 0.0};
  double detuning = 0.0;
  PhotonOccupancy occupancy = FockCount{1};
  std::optional<Complex> vacuum_rabi;

  /// Throws ValidationError if the drive is non-finite or inconsistent with
  /// its vacuum Rabi frequency (relative tolerance 1e-9).
  void validate() const;

  /// Builds a Fock-state drive from its per-photon coupling.
  static FieldDrive from_vacuum(ModeLabel label, Complex vacuum, long long n,
                                double detuning = 0.0);
};

/// Per-level depopulation (gamma') and pure-dephasing (gamma'') rates. Level
/// indices are atomic levels 1..4.
struct DecoherenceSpec {
  std::map<int, double> depop;
  std::map<int, double> dephase;

  double depop_rate(int level) const;
  double dephase_rate(int level) const;
  void validate() const;
};

/// The pairwise decoherence coefficients appearing in the closed-form
/// solutions. Index 0 denotes the empty-rail state of a dual-rail basis.
struct DerivedGammas {
  double g21 = 0, g31 = 0, g41 = 0;
  double g32 = 0, g42 = 0, g43 = 0;
  double g10 = 0, g20 = 0, g30 = 0, g40 = 0;
  double g11 = 0, g22 = 0, g33 = 0, g44 = 0;

  /// Symmetric lookup over levels {0 (rail), 1, 2, 3, 4}.
  double operator()(int i, int j) const;
};

DerivedGammas derived_gammas(const DecoherenceSpec& spec, Scheme scheme);

enum class LabelKind { Ground, Excited, Environment, EmptyRail };

/// Product-state label of the resonant manifold.
///
/// Photon offsets are stored relative to the ground manifold state
/// |1, n_a, n_b, n_c>. The environment label aggregates every state in which
/// one photon has been scattered out of the resonator.
struct BasisLabel {
  LabelKind kind = LabelKind::Ground;
  int level = 1;  // atomic level of the (excited) atom; 1 for ground/env/rail
  int atom = 0;   // 1-based index of the excited atom, 0 when none
  std::array<int, 3> photon_offset{0, 0, 0};
  int env_flag = 0;
  bool rail_flag = false;

  std::string to_string() const;
  auto operator<=>(const BasisLabel&) const = default;
};

using Basis = std::vector<BasisLabel>;

struct SystemSpec {
  Scheme scheme = Scheme::TwoLevel;
  std::vector<FieldDrive> drives;
  DecoherenceSpec decoherence;
  int atom_count = 1;
  bool dual_rail = false;
  double reference_rate = 1.0;
  std::size_t max_dimension = 4096;

  void validate() const;

  /// Drive for a mode, or nullptr when the scheme has no such mode.
  const FieldDrive* drive(ModeLabel m) const;
  /// Rabi frequency of a mode; zero when the mode is absent.
  Complex rabi(ModeLabel m) const;
  double detuning(ModeLabel m) const;
};

/// Extended basis in canonical order: ground, excited blocks atom by atom
/// (levels 2..scheme), environment, then the empty rail when dual_rail.
/// Throws ValidationError("basis too large") above spec.max_dimension.
Basis build_basis(const SystemSpec& spec);

/// Dimension build_basis would produce, without allocating it.
std::size_t basis_dimension(const SystemSpec& spec);

std::size_t environment_index(const Basis& basis);
std::optional<std::size_t> rail_index(const Basis& basis);
/// Position of level `level` of atom `atom` (1-based) in the canonical basis.
std::size_t excited_index(Scheme scheme, int atom, int level);

std::string serialize(const Basis& basis);

/// Square complex Hermitian matrix with labelled rows.
///
/// The checked constructor enforces: Hermitian within 1e-12, unit trace
/// within 1e-9, eigenvalues >= -1e-9.
class DensityMatrix {
 public:
  enum class Check { Full, None };

  DensityMatrix(Basis basis, Eigen::MatrixXcd data, Check check = Check::Full);

  static DensityMatrix pure(Basis basis, const Eigen::VectorXcd& psi);
  /// All population in the basis state at `index`.
  static DensityMatrix projector(Basis basis, std::size_t index);

  const Basis& basis() const { return basis_; }
  const Eigen::MatrixXcd& data() const { return data_; }
  std::size_t dimension() const { return static_cast<std::size_t>(data_.rows()); }
  Complex operator()(std::size_t i, std::size_t j) const { return data_(i, j); }

  double trace() const;
  double purity() const;
  double min_eigenvalue() const;
  double hermiticity_error() const;

 private:
  Basis basis_;
  Eigen::MatrixXcd data_;
};

/// Throws ValidationError if `m` is not a valid density matrix.
void check_density_matrix(const Eigen::MatrixXcd& m, double herm_tol = 1e-12,
                          double trace_tol = 1e-9, double eig_tol = 1e-9);

}  // namespace eitsim
