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

#include "eitsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "eitsim/error.hpp"

namespace eitsim {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::TwoLevel:
      return "two-level";
    case Scheme::ThreeLevel:
      return "three-level";
    case Scheme::FourLevel:
      return "four-level";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "two-level" || name == "2") return Scheme::TwoLevel;
  if (name == "three-level" || name == "3") return Scheme::ThreeLevel;
  if (name == "four-level" || name == "4") return Scheme::FourLevel;
  throw ValidationError("unknown scheme '" + name + "'");
}

char to_char(ModeLabel m) { return static_cast<char>('a' + static_cast<int>(m)); }

ModeLabel mode_from_char(char c) {
  if (c < 'a' || c > 'c') {
    throw ValidationError(std::string("unknown mode label '") + c + "'");
  }
  return static_cast<ModeLabel>(c - 'a');
}

double mean_photons(const PhotonOccupancy& occ) {
  if (const auto* f = std::get_if<FockCount>(&occ)) return static_cast<double>(f->n);
  return std::get<Coherent>(occ).alpha_sq;
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_rate(double r, const std::string& what) {
  if (!std::isfinite(r) || r < 0.0) {
    throw ValidationError(what + " must be finite and non-negative");
  }
}

}  // namespace

void FieldDrive::validate() const {
  const std::string name = std::string("drive ") + to_char(label);
  if (!finite(rabi)) throw ValidationError(name + ": rabi must be finite");
  if (!std::isfinite(detuning)) throw ValidationError(name + ": detuning must be finite");
  if (const auto* f = std::get_if<FockCount>(&occupancy)) {
    if (f->n < 0) throw ValidationError(name + ": fock count must be non-negative");
  } else {
    check_rate(std::get<Coherent>(occupancy).alpha_sq, name + ": alpha_sq");
  }
  if (vacuum_rabi) {
    if (!finite(*vacuum_rabi)) throw ValidationError(name + ": vacuum_rabi must be finite");
    if (const auto* f = std::get_if<FockCount>(&occupancy)) {
      const double n = static_cast<double>(f->n) + (label == ModeLabel::B ? 1.0 : 0.0);
      const double expect = n * std::norm(*vacuum_rabi);
      const double got = std::norm(rabi);
      if (std::abs(got - expect) > 1e-9 * std::max({1.0, got, expect})) {
        throw ValidationError(name + ": |rabi|^2 inconsistent with vacuum_rabi and photon count");
      }
    }
  }
}

FieldDrive FieldDrive::from_vacuum(ModeLabel label, Complex vacuum, long long n,
                                   double detuning) {
  if (n < 0) throw ValidationError("fock count must be non-negative");
  FieldDrive d;
  d.label = label;
  d.detuning = detuning;
  d.occupancy = FockCount{n};
  d.vacuum_rabi = vacuum;
  const double k = static_cast<double>(n) + (label == ModeLabel::B ? 1.0 : 0.0);
  d.rabi = vacuum * std::sqrt(k);
  return d;
}

double DecoherenceSpec::depop_rate(int level) const {
  auto it = depop.find(level);
  return it == depop.end() ? 0.0 : it->second;
}

double DecoherenceSpec::dephase_rate(int level) const {
  auto it = dephase.find(level);
  return it == dephase.end() ? 0.0 : it->second;
}

void DecoherenceSpec::validate() const {
  for (const auto* m : {&depop, &dephase}) {
    const char* kind = m == &depop ? "depop" : "dephase";
    for (const auto& [level, rate] : *m) {
      if (level < 1 || level > 4) {
        throw ValidationError(std::string("decoherence.") + kind + ": level " +
                              std::to_string(level) + " outside 1..4");
      }
      check_rate(rate, std::string("decoherence.") + kind + "." + std::to_string(level));
    }
  }
}

double DerivedGammas::operator()(int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto bad = [&] {
    return ValidationError("no derived coefficient for levels " + std::to_string(i) + "," +
                           std::to_string(j));
  };
  switch (i * 10 + j) {
    case 0:
      return 0.0;
    case 1:
      return g10;
    case 2:
      return g20;
    case 3:
      return g30;
    case 4:
      return g40;
    case 11:
      return g11;
    case 12:
      return g21;
    case 13:
      return g31;
    case 14:
      return g41;
    case 22:
      return g22;
    case 23:
      return g32;
    case 24:
      return g42;
    case 33:
      return g33;
    case 34:
      return g43;
    case 44:
      return g44;
    default:
      throw bad();
  }
}

DerivedGammas derived_gammas(const DecoherenceSpec& spec, Scheme scheme) {
  const int top = level_count(scheme);
  // Level 0 is the rail state, which carries no channels of its own.
  const auto dp = [&](int j) { return j >= 1 && j <= top ? spec.depop_rate(j) : 0.0; };
  const auto dh = [&](int j) { return j >= 1 && j <= top ? spec.dephase_rate(j) : 0.0; };
  const auto pair = [&](int i, int j) { return 0.5 * (dp(i) + dp(j)) + dh(i) + dh(j); };
  DerivedGammas g;
  g.g21 = pair(2, 1);
  g.g31 = pair(3, 1);
  g.g41 = pair(4, 1);
  g.g32 = pair(3, 2);
  g.g42 = pair(4, 2);
  g.g43 = pair(4, 3);
  g.g10 = pair(1, 0);
  g.g20 = pair(2, 0);
  g.g30 = pair(3, 0);
  g.g40 = pair(4, 0);
  g.g11 = dp(1);
  g.g22 = dp(2);
  g.g33 = dp(3);
  g.g44 = dp(4);
  return g;
}

std::string BasisLabel::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case LabelKind::Ground:
      os << "1";
      break;
    case LabelKind::Excited:
      os << level;
      if (atom > 0) os << "^(" << atom << ")";
      break;
    case LabelKind::Environment:
      os << "env";
      break;
    case LabelKind::EmptyRail:
      os << "rail";
      break;
  }
  os << "[" << photon_offset[0] << "," << photon_offset[1] << "," << photon_offset[2]
     << ";e" << env_flag << ";r" << (rail_flag ? 1 : 0) << "]";
  return os.str();
}

void SystemSpec::validate() const {
  if (atom_count < 1) throw ValidationError("system.atom_count must be >= 1");
  if (!std::isfinite(reference_rate) || reference_rate <= 0.0) {
    throw ValidationError("system.reference_rate must be positive");
  }
  const auto want = static_cast<std::size_t>(level_count(scheme) - 1);
  if (drives.size() != want) {
    throw ValidationError("system.drives: " + to_string(scheme) + " needs " +
                          std::to_string(want) + " drives, got " +
                          std::to_string(drives.size()));
  }
  std::set<ModeLabel> seen;
  for (const auto& d : drives) {
    if (static_cast<std::size_t>(d.label) >= want) {
      throw ValidationError(std::string("system.drives: mode ") + to_char(d.label) +
                            " not used by " + to_string(scheme));
    }
    if (!seen.insert(d.label).second) {
      throw ValidationError(std::string("system.drives: duplicate mode ") + to_char(d.label));
    }
    d.validate();
  }
  decoherence.validate();
}

const FieldDrive* SystemSpec::drive(ModeLabel m) const {
  for (const auto& d : drives) {
    if (d.label == m) return &d;
  }
  return nullptr;
}

Complex SystemSpec::rabi(ModeLabel m) const {
  const auto* d = drive(m);
  return d ? d->rabi : Complex{};
}

double SystemSpec::detuning(ModeLabel m) const {
  const auto* d = drive(m);
  return d ? d->detuning : 0.0;
}

std::size_t basis_dimension(const SystemSpec& spec) {
  const auto n = static_cast<std::size_t>(std::max(spec.atom_count, 1));
  const auto per = static_cast<std::size_t>(level_count(spec.scheme) - 1);
  return 1 + per * n + 1 + (spec.dual_rail ? 1 : 0);
}

Basis build_basis(const SystemSpec& spec) {
  spec.validate();
  const std::size_t dim = basis_dimension(spec);
  if (dim > spec.max_dimension) {
    throw ValidationError("basis too large: dimension " + std::to_string(dim) +
                          " exceeds " + std::to_string(spec.max_dimension));
  }
  Basis basis;
  basis.reserve(dim);
  basis.push_back(BasisLabel{});
  const int top = level_count(spec.scheme);
  for (int k = 1; k <= spec.atom_count; ++k) {
    for (int l = 2; l <= top; ++l) {
      BasisLabel b;
      b.kind = LabelKind::Excited;
      b.level = l;
      b.atom = k;
      // Level 2 absorbed an a photon, level 3 then emitted into b, level 4
      // absorbed a c photon on top of that.
      b.photon_offset = {-1, l >= 3 ? 1 : 0, l >= 4 ? -1 : 0};
      basis.push_back(b);
    }
  }
  BasisLabel env;
  env.kind = LabelKind::Environment;
  env.photon_offset = {-1, 0, 0};
  env.env_flag = 1;
  basis.push_back(env);
  if (spec.dual_rail) {
    BasisLabel rail;
    rail.kind = LabelKind::EmptyRail;
    rail.rail_flag = true;
    basis.push_back(rail);
  }
  return basis;
}

std::size_t environment_index(const Basis& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].kind == LabelKind::Environment) return i;
  }
  throw ValidationError("basis has no environment label");
}

std::optional<std::size_t> rail_index(const Basis& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].kind == LabelKind::EmptyRail) return i;
  }
  return std::nullopt;
}

std::size_t excited_index(Scheme scheme, int atom, int level) {
  const int top = level_count(scheme);
  if (atom < 1 || level < 2 || level > top) {
    throw ValidationError("excited_index: level/atom out of range");
  }
  return static_cast<std::size_t>(1 + (atom - 1) * (top - 1) + (level - 2));
}

std::string serialize(const Basis& basis) {
  std::string out;
  for (const auto& b : basis) {
    out += b.to_string();
    out += '\n';
  }
  return out;
}

void check_density_matrix(const Eigen::MatrixXcd& m, double herm_tol, double trace_tol,
                          double eig_tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError("density matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw ValidationError("density matrix has non-finite entries");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > herm_tol) throw ValidationError("density matrix is not Hermitian");
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > trace_tol) throw ValidationError("density matrix trace is not 1");
  const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eig_tol) {
    throw ValidationError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(Basis basis, Eigen::MatrixXcd data, Check check)
    : basis_(std::move(basis)), data_(std::move(data)) {
  if (static_cast<std::size_t>(data_.rows()) != basis_.size() ||
      data_.rows() != data_.cols()) {
    throw ValidationError("density matrix dimension does not match its basis");
  }
  if (check == Check::Full) check_density_matrix(data_);
}

DensityMatrix DensityMatrix::pure(Basis basis, const Eigen::VectorXcd& psi) {
  const double n = psi.norm();
  if (n == 0.0 || !std::isfinite(n)) throw ValidationError("state vector has zero norm");
  const Eigen::VectorXcd v = psi / n;
  return DensityMatrix(std::move(basis), v * v.adjoint());
}

DensityMatrix DensityMatrix::projector(Basis basis, std::size_t index) {
  if (index >= basis.size()) throw ValidationError("projector index out of range");
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(basis), std::move(m));
}

double DensityMatrix::trace() const { return data_.trace().real(); }

double DensityMatrix::purity() const { return (data_ * data_).trace().real(); }

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd h = 0.5 * (data_ + data_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::hermiticity_error() const {
  return (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace eitsim
