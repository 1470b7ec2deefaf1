// Copyright 2026 The methylq Authors
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


#include "methylq/spin_symmetry.hpp"

#include <cmath>
#include <string>

#include "methylq/linalg.hpp"

namespace methylq::spin {

namespace {

Matrix2 pauli(Axis axis) {
  Matrix2 s;
  switch (axis) {
    case Axis::x:
      s << 0, 1, 1, 0;
      break;
    case Axis::y:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case Axis::z:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

constexpr std::array<Axis, 3> kAxes = {Axis::x, Axis::y, Axis::z};

Matrix8 triple(const Matrix2& first, const Matrix2& second, const Matrix2& third) {
  return linalg::kron(linalg::kron(first, second), third);
}

int bit_of(int index, int spin) { return (index >> (2 - spin)) & 1; }

int compose(int s1, int s2, int s3) { return (s1 << 2) | (s2 << 1) | s3; }

// Computational index from a string like "uud".
int index_of_pattern(const char* pattern) {
  int idx = 0;
  for (int k = 0; k < 3; ++k) idx |= (pattern[k] == 'd' ? 1 : 0) << (2 - k);
  return idx;
}

void check_density(const ComplexMatrix& mat, const char* what) {
  if (!mat.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
  if (linalg::hermiticity_defect(mat) > kStructuralTol) {
    throw ValidationError(std::string(what) + ": not Hermitian");
  }
  if (std::abs(mat.trace() - Complex(1.0)) > kStructuralTol) {
    throw ValidationError(std::string(what) + ": trace differs from 1");
  }
  if (linalg::min_eigenvalue(mat) < -kStructuralTol) {
    throw ValidationError(std::string(what) + ": negative eigenvalue");
  }
}

}  // namespace

Matrix8 cyclic_permutation(Direction direction) {
  Matrix8 p = Matrix8::Zero();
  for (int in = 0; in < 8; ++in) {
    const int i = bit_of(in, 0);
    const int j = bit_of(in, 1);
    const int k = bit_of(in, 2);
    const int out = direction == Direction::plus ? compose(k, i, j) : compose(j, k, i);
    p(out, in) = 1.0;
  }
  return p;
}

Matrix8 pauli_scalar_part() {
  const Matrix2 id = Matrix2::Identity();
  Matrix8 sum = Matrix8::Identity();
  for (Axis a : kAxes) {
    const Matrix2 s = pauli(a);
    sum += triple(s, s, id) + triple(id, s, s) + triple(s, id, s);
  }
  return 0.25 * sum;
}

Matrix8 levi_civita_part() {
  // Even permutations of (x, y, z) carry +1, odd ones -1.
  static constexpr std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  Matrix8 sum = Matrix8::Zero();
  for (std::size_t p = 0; p < perms.size(); ++p) {
    const double sign = p < 3 ? 1.0 : -1.0;
    sum += sign * triple(pauli(kAxes[perms[p][0]]), pauli(kAxes[perms[p][1]]),
                         pauli(kAxes[perms[p][2]]));
  }
  return sum;
}

Matrix8 permutation_from_pauli(Direction direction) {
  const double sign = direction == Direction::plus ? -1.0 : 1.0;
  return pauli_scalar_part() + Complex(0.0, 0.25 * sign) * levi_civita_part();
}

Matrix8 single_spin_pauli(int spin, Axis axis) {
  if (spin < 0 || spin > 2) throw ValidationError("spin index must be 0, 1 or 2");
  const Matrix2 id = Matrix2::Identity();
  const Matrix2 s = pauli(axis);
  return triple(spin == 0 ? s : id, spin == 1 ? s : id, spin == 2 ? s : id);
}

Matrix8 collective_spin(Axis axis) {
  return 0.5 * (single_spin_pauli(0, axis) + single_spin_pauli(1, axis) +
                single_spin_pauli(2, axis));
}

CpBasis::CpBasis(Matrix8 u, std::array<CpLabel, 8> labels)
    : u_(std::move(u)), labels_(labels) {}

int CpBasis::index_of(SymmetryLabel symmetry, double m) const {
  for (int k = 0; k < 8; ++k) {
    if (labels_[k].symmetry == symmetry && labels_[k].m == m) return k;
  }
  throw ValidationError("no CP basis state (" + std::string(to_string(symmetry)) + ", m=" +
                        std::to_string(m) + ")");
}

Vector8 CpBasis::ket(SymmetryLabel symmetry, double m) const {
  return u_.col(index_of(symmetry, m));
}

Matrix8 CpBasis::to_cp(const Matrix8& op) const { return u_.adjoint() * op * u_; }

Matrix8 CpBasis::from_cp(const Matrix8& op) const { return u_ * op * u_.adjoint(); }

CpBasis build_cp_basis() {
  const double norm = 1.0 / std::sqrt(3.0);
  const Complex eps = kEpsilon;
  const Complex eps_c = std::conj(kEpsilon);
  Matrix8 u = Matrix8::Zero();

  u(index_of_pattern("uuu"), 0) = 1.0;
  u(index_of_pattern("uud"), 1) = norm;
  u(index_of_pattern("duu"), 1) = norm;
  u(index_of_pattern("udu"), 1) = norm;
  u(index_of_pattern("ddu"), 2) = norm;
  u(index_of_pattern("udd"), 2) = norm;
  u(index_of_pattern("dud"), 2) = norm;
  u(index_of_pattern("ddd"), 3) = 1.0;

  u(index_of_pattern("uud"), 4) = norm;
  u(index_of_pattern("duu"), 4) = norm * eps_c;
  u(index_of_pattern("udu"), 4) = norm * eps;
  u(index_of_pattern("ddu"), 5) = norm;
  u(index_of_pattern("udd"), 5) = norm * eps_c;
  u(index_of_pattern("dud"), 5) = norm * eps;

  u(index_of_pattern("uud"), 6) = norm;
  u(index_of_pattern("duu"), 6) = norm * eps;
  u(index_of_pattern("udu"), 6) = norm * eps_c;
  u(index_of_pattern("ddu"), 7) = norm;
  u(index_of_pattern("udd"), 7) = norm * eps;
  u(index_of_pattern("dud"), 7) = norm * eps_c;

  const std::array<CpLabel, 8> labels = {{{SymmetryLabel::A, 1.5},
                                          {SymmetryLabel::A, 0.5},
                                          {SymmetryLabel::A, -0.5},
                                          {SymmetryLabel::A, -1.5},
                                          {SymmetryLabel::E_plus, 0.5},
                                          {SymmetryLabel::E_plus, -0.5},
                                          {SymmetryLabel::E_minus, 0.5},
                                          {SymmetryLabel::E_minus, -0.5}}};
  return CpBasis(u, labels);
}

const CpBasis& cp_basis() {
  static const CpBasis basis = build_cp_basis();
  return basis;
}

BlockReport block_report(const Matrix8& op, const CpBasis& basis) {
  const Matrix8 cp = basis.to_cp(op);
  BlockReport report;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      if (basis.labels()[r].symmetry != basis.labels()[c].symmetry) {
        report.off_block_max = std::max(report.off_block_max, std::abs(cp(r, c)));
      }
    }
  }
  report.a = cp.block<4, 4>(kCpIndexAStart, kCpIndexAStart);
  report.b_plus = cp.block<2, 2>(kCpIndexEPlus, kCpIndexEPlus);
  report.b_minus = cp.block<2, 2>(kCpIndexEMinus, kCpIndexEMinus);
  report.e_block_mismatch = linalg::max_abs(report.b_plus - report.b_minus);
  return report;
}

DensityMatrix8::DensityMatrix8(const Matrix8& mat) : mat_(mat) {
  check_density(mat_, "DensityMatrix8");
}

DensityMatrix8 DensityMatrix8::from_ket(const Vector8& ket) {
  return DensityMatrix8(ket * ket.adjoint());
}

LogicalDensity::LogicalDensity(const Matrix2& mat) : mat_(mat) {
  check_density(mat_, "LogicalDensity");
}

DensityMatrix8 symmetry_polarized_state(PolarizedSector sector) {
  Matrix8 cp = Matrix8::Zero();
  switch (sector) {
    case PolarizedSector::A:
      for (int k = 0; k < 4; ++k) cp(k, k) = 0.25;
      break;
    case PolarizedSector::E_plus:
      cp(4, 4) = cp(5, 5) = 0.5;
      break;
    case PolarizedSector::E_minus:
      cp(6, 6) = cp(7, 7) = 0.5;
      break;
    case PolarizedSector::E_mixed:
      for (int k = 4; k < 8; ++k) cp(k, k) = 0.25;
      break;
  }
  return DensityMatrix8(cp_basis().from_cp(cp));
}

Matrix8 lls_pauli_form(double gamma) {
  // 4 * pauli_scalar_part() = 1 + Σ s_i.s_j
  const Matrix8 pair_sum = 4.0 * pauli_scalar_part() - Matrix8::Identity();
  return (Matrix8::Identity() + (gamma / 3.0) * pair_sum) / 8.0;
}

DensityMatrix8 lls_state(double gamma) {
  if (!std::isfinite(gamma) || std::abs(gamma) > 1.0) {
    throw ValidationError("lls_state: |gamma| must not exceed 1");
  }
  const Matrix8 mix =
      0.5 * (1.0 + gamma) * symmetry_polarized_state(PolarizedSector::A).matrix() +
      0.5 * (1.0 - gamma) * symmetry_polarized_state(PolarizedSector::E_mixed).matrix();
  const double defect = linalg::max_abs(mix - lls_pauli_form(gamma));
  if (defect > kStructuralTol) {
    throw NumericalError("lls_state: mixture and Pauli form disagree by " +
                         std::to_string(defect));
  }
  return DensityMatrix8(mix);
}

Vector8 logical_ket(Complex a, Complex b, const Spinor2& phi1, const Spinor2& phi2) {
  const double weight = std::norm(a) + std::norm(b);
  if (std::abs(weight - 1.0) > kDerivedTol) {
    throw ValidationError("extract_logical: |a|^2 + |b|^2 must equal 1");
  }
  if (std::abs(phi1.squaredNorm() - 1.0) > kDerivedTol ||
      std::abs(phi2.squaredNorm() - 1.0) > kDerivedTol) {
    throw ValidationError("extract_logical: phi1 and phi2 must be unit vectors");
  }
  const CpBasis& basis = cp_basis();
  Vector8 cp = Vector8::Zero();
  cp(kCpIndexEPlus) = a * phi1(0);
  cp(kCpIndexEPlus + 1) = a * phi1(1);
  cp(kCpIndexEMinus) = b * phi2(0);
  cp(kCpIndexEMinus + 1) = b * phi2(1);
  return basis.u() * cp;
}

LogicalDensity logical_density(const Matrix8& rho) {
  const Matrix8 cp = cp_basis().to_cp(rho);
  Matrix2 out;
  // E block is (s ∈ {E+, E-}) ⊗ (m ∈ {+1/2, -1/2}); trace out m.
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      out(s, t) = cp(4 + 2 * s, 4 + 2 * t) + cp(5 + 2 * s, 5 + 2 * t);
    }
  }
  const double weight = out.trace().real();
  if (weight < 1e-14) throw ZeroProbabilityError("logical_density: no weight in the E sector");
  return LogicalDensity(out / weight);
}

LogicalDensity extract_logical(Complex a, Complex b, const Spinor2& phi1, const Spinor2& phi2) {
  const Vector8 psi = logical_ket(a, b, phi1, phi2);
  return logical_density(psi * psi.adjoint());
}

Matrix8 collective_unitary(const Eigen::Vector3d& coeffs) {
  const Matrix8 generator = coeffs(0) * collective_spin(Axis::x) +
                            coeffs(1) * collective_spin(Axis::y) +
                            coeffs(2) * collective_spin(Axis::z);
  return linalg::unitary_propagator(generator);
}

DensityMatrix8 apply_collective_unitary(const DensityMatrix8& rho, const Eigen::Vector3d& coeffs) {
  const Matrix8 u = collective_unitary(coeffs);
  Matrix8 out = u * rho.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix8(out);
}

Matrix8 spin_hamiltonian(double omega_h, double j0) {
  const Matrix8 pair_sum = 4.0 * pauli_scalar_part() - Matrix8::Identity();
  const Matrix8 h = omega_h * collective_spin(Axis::z) + 2.0 * kPi * j0 * pair_sum;
  const double scale = std::max({1.0, std::abs(omega_h), std::abs(2.0 * kPi * j0)});
  for (Direction d : {Direction::plus, Direction::minus}) {
    const double defect = linalg::max_abs(linalg::commutator(h, cyclic_permutation(d)));
    if (defect > kStructuralTol * scale) {
      throw NumericalError("spin_hamiltonian: [H, P] = " + std::to_string(defect));
    }
  }
  return h;
}

}  // namespace methylq::spin
