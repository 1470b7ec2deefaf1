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


#pragma once

#include <array>

#include "methylq/types.hpp"

// Operator algebra of three identical spin-1/2 particles.
//
// Computational basis ordering: |up up up> is index 0 and |down down down>
// is index 7, spin 1 is the most significant bit and a set bit means down.
namespace methylq::spin {

enum class Direction { plus, minus };
enum class Axis { x, y, z };

/// P+ |i j k> = |k i j>,  P- |i j k> = |j k i>.
Matrix8 cyclic_permutation(Direction direction);

/// Same operator summed from its Pauli-string expansion:
///   P± = (1 + s1.s2 + s2.s3 + s1.s3 ∓ i Σ ε_abc σa⊗σb⊗σc) / 4
Matrix8 permutation_from_pauli(Direction direction);

/// (1 + s1.s2 + s2.s3 + s1.s3) / 4
Matrix8 pauli_scalar_part();
/// Σ ε_abc σa⊗σb⊗σc, without the ∓i/4 prefactor.
Matrix8 levi_civita_part();

/// σ_axis acting on one spin (0, 1 or 2).
Matrix8 single_spin_pauli(int spin, Axis axis);

/// S_axis = (1/2) Σ_i σ_axis^(i), with ħ = 1.
Matrix8 collective_spin(Axis axis);

struct CpLabel {
  SymmetryLabel symmetry;
  double m;
};

/// Cyclic-permutation basis. Columns of u are |s,m> in the computational basis,
/// ordered (A,3/2) (A,1/2) (A,-1/2) (A,-3/2) (E+,1/2) (E+,-1/2) (E-,1/2) (E-,-1/2).
class CpBasis {
 public:
  CpBasis(Matrix8 u, std::array<CpLabel, 8> labels);

  const Matrix8& u() const { return u_; }
  const std::array<CpLabel, 8>& labels() const { return labels_; }

  /// Column index of |s,m>; throws ValidationError for a label outside the table.
  int index_of(SymmetryLabel symmetry, double m) const;

  Vector8 ket(SymmetryLabel symmetry, double m) const;

  /// u† op u
  Matrix8 to_cp(const Matrix8& op) const;
  /// u op u†
  Matrix8 from_cp(const Matrix8& op) const;

 private:
  Matrix8 u_;
  std::array<CpLabel, 8> labels_;
};

/// Builds the basis with the tabulated coefficients (ε on the third ket for E+).
CpBasis build_cp_basis();

/// Shared instance; every operation uses this one phase convention.
const CpBasis& cp_basis();

inline constexpr int kCpIndexAStart = 0;
inline constexpr int kCpIndexEPlus = 4;
inline constexpr int kCpIndexEMinus = 6;

struct BlockReport {
  /// Largest |entry| coupling different symmetry sectors in the CP basis.
  double off_block_max = 0.0;
  Eigen::Matrix4cd a;
  Matrix2 b_plus;
  Matrix2 b_minus;
  /// max |b_plus - b_minus|
  double e_block_mismatch = 0.0;
};

BlockReport block_report(const Matrix8& op, const CpBasis& basis = cp_basis());

/// 8x8 Hermitian, unit-trace, positive semidefinite matrix in the computational basis.
class DensityMatrix8 {
 public:
  /// Validates hermiticity, trace and positivity at kStructuralTol.
  explicit DensityMatrix8(const Matrix8& mat);

  static DensityMatrix8 from_ket(const Vector8& ket);

  const Matrix8& matrix() const { return mat_; }
  Matrix8 in_cp_basis() const { return cp_basis().to_cp(mat_); }

 private:
  Matrix8 mat_;
};

/// 2x2 density matrix of the logical (symmetry-label) subsystem.
class LogicalDensity {
 public:
  explicit LogicalDensity(const Matrix2& mat);

  const Matrix2& matrix() const { return mat_; }

 private:
  Matrix2 mat_;
};

enum class PolarizedSector { A, E_plus, E_minus, E_mixed };

/// ρ_A = (1/4) Σ_m |A,m><A,m|, ρ_E± = (1/2) Σ_m |E±,m><E±,m|, ρ_E = (ρ_E+ + ρ_E-)/2.
DensityMatrix8 symmetry_polarized_state(PolarizedSector sector);

/// (1+γ)/2 ρ_A + (1-γ)/2 ρ_E; cross-checked against (1/8)(1 + (γ/3) Σ s_i.s_j).
DensityMatrix8 lls_state(double gamma);
Matrix8 lls_pauli_form(double gamma);

/// a |E+>⊗|φ1> + b |E->⊗|φ2>, with φ = (c_{+1/2}, c_{-1/2}).
Vector8 logical_ket(Complex a, Complex b, const Spinor2& phi1, const Spinor2& phi2);

/// Partial trace over m of the E sector, renormalized by the E-sector weight.
LogicalDensity logical_density(const Matrix8& rho);

LogicalDensity extract_logical(Complex a, Complex b, const Spinor2& phi1, const Spinor2& phi2);

/// exp(-i Σ_α c_α S_α)
Matrix8 collective_unitary(const Eigen::Vector3d& coeffs);

DensityMatrix8 apply_collective_unitary(const DensityMatrix8& rho, const Eigen::Vector3d& coeffs);

/// (ω_h/2) Σ σ_z^(i) + 2π J0 Σ_{j<k} s_j.s_k; asserts [H, P±] = 0.
Matrix8 spin_hamiltonian(double omega_h, double j0);

}  // namespace methylq::spin
