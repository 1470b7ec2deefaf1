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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "methylq/linalg.hpp"
#include "methylq/spin_symmetry.hpp"

using namespace methylq;
using spin::Axis;
using spin::Direction;

namespace {

// Oracle: P+|ijk> = |kij> by bit shuffling, spin 1 in the most significant bit.
Matrix8 shuffle_oracle(bool plus) {
  Matrix8 p = Matrix8::Zero();
  for (int idx = 0; idx < 8; ++idx) {
    const int i = (idx >> 2) & 1, j = (idx >> 1) & 1, k = idx & 1;
    const int target = plus ? (k << 2) | (i << 1) | j : (j << 2) | (k << 1) | i;
    p(target, idx) = 1.0;
  }
  return p;
}

Matrix8 symmetric_projector_a() {
  return (Matrix8::Identity() + shuffle_oracle(true) + shuffle_oracle(false)) / 3.0;
}

}  // namespace

TEST_CASE("cyclic permutations match the bit-shuffle oracle") {
  CHECK(linalg::max_abs(spin::cyclic_permutation(Direction::plus) - shuffle_oracle(true)) == 0.0);
  CHECK(linalg::max_abs(spin::cyclic_permutation(Direction::minus) - shuffle_oracle(false)) == 0.0);
  const Matrix8 p = shuffle_oracle(true);
  CHECK(linalg::max_abs(p * p * p - Matrix8::Identity()) == 0.0);
}

TEST_CASE("Pauli expansion of the permutations") {
  for (Direction d : {Direction::plus, Direction::minus}) {
    CHECK(linalg::max_abs(spin::permutation_from_pauli(d) - shuffle_oracle(d == Direction::plus)) <=
          1e-14);
  }
  // The scalar part (1 + Σσ.σ)/4 is the symmetric part (P+ + P-)/2.
  const Matrix8 sym = 0.5 * (shuffle_oracle(true) + shuffle_oracle(false));
  CHECK(linalg::max_abs(spin::pauli_scalar_part() - sym) <= 1e-14);
}

TEST_CASE("single-spin and collective operators") {
  const Matrix8 sz1 = spin::single_spin_pauli(0, Axis::z);
  CHECK(sz1(0, 0).real() == doctest::Approx(1.0));
  CHECK(sz1(7, 7).real() == doctest::Approx(-1.0));
  CHECK(sz1(3, 3).real() == doctest::Approx(1.0));  // |↑↓↓>
  CHECK_THROWS_AS(spin::single_spin_pauli(3, Axis::x), ValidationError);
  // [S_x, S_y] = i S_z
  const Matrix8 sx = spin::collective_spin(Axis::x);
  const Matrix8 sy = spin::collective_spin(Axis::y);
  const Matrix8 sz = spin::collective_spin(Axis::z);
  CHECK(linalg::max_abs(linalg::commutator(sx, sy) - Complex(0, 1) * sz) <= 1e-14);
}

TEST_CASE("CP basis columns are joint eigenvectors with the tabulated labels") {
  const spin::CpBasis& cp = spin::cp_basis();
  CHECK(linalg::unitarity_defect(cp.u()) <= 1e-12);
  const Matrix8 p = shuffle_oracle(true);
  const Matrix8 sz = spin::collective_spin(Axis::z);
  for (int k = 0; k < 8; ++k) {
    const Vector8 v = cp.u().col(k);
    const auto label = cp.labels()[k];
    const Complex eig = label.symmetry == SymmetryLabel::A        ? Complex(1.0)
                        : label.symmetry == SymmetryLabel::E_plus ? kEpsilon
                                                                  : std::conj(kEpsilon);
    CHECK(linalg::max_abs(p * v - eig * v) <= 1e-12);
    CHECK(linalg::max_abs(sz * v - label.m * v) <= 1e-12);
  }
  CHECK(cp.index_of(SymmetryLabel::E_plus, 0.5) == spin::kCpIndexEPlus);
  CHECK(cp.index_of(SymmetryLabel::E_minus, 0.5) == spin::kCpIndexEMinus);
  CHECK_THROWS_AS(cp.index_of(SymmetryLabel::E_plus, 1.5), ValidationError);
}

TEST_CASE("P+ eigenvalue multiset") {
  Eigen::ComplexEigenSolver<Matrix8> solver(shuffle_oracle(true).cast<Complex>());
  int ones = 0, eps = 0, eps_conj = 0;
  for (int k = 0; k < 8; ++k) {
    const Complex e = solver.eigenvalues()(k);
    ones += std::abs(e - 1.0) < 1e-10;
    eps += std::abs(e - kEpsilon) < 1e-10;
    eps_conj += std::abs(e - std::conj(kEpsilon)) < 1e-10;
  }
  CHECK(ones == 4);
  CHECK(eps == 2);
  CHECK(eps_conj == 2);
}

TEST_CASE("collective operators are block diagonal with identical E blocks") {
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    const auto report = spin::block_report(spin::collective_spin(a));
    CHECK(report.off_block_max <= 1e-14);
    CHECK(report.e_block_mismatch <= 1e-14);
  }
  // A single-spin operator mixes the sectors.
  const auto single = spin::block_report(spin::single_spin_pauli(0, Axis::z));
  CHECK(single.off_block_max == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("LLS state against the projector oracle") {
  const Matrix8 pa = symmetric_projector_a();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double g = unit(rng);
    const Matrix8 oracle =
        0.5 * (1 + g) * pa / 4.0 + 0.5 * (1 - g) * (Matrix8::Identity() - pa) / 4.0;
    CHECK(linalg::max_abs(spin::lls_state(g).matrix() - oracle) <= 1e-12);
    CHECK(linalg::max_abs(spin::lls_pauli_form(g) - oracle) <= 1e-12);
  }
  CHECK_THROWS_AS(spin::lls_state(1.01), ValidationError);
  CHECK(spin::lls_state(1.0).matrix().trace().real() == doctest::Approx(1.0));
}

TEST_CASE("polarized states") {
  const Matrix8 rho_a = spin::symmetry_polarized_state(spin::PolarizedSector::A).matrix();
  CHECK(linalg::max_abs(rho_a - symmetric_projector_a() / 4.0) <= 1e-12);
  const Matrix8 mixed = spin::symmetry_polarized_state(spin::PolarizedSector::E_mixed).matrix();
  CHECK(linalg::max_abs(mixed - (Matrix8::Identity() - symmetric_projector_a()) / 4.0) <= 1e-12);
}

TEST_CASE("density matrix validation") {
  Matrix8 bad = Matrix8::Identity() / 8.0;
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(spin::DensityMatrix8{bad}, ValidationError);
  Matrix8 negative = Matrix8::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(spin::DensityMatrix8{negative}, ValidationError);
  CHECK_THROWS_AS(spin::LogicalDensity{Matrix2::Identity()}, ValidationError);
}

TEST_CASE("logical extraction and collective-noise invariance") {
  const Complex a = std::polar(std::cos(0.4), 0.3);
  const Complex b = std::polar(std::sin(0.4), -1.1);
  const Spinor2 phi1 = Spinor2(Complex(0.6, 0.0), Complex(0.0, 0.8));
  const Spinor2 phi2 = Spinor2(Complex(1.0, 1.0), Complex(0.5, -0.2)).normalized();
  const Matrix2 logical = spin::extract_logical(a, b, phi1, phi2).matrix();
  CHECK(logical(0, 0).real() == doctest::Approx(std::norm(a)).epsilon(1e-12));
  CHECK(std::abs(logical(0, 1) - a * std::conj(b) * phi2.dot(phi1)) <= 1e-12);

  const auto rho = spin::DensityMatrix8::from_ket(spin::logical_ket(a, b, phi1, phi2));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Vector3d c(angle(rng), angle(rng), angle(rng));
    const Matrix8 u = spin::collective_unitary(c);
    CHECK(linalg::unitarity_defect(u) <= 1e-12);
    CHECK(linalg::max_abs(linalg::commutator(u, shuffle_oracle(true))) <= 1e-12);
    const auto rotated = spin::apply_collective_unitary(rho, c);
    CHECK(linalg::trace_distance(spin::logical_density(rotated.matrix()).matrix(), logical) <=
          1e-10);
  }
  // A single-spin rotation is not protected.
  const Matrix8 kick = linalg::unitary_propagator(spin::single_spin_pauli(0, Axis::x), 0.7);
  const Matrix8 kicked = kick * rho.matrix() * kick.adjoint();
  CHECK(linalg::trace_distance(spin::logical_density(kicked).matrix(), logical) > 1e-3);
}

TEST_CASE("logical density needs E-sector weight") {
  CHECK_THROWS_AS(
      spin::logical_density(spin::symmetry_polarized_state(spin::PolarizedSector::A).matrix()),
      ZeroProbabilityError);
}

TEST_CASE("spin Hamiltonian commutes with the permutations") {
  const Matrix8 h = spin::spin_hamiltonian(2.0, 0.5);
  CHECK(linalg::hermiticity_defect(h) <= 1e-14);
  CHECK(linalg::max_abs(linalg::commutator(h, shuffle_oracle(false))) <= 1e-12);
}
