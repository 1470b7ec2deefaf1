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

#include <cmath>

#include "methylq/linalg.hpp"
#include "methylq/space_spin.hpp"

using namespace methylq;
using space_spin::AllowedBasis;

namespace {

const rotor::RotorSpectrum& fig_spectrum() {
  static const rotor::RotorSpectrum s = rotor::solve_spectrum({0.6, 32.0, 30}, 9);
  return s;
}

// V0 giving a requested ground splitting at F = 0.6 meV, by bisection on the monotone map.
double v0_for_splitting(double target_ghz) {
  double lo = 2.0;
  double hi = 60.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double d = units::mev_to_ghz(rotor::solve_spectrum({0.6, mid, 30}, 3).splittings_mev[0]);
    (d > target_ghz ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("allowed basis obeys the symmetry pairing") {
  const AllowedBasis basis = space_spin::build_allowed_basis(fig_spectrum(), 2);
  REQUIRE(basis.size() == 16);
  int a_count = 0;
  for (const auto& e : basis) {
    CHECK(multiply(e.torsional, e.spin.symmetry) == SymmetryLabel::A);
    if (e.torsional == SymmetryLabel::A) {
      ++a_count;
    } else {
      CHECK(std::abs(e.spin.m) == 0.5);
    }
  }
  CHECK(a_count == 8);
  CHECK(basis.front().label() == "Phi(A,0)|A,+3/2>");
  const int k = space_spin::find_element(basis, 0, SymmetryLabel::E_plus, -0.5);
  REQUIRE(k >= 0);
  CHECK(basis[k].spin.symmetry == SymmetryLabel::E_minus);
  CHECK(space_spin::find_element(basis, 5, SymmetryLabel::A, 0.5) == -1);
  CHECK_THROWS_AS(space_spin::build_allowed_basis(fig_spectrum(), 4), ValidationError);
  CHECK_THROWS_AS(space_spin::build_allowed_basis(fig_spectrum(), 0), ValidationError);
}

TEST_CASE("Zeeman shift enters the total energy") {
  const double omega = 2.0 * kPi * 100e6;
  const AllowedBasis basis = space_spin::build_allowed_basis(fig_spectrum(), 1, omega);
  for (const auto& e : basis) {
    CHECK(e.total_energy_mev ==
          doctest::Approx(e.torsional_energy_mev - e.spin.m * units::kHbarMevSeconds * omega));
  }
}

TEST_CASE("thermal populations follow the two-level Gibbs weights") {
  const AllowedBasis basis = space_spin::build_allowed_basis(fig_spectrum(), 1);
  const double t = 0.05;
  const auto state = space_spin::thermal_state(basis, t);
  const double x = fig_spectrum().splittings_mev[0] / (units::kBoltzmannMevPerKelvin * t);
  const double p_a = 1.0 / (4.0 * (1.0 + std::exp(-x)));
  const double p_e = std::exp(-x) / (4.0 * (1.0 + std::exp(-x)));
  const auto pops = state.populations();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double expected = basis[i].torsional == SymmetryLabel::A ? p_a : p_e;
    CHECK(pops(static_cast<Eigen::Index>(i)) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(space_spin::thermal_state(basis, 0.0), ValidationError);
  CHECK_THROWS_AS(space_spin::thermal_state(basis, -1.0), ValidationError);
}

TEST_CASE("polarization closed forms") {
  const double delta = units::ghz_to_mev(6.5);
  const double t = 0.312;
  const double x = delta / (units::kBoltzmannMevPerKelvin * t);
  const auto g = space_spin::lls_polarization(delta, t);
  CHECK(g.gamma_reference == doctest::Approx(std::tanh(x)).epsilon(1e-14));
  CHECK(g.gamma_boltzmann == doctest::Approx(std::tanh(0.5 * x)).epsilon(1e-14));
  CHECK(g.gamma_reference == doctest::Approx(0.7615).epsilon(1e-3));
  CHECK(g.gamma_boltzmann == doctest::Approx(0.4621).epsilon(1e-3));
  // The often-quoted 0.777 / 0.478 pair belongs to 0.300 K.
  const auto cold = space_spin::lls_polarization(delta, 0.300);
  CHECK(std::abs(cold.gamma_reference - 0.777) < 0.005);
  CHECK(std::abs(cold.gamma_boltzmann - 0.478) < 0.005);
  const auto hot = space_spin::lls_polarization(delta, 1e6);
  CHECK(std::abs(hot.gamma_reference) < 1e-6);
  CHECK(std::abs(hot.gamma_boltzmann) < 1e-6);
  CHECK_THROWS_AS(space_spin::lls_polarization(delta, 0.0), ValidationError);
}

TEST_CASE("thermal state reduces to the long-lived state") {
  const double v0 = v0_for_splitting(6.5);
  const auto spectrum = rotor::solve_spectrum({0.6, v0, 30}, 3);
  CHECK(units::mev_to_ghz(spectrum.splittings_mev[0]) == doctest::Approx(6.5).epsilon(1e-9));
  const AllowedBasis basis = space_spin::build_allowed_basis(spectrum, 1);
  for (double t : {0.312, 0.05, 3.0}) {
    const auto reduced = space_spin::spin_reduced(space_spin::thermal_state(basis, t));
    const auto g = space_spin::lls_polarization(spectrum.splittings_mev[0], t);
    CHECK(linalg::trace_distance(reduced.matrix(), spin::lls_state(g.gamma_boltzmann).matrix()) <=
          1e-10);
    CHECK(space_spin::fit_lls_gamma(reduced) == doctest::Approx(g.gamma_boltzmann).epsilon(1e-10));
  }
}

TEST_CASE("ground state reduces to the A-polarized spin state") {
  const AllowedBasis basis = space_spin::build_allowed_basis(fig_spectrum(), 1);
  const auto rho0 = space_spin::ground_state_rho0(basis);
  const Matrix8 rho_a = spin::symmetry_polarized_state(spin::PolarizedSector::A).matrix();
  CHECK(linalg::trace_distance(space_spin::spin_reduced(rho0).matrix(), rho_a) <= 1e-12);
  CHECK(space_spin::fit_lls_gamma(space_spin::spin_reduced(rho0)) == doctest::Approx(1.0));
}

TEST_CASE("combined state validation") {
  const AllowedBasis basis = space_spin::build_allowed_basis(fig_spectrum(), 1);
  CHECK_THROWS_AS(space_spin::CombinedState(basis, ComplexMatrix::Identity(4, 4)), ValidationError);
  CHECK_THROWS_AS(space_spin::CombinedState(basis, ComplexMatrix::Identity(8, 8)), ValidationError);
  ComplexMatrix neg = ComplexMatrix::Zero(8, 8);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(space_spin::CombinedState(basis, neg), ValidationError);
  CHECK_NOTHROW(space_spin::CombinedState(basis, ComplexMatrix::Identity(8, 8) / 8.0));
}
