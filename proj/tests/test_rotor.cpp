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
#include <cmath>
#include <vector>

#include "methylq/rotor.hpp"

using namespace methylq;
using rotor::RotorParams;

namespace {

double rel(double a, double b, double scale) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale});
}

// Oracle: the full (unblocked) plane-wave matrix, diagonalized densely.
std::vector<double> dense_oracle(double f, double v0, int l_max, int n) {
  const int dim = 2 * l_max + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double l = i - l_max;
    h(i, i) = f * l * l + 0.5 * v0;
    if (i + 3 < dim) h(i, i + 3) = h(i + 3, i) = -0.25 * v0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  const Eigen::VectorXd e = solver.eigenvalues();
  return {e.data(), e.data() + n};
}

}  // namespace

TEST_CASE("free rotor energies are F l^2") {
  const auto spectrum = rotor::solve_spectrum({0.64, 0.0, 30}, 9);
  const double expected[] = {0, 1, 1, 4, 4, 9, 9, 16, 16};
  for (int i = 0; i < 9; ++i) {
    CHECK(rel(spectrum.levels[i].energy_mev, 0.64 * expected[i], 0.64) <= 1e-12);
  }
  // l = 3 is A symmetric; l = ±1 and ±2 are E.
  CHECK(spectrum.levels[0].symmetry == SymmetryLabel::A);
  CHECK(spectrum.levels[1].symmetry == SymmetryLabel::E_plus);
  CHECK(spectrum.levels[2].symmetry == SymmetryLabel::E_minus);
}

TEST_CASE("block solver agrees with the dense plane-wave matrix") {
  for (double v0 : {0.0, 3.0, 32.0, 300.0}) {
    const auto spectrum = rotor::solve_spectrum({0.6, v0, 40}, 12);
    const auto dense = dense_oracle(0.6, v0, 40, 12);
    for (int i = 0; i < 12; ++i) {
      CHECK(rel(spectrum.levels[i].energy_mev, dense[i], 0.6) <= 1e-11);
    }
  }
}

TEST_CASE("spectral solver matches the finite-difference oracle") {
  const double ratios[] = {0.0, 1.0, 5.0, 10.0, 50.0, 100.0, 500.0, 1000.0, 5000.0, 1e4};
  const double fs[] = {0.6, 0.64, 0.66, 0.6, 0.64, 0.66, 0.6, 0.64, 0.66, 0.6};
  for (int k = 0; k < 10; ++k) {
    const RotorParams params = rotor::converged_params(fs[k], fs[k] * ratios[k], 12);
    const auto spectrum = rotor::solve_spectrum(params, 12);
    const auto fd = rotor::finite_difference_oracle(params, 4096, 12);
    for (int i = 0; i < 12; ++i) {
      CAPTURE(ratios[k]);
      CAPTURE(i);
      CHECK(rel(spectrum.levels[i].energy_mev, fd[i], params.f_mev) <= 1e-6);
    }
  }
}

TEST_CASE("finite-difference oracle input validation") {
  CHECK_THROWS_AS(rotor::finite_difference_oracle({0.6, 1.0, 30}, 511, 3), ValidationError);
  CHECK_THROWS_AS(rotor::finite_difference_oracle({0.6, 1.0, 30}, 512, 0), ValidationError);
}

TEST_CASE("intermediate barrier level ordering and degeneracy") {
  const auto spectrum = rotor::solve_spectrum({0.6, 32.0, 30}, 6);
  const char* expected = "AEEEEA";
  for (int i = 0; i < 6; ++i) {
    const bool is_a = spectrum.levels[i].symmetry == SymmetryLabel::A;
    CHECK(is_a == (expected[i] == 'A'));
  }
  for (int band = 0; band < 2; ++band) {
    const double ep = spectrum.levels[spectrum.level_index(band, SymmetryLabel::E_plus)].energy_mev;
    const double em = spectrum.levels[spectrum.level_index(band, SymmetryLabel::E_minus)].energy_mev;
    CHECK(std::abs(ep - em) / std::abs(ep) <= 1e-10);
  }
  CHECK(spectrum.splittings_mev[0] > 0.0);
  CHECK(spectrum.splittings_mev[1] < 0.0);
}

TEST_CASE("splitting signs alternate and the ground splitting shrinks with the barrier") {
  const double f = 0.6;
  for (double ratio : {50.0, 200.0}) {
    const auto spectrum = rotor::solve_spectrum(rotor::converged_params(f, ratio * f, 15), 15);
    int checked = 0;
    for (int n = 0; n < spectrum.complete_bands(); ++n) {
      const double ea = spectrum.levels[spectrum.level_index(n, SymmetryLabel::A)].energy_mev;
      if (ea >= ratio * f) break;  // above the barrier top
      CHECK((spectrum.splittings_mev[n] > 0.0) == (n % 2 == 0));
      ++checked;
    }
    CHECK(checked >= 2);
  }
  double previous = std::numeric_limits<double>::infinity();
  // Past V0/F ~ 600 the splitting falls below double resolution of E_E - E_A.
  for (double ratio = 10.0; ratio <= 500.0; ratio *= 1.25) {
    const auto spectrum = rotor::solve_spectrum(rotor::converged_params(f, ratio * f, 3), 3);
    const double d0 = std::abs(spectrum.splittings_mev[0]);
    CHECK(d0 < previous);
    previous = d0;
  }
  const auto at50 = rotor::solve_spectrum(rotor::converged_params(f, 50 * f, 6), 6);
  CHECK(std::abs(at50.splittings_mev[1]) > std::abs(at50.splittings_mev[0]));
}

TEST_CASE("firm-rotor limit approaches three harmonic wells") {
  const double f = 0.6;
  const double v0 = 1e4 * f;
  const auto spectrum = rotor::solve_spectrum(rotor::converged_params(f, v0, 9), 9);
  REQUIRE(spectrum.complete_bands() == 3);
  for (int n = 0; n < 3; ++n) {
    const double center =
        (spectrum.levels[spectrum.level_index(n, SymmetryLabel::A)].energy_mev +
         2.0 * spectrum.levels[spectrum.level_index(n, SymmetryLabel::E_plus)].energy_mev) /
        3.0;
    const auto harmonic = rotor::harmonic_limit_energy(spectrum.params, n);
    CHECK_FALSE(harmonic.regime_warning);
    CHECK(harmonic.energy_mev == doctest::Approx(3.0 * std::sqrt(f * v0) * (n + 0.5)));
    CHECK(std::abs(center - harmonic.energy_mev) / harmonic.energy_mev <= 0.02);
  }
  const double gap = spectrum.levels[spectrum.level_index(1, SymmetryLabel::A)].energy_mev -
                     spectrum.levels[spectrum.level_index(0, SymmetryLabel::A)].energy_mev;
  CHECK(std::abs(spectrum.splittings_mev[0]) / gap <= 1e-3);
  CHECK(rotor::harmonic_limit_energy({0.6, 6.0, 30}, 0).regime_warning);
}

TEST_CASE("LCAO parameters reproduce each band exactly") {
  const auto spectrum = rotor::solve_spectrum({0.6, 32.0, 30}, 9);
  for (int n = 0; n < spectrum.complete_bands(); ++n) {
    const auto fit = rotor::lcao_fit(spectrum, n);
    const double ea = spectrum.levels[spectrum.level_index(n, SymmetryLabel::A)].energy_mev;
    const double ee = spectrum.levels[spectrum.level_index(n, SymmetryLabel::E_plus)].energy_mev;
    CHECK(std::abs(fit.alpha_mev + 2.0 * fit.beta_mev - ea) <= 1e-12 * std::abs(ea));
    CHECK(std::abs(fit.alpha_mev - fit.beta_mev - ee) <= 1e-12 * std::abs(ee));
    CHECK(std::abs(fit.energy(0) - ea) <= 1e-12 * std::abs(ea));
    CHECK(std::abs(fit.energy(1) - ee) <= 1e-12 * std::abs(ee));
    CHECK(std::abs(std::abs(spectrum.splittings_mev[n]) - 3.0 * std::abs(fit.beta_mev)) <= 1e-12);
  }
  CHECK_THROWS_AS(rotor::lcao_fit(spectrum, 7), ValidationError);
}

TEST_CASE("symmetry classification from Fourier content") {
  const int l_max = 6;
  ComplexVector v = ComplexVector::Zero(2 * l_max + 1);
  v(l_max + 3) = 1.0;
  v(l_max - 3) = 1.0;
  CHECK(rotor::classify_symmetry(v) == SymmetryLabel::A);
  v.setZero();
  v(l_max - 2) = 1.0;  // l = -2 is in the +1 residue class
  CHECK(rotor::classify_symmetry(v) == SymmetryLabel::E_plus);
  v(l_max + 2) = 1.0;
  CHECK_THROWS_AS(rotor::classify_symmetry(v), AmbiguityError);
  CHECK_THROWS_AS(rotor::classify_symmetry(ComplexVector::Zero(2 * l_max + 1)), ValidationError);
}

TEST_CASE("eigenvectors are pure residue classes") {
  const auto spectrum = rotor::solve_spectrum({0.6, 32.0, 30}, 9);
  for (const auto& level : spectrum.levels) {
    const auto w = level.residue_weights();
    const int r = rotor::residue_of(level.symmetry);
    const int slot = r == 0 ? 0 : (r == 1 ? 1 : 2);
    CHECK(w[slot] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("input validation and truncation errors") {
  CHECK_THROWS_AS(rotor::solve_spectrum({-1.0, 1.0, 30}, 3), ValidationError);
  CHECK_THROWS_AS(rotor::solve_spectrum({0.6, -1.0, 30}, 3), ValidationError);
  CHECK_THROWS_AS(rotor::solve_spectrum({0.6, 1.0, 2}, 3), ValidationError);
  CHECK_THROWS_AS(rotor::solve_spectrum({0.6, 1.0, 30}, 100), ValidationError);
  CHECK_THROWS_AS(rotor::solve_spectrum({0.6, 6000.0, 12}, 3), TruncationError);
}

TEST_CASE("automatic truncation grows l_max only when needed") {
  CHECK(rotor::converged_params(0.6, 32.0, 6).l_max <= 30);
  const auto high = rotor::converged_params(0.6, 6000.0, 9);
  CHECK(high.l_max > 30);
  CHECK_NOTHROW(rotor::solve_spectrum(high, 9));
}

TEST_CASE("barrier sweep") {
  CHECK(rotor::v0_from_q(0.6, 0.5) == doctest::Approx(60.0));
  CHECK_THROWS_AS(rotor::v0_from_q(0.6, 1.0), ValidationError);

  std::vector<double> grid;
  for (int i = 0; i < 50; ++i) grid.push_back(0.9 * i / 49.0);
  const auto table = rotor::sweep_barrier(0.6, grid, 6);
  CHECK(table.failures.empty());
  REQUIRE(table.rows.size() == 50 * 6);
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].q >= table.rows[i - 1].q);
    CHECK(table.rows[i].v0_over_f >= table.rows[i - 1].v0_over_f);
  }
  const auto again = rotor::sweep_barrier(0.6, grid, 6);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(again.rows[i].energy_mev == table.rows[i].energy_mev);
  }

  const auto partial = rotor::sweep_barrier(0.6, {0.1, 1.2, 0.2}, 3);
  CHECK(partial.failures.size() == 1);
  CHECK(partial.failures[0].q == doctest::Approx(1.2));
  CHECK(partial.rows.size() == 6);
}
