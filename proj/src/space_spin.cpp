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


#include "methylq/space_spin.hpp"

#include <cmath>
#include <sstream>

#include "methylq/linalg.hpp"

namespace methylq::space_spin {

namespace {

std::string format_m(double m) {
  const int twice = static_cast<int>(std::lround(2.0 * m));
  std::ostringstream out;
  out << (twice >= 0 ? "+" : "-") << std::abs(twice) << "/2";
  return out.str();
}

}  // namespace

std::string AllowedBasisElement::label() const {
  std::ostringstream out;
  out << "Phi(" << to_string(torsional) << "," << band << ")|" << to_string(spin.symmetry) << ","
      << format_m(spin.m) << ">";
  return out.str();
}

AllowedBasis build_allowed_basis(const rotor::RotorSpectrum& spectrum, int n_bands,
                                 double omega_h) {
  if (n_bands < 1) throw ValidationError("build_allowed_basis: n_bands must be positive");
  if (n_bands > spectrum.complete_bands()) {
    throw ValidationError("build_allowed_basis: spectrum has " +
                          std::to_string(spectrum.complete_bands()) +
                          " complete bands, " + std::to_string(n_bands) + " requested");
  }
  const double zeeman_mev = units::kHbarMevSeconds * omega_h;
  AllowedBasis basis;
  for (std::size_t i = 0; i < spectrum.levels.size(); ++i) {
    const rotor::TorsionalLevel& level = spectrum.levels[i];
    if (level.band < 0 || level.band >= n_bands) continue;
    // Pauli: Sym(tor) x Sym(spin) = A.
    const SymmetryLabel spin_symmetry = conjugate(level.symmetry);
    const std::vector<double> ms = spin_symmetry == SymmetryLabel::A
                                       ? std::vector<double>{1.5, 0.5, -0.5, -1.5}
                                       : std::vector<double>{0.5, -0.5};
    for (double m : ms) {
      AllowedBasisElement element;
      element.level_index = static_cast<int>(i);
      element.band = level.band;
      element.torsional = level.symmetry;
      element.torsional_energy_mev = level.energy_mev;
      element.spin = {spin_symmetry, m};
      element.total_energy_mev = level.energy_mev - m * zeeman_mev;
      basis.push_back(element);
    }
  }
  if (basis.size() != static_cast<std::size_t>(8 * n_bands)) {
    throw ValidationError("build_allowed_basis: incomplete band in range");
  }
  return basis;
}

int find_element(const AllowedBasis& basis, int band, SymmetryLabel torsional, double m) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].band == band && basis[i].torsional == torsional && basis[i].spin.m == m) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

CombinedState::CombinedState(AllowedBasis basis, ComplexMatrix mat)
    : basis_(std::move(basis)), mat_(std::move(mat)) {
  const auto n = static_cast<Eigen::Index>(basis_.size());
  if (mat_.rows() != n || mat_.cols() != n) {
    throw ValidationError("CombinedState: matrix does not match basis size");
  }
  if (!mat_.allFinite() || linalg::hermiticity_defect(mat_) > kStructuralTol) {
    throw ValidationError("CombinedState: not Hermitian");
  }
  if (std::abs(mat_.trace() - Complex(1.0)) > kStructuralTol) {
    throw ValidationError("CombinedState: trace differs from 1");
  }
  if (linalg::min_eigenvalue(mat_) < -kStructuralTol) {
    throw ValidationError("CombinedState: negative eigenvalue");
  }
}

CombinedState thermal_state(const AllowedBasis& basis, double temperature_k) {
  if (!(temperature_k > 0.0)) throw ValidationError("thermal_state: temperature must be > 0");
  if (basis.empty()) throw ValidationError("thermal_state: empty basis");
  const double kt = units::kBoltzmannMevPerKelvin * temperature_k;
  double e_min = basis.front().total_energy_mev;
  for (const auto& element : basis) e_min = std::min(e_min, element.total_energy_mev);
  Eigen::VectorXd weights(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    weights(i) = std::exp(-(basis[i].total_energy_mev - e_min) / kt);
  }
  weights /= weights.sum();
  return CombinedState(basis, weights.cast<Complex>().asDiagonal());
}

CombinedState ground_state_rho0(const AllowedBasis& basis) {
  ComplexMatrix mat = ComplexMatrix::Zero(basis.size(), basis.size());
  int found = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].band == 0 && basis[i].torsional == SymmetryLabel::A) {
      mat(i, i) = 0.25;
      ++found;
    }
  }
  if (found != 4) throw ValidationError("ground_state_rho0: band 0 A level missing");
  return CombinedState(basis, mat);
}

spin::DensityMatrix8 spin_reduced(const CombinedState& state) {
  const AllowedBasis& basis = state.basis();
  const spin::CpBasis& cp = spin::cp_basis();
  Matrix8 reduced = Matrix8::Zero();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (basis[i].level_index != basis[j].level_index) continue;
      const int r = cp.index_of(basis[i].spin.symmetry, basis[i].spin.m);
      const int c = cp.index_of(basis[j].spin.symmetry, basis[j].spin.m);
      reduced(r, c) += state.matrix()(i, j);
    }
  }
  Matrix8 comp = cp.from_cp(reduced);
  comp = 0.5 * (comp + comp.adjoint()).eval();
  return spin::DensityMatrix8(comp);
}

LlsPolarization lls_polarization(double delta_e0_mev, double temperature_k) {
  if (!(temperature_k > 0.0)) throw ValidationError("lls_polarization: temperature must be > 0");
  const double x = delta_e0_mev / (units::kBoltzmannMevPerKelvin * temperature_k);
  return {std::tanh(x), std::tanh(0.5 * x)};
}

double fit_lls_gamma(const spin::DensityMatrix8& rho) {
  // lls_state(γ) = C + γ D with C = (ρ_A + ρ_E)/2, D = (ρ_A - ρ_E)/2.
  const Matrix8 rho_a = spin::symmetry_polarized_state(spin::PolarizedSector::A).matrix();
  const Matrix8 rho_e = spin::symmetry_polarized_state(spin::PolarizedSector::E_mixed).matrix();
  const Matrix8 c = 0.5 * (rho_a + rho_e);
  const Matrix8 d = 0.5 * (rho_a - rho_e);
  const Complex num = (d.adjoint() * (rho.matrix() - c)).trace();
  const Complex den = (d.adjoint() * d).trace();
  return num.real() / den.real();
}

}  // namespace methylq::space_spin
