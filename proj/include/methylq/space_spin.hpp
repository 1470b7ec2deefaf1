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

#include <string>
#include <vector>

#include "methylq/rotor.hpp"
#include "methylq/spin_symmetry.hpp"

// Combined torsional ⊗ spin states restricted to the Pauli-allowed products
// A×A, E+×E-, E-×E+.
namespace methylq::space_spin {

struct SpinLabel {
  SymmetryLabel symmetry = SymmetryLabel::A;
  double m = 0.0;
};

struct AllowedBasisElement {
  int level_index = 0;  ///< index into RotorSpectrum::levels
  int band = 0;
  SymmetryLabel torsional = SymmetryLabel::A;
  double torsional_energy_mev = 0.0;
  SpinLabel spin;
  /// Torsional energy minus m ħω_h.
  double total_energy_mev = 0.0;

  /// e.g. "Phi(A,0)|A,+3/2>"
  std::string label() const;
};

using AllowedBasis = std::vector<AllowedBasisElement>;

/// 8 elements per band: 4 for the A level, 2 for each E level. Throws
/// ValidationError if any requested band is not complete.
/// omega_h is the proton Larmor frequency in rad/s (0 disables Zeeman shifts).
AllowedBasis build_allowed_basis(const rotor::RotorSpectrum& spectrum, int n_bands,
                                 double omega_h = 0.0);

/// Position of (band, torsional symmetry, m) in the basis, or -1.
int find_element(const AllowedBasis& basis, int band, SymmetryLabel torsional, double m);

class CombinedState {
 public:
  /// Validates shape, hermiticity, unit trace and positivity.
  CombinedState(AllowedBasis basis, ComplexMatrix mat);

  const AllowedBasis& basis() const { return basis_; }
  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::VectorXd populations() const { return mat_.diagonal().real(); }

 private:
  AllowedBasis basis_;
  ComplexMatrix mat_;
};

/// Diagonal Gibbs state, weights ∝ exp(-E_total / k_B T).
CombinedState thermal_state(const AllowedBasis& basis, double temperature_k);

/// |Φ_{A,0}><Φ_{A,0}| ⊗ ρ_A
CombinedState ground_state_rho0(const AllowedBasis& basis);

/// Partial trace over the torsional factor, returned in the computational spin basis.
spin::DensityMatrix8 spin_reduced(const CombinedState& state);

struct LlsPolarization {
  /// tanh(ΔE0 / k_B T)
  double gamma_reference = 0.0;
  /// tanh(ΔE0 / 2 k_B T), from the two four-fold degenerate Gibbs weights.
  double gamma_boltzmann = 0.0;
};

LlsPolarization lls_polarization(double delta_e0_mev, double temperature_k);

/// Least-squares γ such that lls_state(γ) is closest (Frobenius) to rho.
double fit_lls_gamma(const spin::DensityMatrix8& rho);

}  // namespace methylq::space_spin
