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

#include <map>
#include <string>

#include "methylq/rotor.hpp"
#include "methylq/space_spin.hpp"
#include "methylq/spin_symmetry.hpp"

// Circularly polarized microwave drive at the effective-Hamiltonian level:
// symmetry projectors, dipole selection rules, pulses and logical gates.
//
// Logical basis on the band-0 allowed states, for m = ±1/2:
//   |0,m> =  Φ(E-,0) ⊗ |E+,m>
//   |1,m> = -Φ(E+,0) ⊗ |E-,m>
namespace methylq::drive {

enum class Handedness { right, left };

struct Polarization {
  Handedness handedness = Handedness::right;
  double amplitude = 1.0;
  double phase = 0.0;
};

struct PulseSpec {
  Polarization polarization;
  double kappa_hz = 1.0;
  /// Flip angle θ = 2π κ τ.
  double theta = 0.0;
  double phi = 0.0;

  double duration_s() const { return theta / (2.0 * kPi * kappa_hz); }
};

/// Diagonal projector onto the residue class of l mod 3 carrying label.
ComplexMatrix symmetry_projector(SymmetryLabel label, int l_max);

/// (1 + χ* R+ + χ R-)/3 style construction from the rotation operators, where
/// R± is the active rotation by ±2π/3 (e^{ilφ} -> ε^{∓l} e^{ilφ}).
ComplexMatrix symmetry_projector_from_rotations(SymmetryLabel label, int l_max);

/// right: multiplication by e^{+iφ} (l -> l+1); left: e^{-iφ} (l -> l-1).
ComplexMatrix dipole_operator(Handedness handedness, int l_max);

/// T(i, j) = |<Φ_i| d |Φ_j>|^2 over all solved levels.
Eigen::MatrixXd transition_table(const rotor::RotorSpectrum& spectrum, Handedness handedness);

/// κ (e^{iφ} |Φ(E∓,0)><Φ(A,0)| ⊗ Σ_{m=±1/2} |E±,m><A,m|) + h.c.
/// right selects the upper signs.
ComplexMatrix build_h_eff(double kappa, Handedness handedness,
                          const space_spin::AllowedBasis& basis, double phase = 0.0);

/// ρ -> U ρ U†, U = exp(-i (θ/2) H_eff/κ).
space_spin::CombinedState evolve_pulse(const space_spin::CombinedState& state,
                                       const PulseSpec& pulse);

struct PostSelection {
  spin::DensityMatrix8 state;
  double probability = 0.0;
  double discarded = 0.0;
};

/// Keep the m = ±1/2 part and renormalize. Throws ZeroProbabilityError below 1e-14.
PostSelection post_select_m_half(const spin::DensityMatrix8& rho);

/// (1+β)/2 ρ_E+ + (1-β)/2 ρ_E-
spin::DensityMatrix8 q_logic_mixture(double beta);

/// U+ couples Φ(A,0)|A,m> with Φ(E-,0)|E+,m>; U- with Φ(E+,0)|E-,m>.
enum class Arm { plus, minus };

/// Φ(A,0)|A,m> -> cos(θ/2) Φ(A,0)|A,m> + e^{iφ} sin(θ/2) Φ(E∓,0)|E±,m> for m = ±1/2,
/// identity elsewhere.
ComplexMatrix u_rotation(Arm arm, double theta, double phi, const space_spin::AllowedBasis& basis);

/// Signed logical basis vector |k,m> (k = 0, 1) in the combined space.
ComplexVector logical_vector(const space_spin::AllowedBasis& basis, int k, double m);

/// 1/2 Σ_m |k,m><k,m|
space_spin::CombinedState logical_sector_state(const space_spin::AllowedBasis& basis, int k);

/// Projection onto the logical pair, partial trace over m, renormalized.
spin::LogicalDensity logical_density(const space_spin::CombinedState& state);

/// Applies exp(-i Σ c_α S_α) to the spin factor of every torsional level.
space_spin::CombinedState apply_collective_to_combined(const space_spin::CombinedState& state,
                                                       const Eigen::Vector3d& coeffs);

struct GateReport {
  std::string name;
  ComplexMatrix combined;
  Matrix2 logical;
  /// Phase c with logical ≈ c * target (1 for gates checked only behaviorally).
  Complex global_phase{1.0, 0.0};
  std::map<std::string, double> residuals;
  bool accepted = false;
};

enum class GateName { X, Z };

/// X = U-(π,0) U+(π,0) U-(π,0), Z = U-(2π,0) U+(2π,0) U-(2π,0).
GateReport logical_gate(GateName name, const space_spin::AllowedBasis& basis);
GateReport logical_gate(GateName name);

/// R(α,β) = U-(-π,π) U+(α,-β) U-(π,π), checked on |0> against
/// cos(α/2)|0> + e^{iβ} sin(α/2)|1>.
GateReport logical_rotation(double alpha, double beta, const space_spin::AllowedBasis& basis);
GateReport logical_rotation(double alpha, double beta);

/// Band-0 allowed basis at F = 0.6 meV, V0 = 32 meV.
const space_spin::AllowedBasis& default_band0_basis();

/// 2x2 block of a combined-space operator on the logical pair for one m.
Matrix2 logical_block(const ComplexMatrix& op, const space_spin::AllowedBasis& basis, double m);

}  // namespace methylq::drive
