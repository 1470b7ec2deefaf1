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


#include "methylq/drive.hpp"

#include <cmath>

#include "methylq/linalg.hpp"

namespace methylq::drive {

using space_spin::AllowedBasis;
using space_spin::CombinedState;

namespace {

constexpr double kHalfSpins[2] = {0.5, -0.5};

int mod3(int l) { return ((l % 3) + 3) % 3; }

int require(const AllowedBasis& basis, SymmetryLabel torsional, double m, const char* what) {
  const int idx = space_spin::find_element(basis, 0, torsional, m);
  if (idx < 0) throw ValidationError(std::string(what) + ": band-0 allowed states missing");
  return idx;
}

// Torsional label of the excited partner reached by each arm.
SymmetryLabel partner_torsion(Arm arm) {
  return arm == Arm::plus ? SymmetryLabel::E_minus : SymmetryLabel::E_plus;
}

Arm arm_of(Handedness handedness) {
  return handedness == Handedness::right ? Arm::plus : Arm::minus;
}

CombinedState conjugate_by(const CombinedState& state, const ComplexMatrix& u) {
  ComplexMatrix out = u * state.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return CombinedState(state.basis(), out);
}

Matrix2 pauli_x() {
  Matrix2 s;
  s << 0, 1, 1, 0;
  return s;
}

Matrix2 pauli_y() {
  Matrix2 s;
  s << 0, Complex(0, -1), Complex(0, 1), 0;
  return s;
}

Matrix2 pauli_z() {
  Matrix2 s;
  s << 1, 0, 0, -1;
  return s;
}

// Phase c minimizing |L - c T| for unitary T, normalized to |c| = 1.
Complex best_phase(const Matrix2& logical, const Matrix2& target) {
  const Complex overlap = (target.adjoint() * logical).trace();
  return std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
}

double leakage(const ComplexMatrix& op, const AllowedBasis& basis) {
  double worst = 0.0;
  for (double m : kHalfSpins) {
    const Matrix2 block = logical_block(op, basis, m);
    for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(1.0 - block.col(c).squaredNorm()));
  }
  return worst;
}

double m_mismatch(const ComplexMatrix& op, const AllowedBasis& basis) {
  return linalg::max_abs(logical_block(op, basis, 0.5) - logical_block(op, basis, -0.5));
}

ComplexMatrix compose_gate(GateName name, const AllowedBasis& basis) {
  const double angle = name == GateName::X ? kPi : 2.0 * kPi;
  const ComplexMatrix minus = u_rotation(Arm::minus, angle, 0.0, basis);
  const ComplexMatrix plus = u_rotation(Arm::plus, angle, 0.0, basis);
  return minus * plus * minus;
}

bool all_within(const std::map<std::string, double>& residuals, double tol) {
  for (const auto& [key, value] : residuals) {
    if (!(value <= tol)) return false;
  }
  return true;
}

}  // namespace

ComplexMatrix symmetry_projector(SymmetryLabel label, int l_max) {
  if (l_max < 1) throw ValidationError("symmetry_projector: l_max must be positive");
  const int n = 2 * l_max + 1;
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (rotor::symmetry_of_residue(i - l_max) == label) p(i, i) = 1.0;
  }
  return p;
}

ComplexMatrix symmetry_projector_from_rotations(SymmetryLabel label, int l_max) {
  if (l_max < 1) throw ValidationError("symmetry_projector: l_max must be positive");
  const int n = 2 * l_max + 1;
  Complex chi_plus = 1.0;
  Complex chi_minus = 1.0;
  if (label == SymmetryLabel::E_plus) {
    chi_plus = kEpsilon;
    chi_minus = std::conj(kEpsilon);
  } else if (label == SymmetryLabel::E_minus) {
    chi_plus = std::conj(kEpsilon);
    chi_minus = kEpsilon;
  }
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int l = i - l_max;
    const Complex r_plus = std::pow(std::conj(kEpsilon), mod3(l));
    const Complex r_minus = std::pow(kEpsilon, mod3(l));
    p(i, i) = (1.0 + chi_plus * r_plus + chi_minus * r_minus) / 3.0;
  }
  return p;
}

ComplexMatrix dipole_operator(Handedness handedness, int l_max) {
  if (l_max < 1) throw ValidationError("dipole_operator: l_max must be positive");
  const int n = 2 * l_max + 1;
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    if (handedness == Handedness::right) {
      d(i + 1, i) = 1.0;
    } else {
      d(i, i + 1) = 1.0;
    }
  }
  return d;
}

Eigen::MatrixXd transition_table(const rotor::RotorSpectrum& spectrum, Handedness handedness) {
  const ComplexMatrix d = dipole_operator(handedness, spectrum.params.l_max);
  const auto n = static_cast<Eigen::Index>(spectrum.levels.size());
  Eigen::MatrixXd table(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Complex amp = spectrum.levels[i].fourier.dot(d * spectrum.levels[j].fourier);
      table(i, j) = std::norm(amp);
    }
  }
  return table;
}

ComplexMatrix build_h_eff(double kappa, Handedness handedness, const AllowedBasis& basis,
                          double phase) {
  const SymmetryLabel target = partner_torsion(arm_of(handedness));
  ComplexMatrix h = ComplexMatrix::Zero(basis.size(), basis.size());
  for (double m : kHalfSpins) {
    const int g = require(basis, SymmetryLabel::A, m, "build_h_eff");
    const int e = require(basis, target, m, "build_h_eff");
    h(e, g) = kappa * std::polar(1.0, phase);
    h(g, e) = std::conj(h(e, g));
  }
  return h;
}

CombinedState evolve_pulse(const CombinedState& state, const PulseSpec& pulse) {
  if (!(pulse.kappa_hz > 0.0)) throw ValidationError("evolve_pulse: kappa must be positive");
  if (pulse.polarization.amplitude < 0.0) {
    throw ValidationError("evolve_pulse: amplitude must be non-negative");
  }
  const ComplexMatrix h =
      build_h_eff(pulse.kappa_hz, pulse.polarization.handedness, state.basis(), pulse.phi);
  const ComplexMatrix u = linalg::unitary_propagator(h, 0.5 * pulse.theta / pulse.kappa_hz);
  return conjugate_by(state, u);
}

PostSelection post_select_m_half(const spin::DensityMatrix8& rho) {
  const spin::CpBasis& cp = spin::cp_basis();
  Matrix8 projector = Matrix8::Zero();
  for (int k = 0; k < 8; ++k) {
    if (std::abs(cp.labels()[k].m) == 0.5) projector(k, k) = 1.0;
  }
  const Matrix8 p = cp.from_cp(projector);
  Matrix8 kept = p * rho.matrix() * p;
  const double probability = kept.trace().real();
  if (probability < 1e-14) {
    throw ZeroProbabilityError("post_select_m_half: no weight on m = +-1/2");
  }
  kept = 0.5 * (kept + kept.adjoint()).eval() / probability;
  return {spin::DensityMatrix8(kept), probability, 1.0 - probability};
}

spin::DensityMatrix8 q_logic_mixture(double beta) {
  if (!std::isfinite(beta) || std::abs(beta) > 1.0) {
    throw ValidationError("q_logic_mixture: |beta| must not exceed 1");
  }
  return spin::DensityMatrix8(
      0.5 * (1.0 + beta) * spin::symmetry_polarized_state(spin::PolarizedSector::E_plus).matrix() +
      0.5 * (1.0 - beta) * spin::symmetry_polarized_state(spin::PolarizedSector::E_minus).matrix());
}

ComplexMatrix u_rotation(Arm arm, double theta, double phi, const AllowedBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  ComplexMatrix u = ComplexMatrix::Identity(n, n);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  for (double m : kHalfSpins) {
    const int g = require(basis, SymmetryLabel::A, m, "u_rotation");
    const int e = require(basis, partner_torsion(arm), m, "u_rotation");
    u(g, g) = c;
    u(e, g) = std::polar(s, phi);
    u(g, e) = -std::polar(s, -phi);
    u(e, e) = c;
  }
  return u;
}

ComplexVector logical_vector(const AllowedBasis& basis, int k, double m) {
  if (k != 0 && k != 1) throw ValidationError("logical_vector: k must be 0 or 1");
  const SymmetryLabel torsion = k == 0 ? SymmetryLabel::E_minus : SymmetryLabel::E_plus;
  const int idx = require(basis, torsion, m, "logical_vector");
  ComplexVector v = ComplexVector::Zero(basis.size());
  v(idx) = k == 0 ? 1.0 : -1.0;
  return v;
}

Matrix2 logical_block(const ComplexMatrix& op, const AllowedBasis& basis, double m) {
  Matrix2 block;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      block(r, c) = logical_vector(basis, r, m).dot(op * logical_vector(basis, c, m));
    }
  }
  return block;
}

CombinedState logical_sector_state(const AllowedBasis& basis, int k) {
  ComplexMatrix mat = ComplexMatrix::Zero(basis.size(), basis.size());
  for (double m : kHalfSpins) {
    const ComplexVector v = logical_vector(basis, k, m);
    mat += 0.5 * v * v.adjoint();
  }
  return CombinedState(basis, mat);
}

spin::LogicalDensity logical_density(const CombinedState& state) {
  Matrix2 out = Matrix2::Zero();
  for (double m : kHalfSpins) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        out(r, c) += logical_vector(state.basis(), r, m)
                         .dot(state.matrix() * logical_vector(state.basis(), c, m));
      }
    }
  }
  const double weight = out.trace().real();
  if (weight < 1e-14) throw ZeroProbabilityError("logical_density: no weight on the logical pair");
  out /= weight;
  out = 0.5 * (out + out.adjoint()).eval();
  return spin::LogicalDensity(out);
}

CombinedState apply_collective_to_combined(const CombinedState& state,
                                           const Eigen::Vector3d& coeffs) {
  const spin::CpBasis& cp = spin::cp_basis();
  const Matrix8 u_cp = cp.to_cp(spin::collective_unitary(coeffs));
  const AllowedBasis& basis = state.basis();
  ComplexMatrix w = ComplexMatrix::Zero(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (basis[i].level_index != basis[j].level_index) continue;
      w(i, j) = u_cp(cp.index_of(basis[i].spin.symmetry, basis[i].spin.m),
                     cp.index_of(basis[j].spin.symmetry, basis[j].spin.m));
    }
  }
  return conjugate_by(state, w);
}

GateReport logical_gate(GateName name, const AllowedBasis& basis) {
  const ComplexMatrix x_full = compose_gate(GateName::X, basis);
  const ComplexMatrix z_full = compose_gate(GateName::Z, basis);
  const Matrix2 x = logical_block(x_full, basis, 0.5);
  const Matrix2 z = logical_block(z_full, basis, 0.5);
  const Matrix2 id = Matrix2::Identity();

  GateReport report;
  report.name = name == GateName::X ? "X" : "Z";
  report.combined = name == GateName::X ? x_full : z_full;
  report.logical = name == GateName::X ? x : z;
  const Matrix2 target = name == GateName::X ? pauli_x() : pauli_z();
  report.global_phase = best_phase(report.logical, target);

  auto& r = report.residuals;
  r["target"] = linalg::max_abs(report.logical - report.global_phase * target);
  r["m_mismatch"] = m_mismatch(report.combined, basis);
  r["leakage"] = leakage(report.combined, basis);
  r["x_squared"] = linalg::max_abs(x * x - id);
  r["z_squared"] = linalg::max_abs(z * z - id);
  r["anticommutator"] = linalg::max_abs(x * z + z * x);
  r["commutator_2iY"] =
      linalg::max_abs(linalg::commutator(x, z) - Complex(0.0, 2.0) * pauli_y());

  if (name == GateName::X) {
    // |0> sector -> |1> sector
    const CombinedState out = conjugate_by(logical_sector_state(basis, 0), x_full);
    r["population_swap"] =
        linalg::trace_distance(out.matrix(), logical_sector_state(basis, 1).matrix());
  } else {
    // |1> keeps its population and picks up -1 relative to |0>.
    const CombinedState out = conjugate_by(logical_sector_state(basis, 1), z_full);
    r["population_kept"] =
        linalg::trace_distance(out.matrix(), logical_sector_state(basis, 1).matrix());
    r["relative_phase"] = std::abs(z(1, 1) / z(0, 0) + 1.0);
  }
  report.accepted = all_within(r, kDerivedTol);
  return report;
}

GateReport logical_gate(GateName name) { return logical_gate(name, default_band0_basis()); }

GateReport logical_rotation(double alpha, double beta, const AllowedBasis& basis) {
  const ComplexMatrix full = u_rotation(Arm::minus, -kPi, kPi, basis) *
                             u_rotation(Arm::plus, alpha, -beta, basis) *
                             u_rotation(Arm::minus, kPi, kPi, basis);
  GateReport report;
  report.name = "R";
  report.combined = full;
  report.logical = logical_block(full, basis, 0.5);

  const CombinedState out = conjugate_by(logical_sector_state(basis, 0), full);
  Eigen::Vector2cd psi;
  psi << std::cos(0.5 * alpha), std::polar(std::sin(0.5 * alpha), beta);
  const Matrix2 target = psi * psi.adjoint();

  auto& r = report.residuals;
  r["target_trace_distance"] =
      linalg::trace_distance(logical_density(out).matrix(), target);
  r["m_mismatch"] = m_mismatch(full, basis);
  r["leakage"] = leakage(full, basis);
  report.accepted = all_within(r, kDerivedTol);
  return report;
}

GateReport logical_rotation(double alpha, double beta) {
  return logical_rotation(alpha, beta, default_band0_basis());
}

const AllowedBasis& default_band0_basis() {
  static const AllowedBasis basis = [] {
    const rotor::RotorSpectrum spectrum = rotor::solve_spectrum({0.6, 32.0, 30}, 3);
    return space_spin::build_allowed_basis(spectrum, 1);
  }();
  return basis;
}

}  // namespace methylq::drive
