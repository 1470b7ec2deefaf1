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


#include "verify.hpp"

#include <cmath>
#include <iomanip>
#include <random>

#include "methylq/drive.hpp"
#include "methylq/linalg.hpp"
#include "methylq/rotor.hpp"
#include "methylq/space_spin.hpp"
#include "methylq/spin_symmetry.hpp"

namespace methylq::cli {

namespace {

using spin::Direction;

class Recorder {
 public:
  void add(std::string name, double residual, double tol) {
    checks_.push_back({std::move(name), residual, tol, residual <= tol});
  }
  std::vector<CheckResult> take() { return std::move(checks_); }

 private:
  std::vector<CheckResult> checks_;
};

Eigen::Vector3d random_coeffs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  return {angle(rng), angle(rng), angle(rng)};
}

Spinor2 random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Spinor2 v(Complex(g(rng), g(rng)), Complex(g(rng), g(rng)));
  return v.normalized();
}

void spin_checks(Recorder& rec, std::mt19937_64& rng, const VerifyOptions& options) {
  for (Direction d : {Direction::plus, Direction::minus}) {
    Matrix8 direct = spin::cyclic_permutation(d);
    if (options.perturb > 0.0 && d == Direction::plus) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) direct(r, c) += options.perturb * u(rng);
      }
    }
    rec.add(d == Direction::plus ? "permutation_pauli_identity_plus"
                                 : "permutation_pauli_identity_minus",
            linalg::max_abs(spin::permutation_from_pauli(d) - direct), 1e-14);
  }

  const spin::CpBasis& cp = spin::cp_basis();
  rec.add("cp_basis_unitary", linalg::unitarity_defect(cp.u()), kStructuralTol);

  Matrix8 expected = Matrix8::Zero();
  for (int k = 0; k < 8; ++k) {
    const SymmetryLabel s = cp.labels()[k].symmetry;
    expected(k, k) = s == SymmetryLabel::A ? Complex(1.0)
                     : s == SymmetryLabel::E_plus ? kEpsilon
                                                  : std::conj(kEpsilon);
  }
  rec.add("cp_permutation_eigenvalues",
          linalg::max_abs(cp.to_cp(spin::cyclic_permutation(Direction::plus)) - expected),
          kStructuralTol);

  Matrix8 m_diag = Matrix8::Zero();
  for (int k = 0; k < 8; ++k) m_diag(k, k) = cp.labels()[k].m;
  rec.add("cp_sz_labels", linalg::max_abs(cp.to_cp(spin::collective_spin(spin::Axis::z)) - m_diag),
          kStructuralTol);

  double off_block = 0.0;
  double e_mismatch = 0.0;
  for (spin::Axis axis : {spin::Axis::x, spin::Axis::y, spin::Axis::z}) {
    const spin::BlockReport report = spin::block_report(spin::collective_spin(axis));
    off_block = std::max(off_block, report.off_block_max);
    e_mismatch = std::max(e_mismatch, report.e_block_mismatch);
  }
  rec.add("collective_off_block", off_block, 1e-14);
  rec.add("collective_e_blocks_equal", e_mismatch, 1e-14);

  const Matrix8 h = spin::spin_hamiltonian(1.3, 0.2);
  rec.add("spin_hamiltonian_commutes",
          linalg::max_abs(linalg::commutator(h, spin::cyclic_permutation(Direction::plus))),
          kStructuralTol * 10.0);

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double pauli_form = 0.0;
  double lls_noise = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    const double gamma = unit(rng);
    const spin::DensityMatrix8 lls = spin::lls_state(gamma);
    pauli_form = std::max(pauli_form, linalg::max_abs(lls.matrix() - spin::lls_pauli_form(gamma)));
    const auto rotated = spin::apply_collective_unitary(lls, random_coeffs(rng));
    lls_noise = std::max(lls_noise, linalg::trace_distance(rotated.matrix(), lls.matrix()));
  }
  rec.add("lls_pauli_form", pauli_form, kStructuralTol);
  rec.add("lls_collective_invariance", lls_noise, kDerivedTol);

  double logical_noise = 0.0;
  double overlap_rule = 0.0;
  for (int k = 0; k < options.samples; ++k) {
    const double t = std::uniform_real_distribution<double>(0.0, kPi / 2)(rng);
    const Complex a = std::polar(std::cos(t), unit(rng) * kPi);
    const Complex b = std::polar(std::sin(t), unit(rng) * kPi);
    const Spinor2 phi1 = random_spinor(rng);
    const Spinor2 phi2 = random_spinor(rng);
    const spin::LogicalDensity reference = spin::extract_logical(a, b, phi1, phi2);
    overlap_rule = std::max(overlap_rule, std::abs(std::abs(reference.matrix()(0, 1)) -
                                                   std::abs(a) * std::abs(b) *
                                                       std::abs(phi1.dot(phi2))));
    const auto rho = spin::DensityMatrix8::from_ket(spin::logical_ket(a, b, phi1, phi2));
    const auto rotated = spin::apply_collective_unitary(rho, random_coeffs(rng));
    logical_noise =
        std::max(logical_noise, linalg::trace_distance(spin::logical_density(rotated.matrix()).matrix(),
                                                       reference.matrix()));
  }
  rec.add("logical_collective_invariance", logical_noise, kDerivedTol);
  rec.add("logical_offdiagonal_overlap", overlap_rule, kStructuralTol);
}

void drive_checks(Recorder& rec, std::mt19937_64& rng, const VerifyOptions& options) {
  const space_spin::AllowedBasis& basis = drive::default_band0_basis();
  if (!options.gates_only) {
    const rotor::RotorSpectrum spectrum = rotor::solve_spectrum({0.6, 32.0, 30}, 9);
    double forbidden = 0.0;
    for (drive::Handedness hand : {drive::Handedness::right, drive::Handedness::left}) {
      const Eigen::MatrixXd table = drive::transition_table(spectrum, hand);
      const int shift = hand == drive::Handedness::right ? 1 : -1;
      for (Eigen::Index i = 0; i < table.rows(); ++i) {
        for (Eigen::Index j = 0; j < table.cols(); ++j) {
          const int from = rotor::residue_of(spectrum.levels[j].symmetry);
          const int to = rotor::residue_of(spectrum.levels[i].symmetry);
          if (((to - from - shift) % 3 + 3) % 3 != 0) forbidden = std::max(forbidden, table(i, j));
        }
      }
    }
    rec.add("selection_rule_zeros", forbidden, 1e-15);

    const auto rho0 = space_spin::ground_state_rho0(basis);
    drive::PulseSpec pulse;
    pulse.theta = kPi;
    const auto after = drive::evolve_pulse(rho0, pulse);
    Matrix8 expected_cp = Matrix8::Zero();
    expected_cp(0, 0) = expected_cp(3, 3) = expected_cp(4, 4) = expected_cp(5, 5) = 0.25;
    const Matrix8 expected = spin::cp_basis().from_cp(expected_cp);
    rec.add("pi_pulse_conversion",
            linalg::trace_distance(space_spin::spin_reduced(after).matrix(), expected), kDerivedTol);
  }

  for (drive::GateName name : {drive::GateName::X, drive::GateName::Z}) {
    const drive::GateReport report = drive::logical_gate(name, basis);
    double worst = 0.0;
    for (const auto& [key, value] : report.residuals) worst = std::max(worst, value);
    rec.add("gate_" + report.name + "_algebra", worst, kDerivedTol);
  }

  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double rotation = 0.0;
  const int n_rot = options.gates_only ? std::max(options.samples, 1) : 50;
  for (int k = 0; k < n_rot; ++k) {
    const drive::GateReport report = drive::logical_rotation(angle(rng), angle(rng), basis);
    for (const auto& [key, value] : report.residuals) rotation = std::max(rotation, value);
  }
  rec.add("rotation_targets", rotation, kDerivedTol);
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  Recorder rec;
  if (!options.gates_only) spin_checks(rec, rng, options);
  drive_checks(rec, rng, options);
  return rec.take();
}

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  for (const auto& check : checks) {
    out << (check.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << check.name
        << " residual=" << std::scientific << std::setprecision(3) << check.residual
        << " tol=" << check.tolerance << std::defaultfloat << '\n';
  }
}

}  // namespace methylq::cli
