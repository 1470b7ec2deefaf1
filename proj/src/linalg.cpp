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

#include "methylq/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace methylq {

std::string_view to_string(SymmetryLabel label) {
  switch (label) {
    case SymmetryLabel::A:
      return "A";
    case SymmetryLabel::E_plus:
      return "E+";
    case SymmetryLabel::E_minus:
      return "E-";
  }
  return "?";
}

SymmetryLabel symmetry_from_string(std::string_view text) {
  if (text == "A") return SymmetryLabel::A;
  if (text == "E+" || text == "E_plus") return SymmetryLabel::E_plus;
  if (text == "E-" || text == "E_minus") return SymmetryLabel::E_minus;
  throw ValidationError("unknown symmetry label '" + std::string(text) + "'");
}

namespace {
int residue(SymmetryLabel label) {
  switch (label) {
    case SymmetryLabel::A:
      return 0;
    case SymmetryLabel::E_plus:
      return 1;
    case SymmetryLabel::E_minus:
      return 2;
  }
  return 0;
}

SymmetryLabel from_residue(int r) {
  static constexpr SymmetryLabel table[3] = {SymmetryLabel::A, SymmetryLabel::E_plus,
                                             SymmetryLabel::E_minus};
  return table[((r % 3) + 3) % 3];
}
}  // namespace

SymmetryLabel multiply(SymmetryLabel lhs, SymmetryLabel rhs) {
  return from_residue(residue(lhs) + residue(rhs));
}

SymmetryLabel conjugate(SymmetryLabel label) { return from_residue(-residue(label)); }

namespace linalg {

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  ComplexMatrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  return lhs * rhs - rhs * lhs;
}

ComplexMatrix anticommutator(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  return lhs * rhs + rhs * lhs;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed in unitary_propagator");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  ComplexVector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::polar(1.0, -t * w(k));
  const ComplexMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

double trace_distance(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  const ComplexMatrix diff = lhs - rhs;
  const ComplexMatrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double hermiticity_defect(const ComplexMatrix& m) { return max_abs(m - m.adjoint()); }

double unitarity_defect(const ComplexMatrix& u) {
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols()));
}

double min_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace linalg
}  // namespace methylq
