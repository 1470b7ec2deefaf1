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

#include "methylq/types.hpp"

namespace methylq::linalg {

ComplexMatrix kron(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

ComplexMatrix commutator(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix anticommutator(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// Largest absolute entry.
double max_abs(const ComplexMatrix& m);

/// exp(-i * t * h) for Hermitian h, via the spectral decomposition.
ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t = 1.0);

/// (1/2) * sum of singular values of (lhs - rhs); both Hermitian.
double trace_distance(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

double hermiticity_defect(const ComplexMatrix& m);
double unitarity_defect(const ComplexMatrix& u);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const ComplexMatrix& m);

}  // namespace methylq::linalg
