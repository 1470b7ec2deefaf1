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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace methylq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix8 = Eigen::Matrix<Complex, 8, 8>;
using Vector8 = Eigen::Matrix<Complex, 8, 1>;
using Matrix2 = Eigen::Matrix2cd;
using Spinor2 = Eigen::Vector2cd;

inline constexpr double kPi = std::numbers::pi;
inline const Complex kEpsilon = std::polar(1.0, 2.0 * kPi / 3.0);

// Structural identities (unitarity, commutators, exact zeros).
inline constexpr double kStructuralTol = 1e-12;
// Derived numerical equalities (trace distances after evolution).
inline constexpr double kDerivedTol = 1e-10;

namespace units {
inline constexpr double kGhzPerMev = 241.798935;
inline constexpr double kBoltzmannMevPerKelvin = 0.08617333;
inline constexpr double kHbarMevSeconds = 6.582119569e-13;

inline constexpr double mev_to_ghz(double mev) { return mev * kGhzPerMev; }
inline constexpr double ghz_to_mev(double ghz) { return ghz / kGhzPerMev; }
}  // namespace units

/// Irreducible representation of the cyclic group C3.
enum class SymmetryLabel { A, E_plus, E_minus };

std::string_view to_string(SymmetryLabel label);
SymmetryLabel symmetry_from_string(std::string_view text);

/// Product in C3: A is the identity, E+ x E- = A, E+ x E+ = E-.
SymmetryLabel multiply(SymmetryLabel lhs, SymmetryLabel rhs);
SymmetryLabel conjugate(SymmetryLabel label);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid inputs: out-of-range parameters, malformed files. CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure of an otherwise valid request. CLI exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class AmbiguityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroProbabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace methylq
