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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "methylq/types.hpp"

// Hindered internal rotation in a three-fold cosine potential,
//   H = F l^2 + (V0/2)(1 - cos 3φ),
// solved in the plane-wave basis e^{ilφ}/sqrt(2π), l in [-l_max, l_max].
// Energies are in meV throughout.
namespace methylq::rotor {

struct RotorParams {
  double f_mev = 0.6;
  double v0_mev = 0.0;
  int l_max = 30;

  int dimension() const { return 2 * l_max + 1; }
  /// Throws ValidationError unless f > 0, v0 >= 0, l_max >= 3.
  void validate() const;
};

inline constexpr int kDefaultLMax = 30;
inline constexpr int kUnassignedBand = -1;

/// Residue class of l mod 3 carrying each symmetry: A -> 0, E+ -> +1, E- -> -1.
int residue_of(SymmetryLabel label);
SymmetryLabel symmetry_of_residue(int l);

struct TorsionalLevel {
  double energy_mev = 0.0;
  SymmetryLabel symmetry = SymmetryLabel::A;
  int band = kUnassignedBand;
  /// c_l for l = -l_max .. l_max (index l + l_max).
  ComplexVector fourier;

  /// Squared norm on the residue classes {0, +1, -1}.
  std::array<double, 3> residue_weights() const;
};

struct RotorSpectrum {
  RotorParams params;
  std::vector<TorsionalLevel> levels;
  /// ΔE_n = E(E, n) - E(A, n) in meV, for each band fully present in levels.
  std::vector<double> splittings_mev;

  int complete_bands() const { return static_cast<int>(splittings_mev.size()); }
  /// Index into levels; throws ValidationError if absent.
  int level_index(int band, SymmetryLabel symmetry) const;
};

/// Hermitian (2 l_max + 1)-dim matrix: diagonal F l^2 + V0/2, -V0/4 between l and l±3.
ComplexMatrix torsional_hamiltonian(const RotorParams& params);

/// Lowest n_levels eigenpairs. Each residue block is diagonalized on its own, so
/// E+ and E- eigenvectors are never mixed. Throws TruncationError when the top
/// requested level moves by more than 1e-8 (relative) with l_max + 6.
RotorSpectrum solve_spectrum(const RotorParams& params, int n_levels);

/// Smallest l_max >= max(30, 3*bands + 6), stepping by 6, that passes the
/// truncation check for n_levels.
RotorParams converged_params(double f_mev, double v0_mev, int n_levels);

/// Residue class holding at least 1 - 1e-10 of the squared norm. The vector
/// length must be odd (2 l_max + 1). Throws AmbiguityError otherwise.
SymmetryLabel classify_symmetry(const ComplexVector& fourier);

struct LcaoFit {
  int band = 0;
  double alpha_mev = 0.0;
  double beta_mev = 0.0;

  /// α + 2β cos(2πλ/3)
  double energy(int lambda) const;
};

/// α = (E_A + 2 E_E)/3, β = (E_A - E_E)/3.
LcaoFit lcao_fit(const RotorSpectrum& spectrum, int band);

struct HarmonicEstimate {
  double energy_mev = 0.0;
  /// True when V0/F < 100, outside the harmonic regime.
  bool regime_warning = false;
};

/// 3 sqrt(F V0) (n + 1/2)
HarmonicEstimate harmonic_limit_energy(const RotorParams& params, int band);

inline constexpr double kDefaultSweepScale = 100.0;

/// V0 = F * scale * q / (1 - q)
double v0_from_q(double f_mev, double q, double scale = kDefaultSweepScale);

struct SweepRow {
  double q = 0.0;
  double v0_over_f = 0.0;
  int level = 0;
  int band = kUnassignedBand;
  SymmetryLabel symmetry = SymmetryLabel::A;
  double energy_mev = 0.0;
  std::optional<double> delta_e_n_ghz;
};

struct SweepFailure {
  double q = 0.0;
  std::string message;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<SweepFailure> failures;
};

/// Grid points are solved concurrently; rows come back ordered by q, then level.
/// l_max = 0 picks a converged truncation per point.
SweepTable sweep_barrier(double f_mev, const std::vector<double>& q_grid, int n_levels,
                         double scale = kDefaultSweepScale, int l_max = 0);

/// Eigenvalues of the same Hamiltonian on a uniform periodic grid with a
/// second-order central-difference Laplacian. With richardson set, the values
/// at n_points and 2 n_points are combined as (4 E(h/2) - E(h)) / 3.
std::vector<double> finite_difference_oracle(const RotorParams& params, int n_points, int n_levels,
                                             bool richardson = true);

}  // namespace methylq::rotor
