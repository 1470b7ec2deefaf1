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


#include "methylq/rotor.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

namespace methylq::rotor {

namespace {

constexpr double kClassDominance = 1e-10;
constexpr double kTruncationRelTol = 1e-8;
constexpr int kTruncationStep = 6;
constexpr double kSplittingFloorUlps = 64.0;
constexpr int kMaxAutoLMax = 1200;

int mod3(int l) { return ((l % 3) + 3) % 3; }

struct Eigenpair {
  double energy;
  int residue;  // 0, 1, 2 (2 means -1)
  ComplexVector fourier;
};

int order_of(int residue) { return residue; }  // A, E+, E- within a tie

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// All eigenpairs of the truncated Hamiltonian, ascending, each residue block
// diagonalized separately.
std::vector<Eigenpair> solve_blocks(const RotorParams& params) {
  const int l_max = params.l_max;
  std::vector<Eigenpair> pairs;
  pairs.reserve(params.dimension());
  for (int r = 0; r < 3; ++r) {
    std::vector<int> ls;
    for (int l = -l_max; l <= l_max; ++l) {
      if (mod3(l) == r) ls.push_back(l);
    }
    const auto n = static_cast<Eigen::Index>(ls.size());
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(std::max<Eigen::Index>(n - 1, 0),
                                                    -0.25 * params.v0_mev);
    for (Eigen::Index k = 0; k < n; ++k) {
      diag(k) = params.f_mev * ls[k] * ls[k] + 0.5 * params.v0_mev;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      // The implicit QR sweep occasionally stalls; the dense path reduces the matrix itself.
      Eigen::MatrixXd dense = diag.asDiagonal();
      for (Eigen::Index k = 0; k + 1 < n; ++k) dense(k, k + 1) = dense(k + 1, k) = sub(k);
      solver.compute(dense);
    }
    if (solver.info() != Eigen::Success) {
      throw NumericalError("torsional eigensolver failed");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::VectorXd v = solver.eigenvectors().col(k);
      Eigen::Index peak = 0;
      v.cwiseAbs().maxCoeff(&peak);
      if (v(peak) < 0) v = -v;
      ComplexVector full = ComplexVector::Zero(params.dimension());
      for (Eigen::Index j = 0; j < n; ++j) full(ls[j] + l_max) = v(j);
      pairs.push_back({solver.eigenvalues()(k), r, std::move(full)});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Eigenpair& a, const Eigenpair& b) { return a.energy < b.energy; });
  // Within numerically degenerate runs, order A, E+, E-.
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      if (nearly_equal(pairs[j - 1].energy, pairs[j].energy) &&
          order_of(pairs[j - 1].residue) > order_of(pairs[j].residue)) {
        std::swap(pairs[j - 1], pairs[j]);
      } else {
        break;
      }
    }
  }
  return pairs;
}

// Consecutive triples {A, E+, E-} whose spread stays below half the gap to the
// next level form bands; the first failure ends band assignment.
std::vector<int> assign_bands(const std::vector<Eigenpair>& pairs) {
  std::vector<int> band(pairs.size(), kUnassignedBand);
  for (std::size_t start = 0; start + 3 <= pairs.size(); start += 3) {
    std::array<bool, 3> seen = {false, false, false};
    for (std::size_t k = start; k < start + 3; ++k) seen[pairs[k].residue] = true;
    if (!(seen[0] && seen[1] && seen[2])) break;
    const double lo = pairs[start].energy;
    const double hi = pairs[start + 2].energy;
    const double gap = start + 3 < pairs.size() ? pairs[start + 3].energy - hi
                                                : std::numeric_limits<double>::infinity();
    if (!(hi - lo < 0.5 * gap)) break;
    for (std::size_t k = start; k < start + 3; ++k) band[k] = static_cast<int>(start / 3);
  }
  return band;
}

// E-mean minus A energy of pairs[k..k+2], if that triple holds one A and two E levels.
std::optional<double> triple_splitting(const std::vector<Eigenpair>& pairs, int k) {
  double e_a = 0.0;
  double e_e = 0.0;
  int n_a = 0;
  for (int i = k; i < k + 3; ++i) {
    if (pairs[i].residue == 0) {
      e_a = pairs[i].energy;
      ++n_a;
    } else {
      e_e += 0.5 * pairs[i].energy;
    }
  }
  if (n_a != 1) return std::nullopt;
  return e_e - e_a;
}

double relative_shift(double a, double b, double f) {
  return std::abs(a - b) / std::max(std::abs(b), f);
}

}  // namespace

void RotorParams::validate() const {
  if (!(std::isfinite(f_mev) && f_mev > 0.0)) {
    throw ValidationError("rotor: f_mev must be positive");
  }
  if (!(std::isfinite(v0_mev) && v0_mev >= 0.0)) {
    throw ValidationError("rotor: v0_mev must be non-negative");
  }
  if (l_max < 3) throw ValidationError("rotor: l_max must be at least 3");
}

int residue_of(SymmetryLabel label) {
  switch (label) {
    case SymmetryLabel::A:
      return 0;
    case SymmetryLabel::E_plus:
      return 1;
    case SymmetryLabel::E_minus:
      return -1;
  }
  return 0;
}

SymmetryLabel symmetry_of_residue(int l) {
  switch (mod3(l)) {
    case 0:
      return SymmetryLabel::A;
    case 1:
      return SymmetryLabel::E_plus;
    default:
      return SymmetryLabel::E_minus;
  }
}

std::array<double, 3> TorsionalLevel::residue_weights() const {
  std::array<double, 3> w = {0.0, 0.0, 0.0};
  const int l_max = static_cast<int>(fourier.size() / 2);
  for (Eigen::Index i = 0; i < fourier.size(); ++i) {
    w[mod3(static_cast<int>(i) - l_max)] += std::norm(fourier(i));
  }
  return {w[0], w[1], w[2]};
}

int RotorSpectrum::level_index(int band, SymmetryLabel symmetry) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].band == band && levels[i].symmetry == symmetry) return static_cast<int>(i);
  }
  throw ValidationError("spectrum has no level (band " + std::to_string(band) + ", " +
                        std::string(to_string(symmetry)) + ")");
}

ComplexMatrix torsional_hamiltonian(const RotorParams& params) {
  params.validate();
  const int n = params.dimension();
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int l = i - params.l_max;
    h(i, i) = params.f_mev * l * l + 0.5 * params.v0_mev;
    if (i + 3 < n) h(i, i + 3) = h(i + 3, i) = -0.25 * params.v0_mev;
  }
  return h;
}

SymmetryLabel classify_symmetry(const ComplexVector& fourier) {
  if (fourier.size() % 2 != 1) {
    throw ValidationError("classify_symmetry: expected 2 l_max + 1 coefficients");
  }
  TorsionalLevel probe;
  probe.fourier = fourier;
  const auto w = probe.residue_weights();
  const double total = w[0] + w[1] + w[2];
  if (!(total > 0.0)) throw ValidationError("classify_symmetry: zero vector");
  for (int r = 0; r < 3; ++r) {
    if (w[r] >= (1.0 - kClassDominance) * total) return symmetry_of_residue(r);
  }
  throw AmbiguityError("classify_symmetry: no residue class dominates (weights " +
                       std::to_string(w[0] / total) + ", " + std::to_string(w[1] / total) +
                       ", " + std::to_string(w[2] / total) + ")");
}

RotorSpectrum solve_spectrum(const RotorParams& params, int n_levels) {
  params.validate();
  if (n_levels < 1) throw ValidationError("solve_spectrum: n_levels must be positive");
  const int bands = (n_levels + 2) / 3;
  if (n_levels > 2 * params.l_max - 5 || params.l_max < 3 * bands + 6) {
    throw ValidationError("solve_spectrum: l_max = " + std::to_string(params.l_max) +
                          " is too small for " + std::to_string(n_levels) + " levels");
  }

  const std::vector<Eigenpair> pairs = solve_blocks(params);

  RotorParams wider = params;
  wider.l_max += kTruncationStep;
  const std::vector<Eigenpair> check = solve_blocks(wider);
  for (int i = 0; i < n_levels; ++i) {
    const double shift = relative_shift(pairs[i].energy, check[i].energy, params.f_mev);
    if (shift > kTruncationRelTol) {
      throw TruncationError("solve_spectrum: level " + std::to_string(i) + " moves by " +
                            std::to_string(shift) + " (relative) when l_max grows from " +
                            std::to_string(params.l_max) + "; increase l_max");
    }
  }
  // Splittings can sit far below the energy tolerance, so they get their own test, floored at
  // the eigensolver's rounding level.
  const double floor = kSplittingFloorUlps * std::numeric_limits<double>::epsilon() *
                       (params.f_mev * wider.l_max * wider.l_max + params.v0_mev);
  for (int k = 0; k + 3 <= n_levels; k += 3) {
    const auto a = triple_splitting(pairs, k);
    const auto b = triple_splitting(check, k);
    if (!a || !b) break;
    if (std::abs(*a - *b) > kTruncationRelTol * std::abs(*a) + floor) {
      throw TruncationError("solve_spectrum: splitting of band " + std::to_string(k / 3) +
                            " moves by " + std::to_string(std::abs(*a - *b)) +
                            " meV when l_max grows from " + std::to_string(params.l_max) +
                            "; increase l_max");
    }
  }

  const std::vector<int> band = assign_bands(pairs);
  RotorSpectrum spectrum;
  spectrum.params = params;
  for (int i = 0; i < n_levels; ++i) {
    TorsionalLevel level;
    level.energy_mev = pairs[i].energy;
    level.fourier = pairs[i].fourier;
    level.symmetry = classify_symmetry(level.fourier);
    level.band = band[i];
    spectrum.levels.push_back(std::move(level));
  }
  for (int n = 0; 3 * n + 3 <= n_levels && band[3 * n] == n; ++n) {
    double e_a = 0.0;
    double e_e = 0.0;
    for (int k = 3 * n; k < 3 * n + 3; ++k) {
      if (spectrum.levels[k].symmetry == SymmetryLabel::A) {
        e_a = spectrum.levels[k].energy_mev;
      } else {
        e_e += 0.5 * spectrum.levels[k].energy_mev;
      }
    }
    spectrum.splittings_mev.push_back(e_e - e_a);
  }
  return spectrum;
}

RotorParams converged_params(double f_mev, double v0_mev, int n_levels) {
  const int bands = (n_levels + 2) / 3;
  RotorParams params{f_mev, v0_mev, std::max({kDefaultLMax, 3 * bands + 6, (n_levels + 6) / 2})};
  params.validate();
  for (; params.l_max <= kMaxAutoLMax; params.l_max += kTruncationStep) {
    try {
      solve_spectrum(params, n_levels);
      return params;
    } catch (const TruncationError&) {
    }
  }
  throw TruncationError("converged_params: no l_max up to " + std::to_string(kMaxAutoLMax) +
                        " converges");
}

double LcaoFit::energy(int lambda) const {
  return alpha_mev + 2.0 * beta_mev * std::cos(2.0 * kPi * lambda / 3.0);
}

LcaoFit lcao_fit(const RotorSpectrum& spectrum, int band) {
  if (band < 0 || band >= spectrum.complete_bands()) {
    throw ValidationError("lcao_fit: band " + std::to_string(band) + " is not fully present");
  }
  const double e_a = spectrum.levels[spectrum.level_index(band, SymmetryLabel::A)].energy_mev;
  const double e_e =
      0.5 * (spectrum.levels[spectrum.level_index(band, SymmetryLabel::E_plus)].energy_mev +
             spectrum.levels[spectrum.level_index(band, SymmetryLabel::E_minus)].energy_mev);
  return {band, (e_a + 2.0 * e_e) / 3.0, (e_a - e_e) / 3.0};
}

HarmonicEstimate harmonic_limit_energy(const RotorParams& params, int band) {
  params.validate();
  if (band < 0) throw ValidationError("harmonic_limit_energy: band must be non-negative");
  HarmonicEstimate out;
  out.energy_mev = 3.0 * std::sqrt(params.f_mev * params.v0_mev) * (band + 0.5);
  out.regime_warning = params.v0_mev / params.f_mev < 100.0;
  return out;
}

double v0_from_q(double f_mev, double q, double scale) {
  if (!(q >= 0.0 && q < 1.0)) throw ValidationError("q must lie in [0, 1)");
  return f_mev * scale * q / (1.0 - q);
}

SweepTable sweep_barrier(double f_mev, const std::vector<double>& q_grid, int n_levels,
                         double scale, int l_max) {
  struct PointResult {
    std::vector<SweepRow> rows;
    std::optional<std::string> error;
  };
  auto solve_point = [=](double q) -> PointResult {
    PointResult result;
    try {
      const double v0 = v0_from_q(f_mev, q, scale);
      const RotorParams params =
          l_max > 0 ? RotorParams{f_mev, v0, l_max} : converged_params(f_mev, v0, n_levels);
      const RotorSpectrum spectrum = solve_spectrum(params, n_levels);
      for (std::size_t i = 0; i < spectrum.levels.size(); ++i) {
        const TorsionalLevel& level = spectrum.levels[i];
        SweepRow row;
        row.q = q;
        row.v0_over_f = v0 / f_mev;
        row.level = static_cast<int>(i);
        row.band = level.band;
        row.symmetry = level.symmetry;
        row.energy_mev = level.energy_mev;
        if (level.band >= 0 && level.band < spectrum.complete_bands()) {
          row.delta_e_n_ghz = units::mev_to_ghz(spectrum.splittings_mev[level.band]);
        }
        result.rows.push_back(row);
      }
    } catch (const Error& e) {
      result.error = e.what();
    }
    return result;
  };

  // Points are solved in batches of at most hardware_concurrency threads; results are
  // assembled in grid order so the output does not depend on scheduling.
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  std::vector<PointResult> results(q_grid.size());
  for (std::size_t start = 0; start < q_grid.size(); start += width) {
    const std::size_t stop = std::min(q_grid.size(), start + width);
    std::vector<std::future<PointResult>> futures;
    for (std::size_t k = start; k < stop; ++k) {
      futures.push_back(std::async(std::launch::async, solve_point, q_grid[k]));
    }
    for (std::size_t k = start; k < stop; ++k) results[k] = futures[k - start].get();
  }

  SweepTable table;
  for (std::size_t k = 0; k < results.size(); ++k) {
    PointResult& point = results[k];
    if (point.error) {
      table.failures.push_back({q_grid[k], *point.error});
      continue;
    }
    table.rows.insert(table.rows.end(), point.rows.begin(), point.rows.end());
  }
  return table;
}

namespace {

// Number of eigenvalues below x of the symmetric tridiagonal (d, e), by Sturm sequence.
int count_below(const Eigen::VectorXd& d, const Eigen::VectorXd& e, double x) {
  int count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double coupling = i > 0 ? e(i - 1) * e(i - 1) : 0.0;
    q = d(i) - x - (i > 0 ? coupling / q : 0.0);
    if (q == 0.0) q = -std::numeric_limits<double>::epsilon() * (std::abs(d(i)) + std::abs(x) + 1.0);
    if (q < 0.0) ++count;
  }
  return count;
}

// Lowest k eigenvalues of a symmetric tridiagonal matrix by bisection.
std::vector<double> lowest_tridiagonal_eigenvalues(const Eigen::VectorXd& d, const Eigen::VectorXd& e,
                                                   int k) {
  const Eigen::Index n = d.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(e(i - 1)) : 0.0) + (i + 1 < n ? std::abs(e(i)) : 0.0);
    lo = std::min(lo, d(i) - radius);
    hi = std::max(hi, d(i) + radius);
  }
  std::vector<double> values;
  const int wanted = static_cast<int>(std::min<Eigen::Index>(k, n));
  for (int i = 0; i < wanted; ++i) {
    double a = i > 0 ? values.back() : lo;
    double b = hi;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (count_below(d, e, mid) > i) {
        b = mid;
      } else {
        a = mid;
      }
    }
    values.push_back(0.5 * (a + b));
  }
  return values;
}

}  // namespace

std::vector<double> finite_difference_oracle(const RotorParams& params, int n_points, int n_levels,
                                             bool richardson) {
  params.validate();
  if (n_points < 512 || n_points % 2 != 0) {
    throw ValidationError("finite_difference_oracle: n_points must be even and >= 512");
  }
  if (n_levels < 1 || n_levels > n_points / 4) {
    throw ValidationError("finite_difference_oracle: n_levels out of range");
  }

  // The potential is even in φ, so the periodic grid splits into even and odd
  // parity sectors, each a symmetric tridiagonal matrix.
  auto grid_eigenvalues = [&](int n) {
    const double h = 2.0 * kPi / n;
    const double off = -params.f_mev / (h * h);
    const int half = n / 2;
    auto diag_at = [&](int j) {
      return 2.0 * params.f_mev / (h * h) + 0.5 * params.v0_mev * (1.0 - std::cos(3.0 * j * h));
    };

    Eigen::VectorXd even_diag(half + 1);
    Eigen::VectorXd even_off = Eigen::VectorXd::Constant(half, off);
    for (int j = 0; j <= half; ++j) even_diag(j) = diag_at(j);
    even_off(0) *= std::sqrt(2.0);
    even_off(half - 1) *= std::sqrt(2.0);

    Eigen::VectorXd odd_diag(half - 1);
    Eigen::VectorXd odd_off = Eigen::VectorXd::Constant(half - 2, off);
    for (int j = 1; j < half; ++j) odd_diag(j - 1) = diag_at(j);

    std::vector<double> values = lowest_tridiagonal_eigenvalues(even_diag, even_off, n_levels);
    const std::vector<double> odd = lowest_tridiagonal_eigenvalues(odd_diag, odd_off, n_levels);
    values.insert(values.end(), odd.begin(), odd.end());
    std::sort(values.begin(), values.end());
    values.resize(n_levels);
    return values;
  };

  std::vector<double> coarse = grid_eigenvalues(n_points);
  if (!richardson) return coarse;
  const std::vector<double> fine = grid_eigenvalues(2 * n_points);
  for (int k = 0; k < n_levels; ++k) coarse[k] = (4.0 * fine[k] - coarse[k]) / 3.0;
  return coarse;
}

}  // namespace methylq::rotor
