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


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "methylq/drive.hpp"
#include "methylq/linalg.hpp"
#include "methylq/rotor.hpp"
#include "methylq/space_spin.hpp"
#include "methylq/spin_symmetry.hpp"

namespace py = pybind11;
using namespace methylq;

namespace {

spin::Direction direction_of(const std::string& name) {
  if (name == "plus" || name == "+") return spin::Direction::plus;
  if (name == "minus" || name == "-") return spin::Direction::minus;
  throw ValidationError("direction must be 'plus' or 'minus'");
}

drive::Handedness handedness_of(const std::string& name) {
  if (name == "right") return drive::Handedness::right;
  if (name == "left") return drive::Handedness::left;
  throw ValidationError("handedness must be 'right' or 'left'");
}

py::dict gate_dict(const drive::GateReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["accepted"] = r.accepted;
  d["logical"] = r.logical;
  d["global_phase"] = r.global_phase;
  d["residuals"] = r.residuals;
  return d;
}

rotor::RotorSpectrum solve(double f_mev, double v0_mev, int n_levels, int l_max) {
  const rotor::RotorParams params =
      l_max > 0 ? rotor::RotorParams{f_mev, v0_mev, l_max}
                : rotor::converged_params(f_mev, v0_mev, n_levels);
  return rotor::solve_spectrum(params, n_levels);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Methyl-group logical qubit simulator";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", numerical.ptr());
  py::register_exception<AmbiguityError>(m, "AmbiguityError", numerical.ptr());
  py::register_exception<ZeroProbabilityError>(m, "ZeroProbabilityError", numerical.ptr());

  m.attr("GHZ_PER_MEV") = units::kGhzPerMev;
  m.attr("BOLTZMANN_MEV_PER_K") = units::kBoltzmannMevPerKelvin;

  // Spin algebra
  m.def("cyclic_permutation", [](const std::string& d) { return spin::cyclic_permutation(direction_of(d)); },
        py::arg("direction") = "plus");
  m.def("permutation_from_pauli",
        [](const std::string& d) { return spin::permutation_from_pauli(direction_of(d)); },
        py::arg("direction") = "plus");
  m.def("cp_basis", [] { return spin::cp_basis().u(); },
        "Columns are (A,3/2) (A,1/2) (A,-1/2) (A,-3/2) (E+,1/2) (E+,-1/2) (E-,1/2) (E-,-1/2).");
  m.def("collective_spin", [](const std::string& axis) {
    if (axis == "x") return spin::collective_spin(spin::Axis::x);
    if (axis == "y") return spin::collective_spin(spin::Axis::y);
    if (axis == "z") return spin::collective_spin(spin::Axis::z);
    throw ValidationError("axis must be x, y or z");
  });
  m.def("lls_state", [](double gamma) { return spin::lls_state(gamma).matrix(); }, py::arg("gamma"));
  m.def("collective_unitary", &spin::collective_unitary, py::arg("coeffs"));
  m.def("logical_density", [](const Matrix8& rho) { return spin::logical_density(rho).matrix(); },
        py::arg("rho"));
  m.def("extract_logical",
        [](Complex a, Complex b, const Spinor2& p1, const Spinor2& p2) {
          return spin::extract_logical(a, b, p1, p2).matrix();
        },
        py::arg("a"), py::arg("b"), py::arg("phi1"), py::arg("phi2"));

  // Rotor
  m.def("solve_spectrum",
        [](double f_mev, double v0_mev, int n_levels, int l_max) {
          const rotor::RotorSpectrum s = solve(f_mev, v0_mev, n_levels, l_max);
          py::list levels;
          for (const auto& level : s.levels) {
            py::dict d;
            d["energy_mev"] = level.energy_mev;
            d["symmetry"] = std::string(to_string(level.symmetry));
            d["band"] = level.band;
            levels.append(d);
          }
          std::vector<double> ghz;
          for (double x : s.splittings_mev) ghz.push_back(units::mev_to_ghz(x));
          py::dict out;
          out["l_max"] = s.params.l_max;
          out["levels"] = levels;
          out["splittings_ghz"] = ghz;
          return out;
        },
        py::arg("f_mev"), py::arg("v0_mev"), py::arg("n_levels") = 12, py::arg("l_max") = 0,
        "Torsional levels; l_max = 0 picks a converged cutoff.");
  m.def("finite_difference_oracle",
        [](double f_mev, double v0_mev, int n_levels, int n_points, int l_max) {
          return rotor::finite_difference_oracle({f_mev, v0_mev, l_max}, n_points, n_levels);
        },
        py::arg("f_mev"), py::arg("v0_mev"), py::arg("n_levels") = 12, py::arg("n_points") = 4096,
        py::arg("l_max") = 30);
  m.def("v0_from_q", &rotor::v0_from_q, py::arg("f_mev"), py::arg("q"),
        py::arg("scale") = rotor::kDefaultSweepScale);
  m.def("transition_table",
        [](double f_mev, double v0_mev, int n_levels, const std::string& hand) {
          return drive::transition_table(solve(f_mev, v0_mev, n_levels, 0), handedness_of(hand));
        },
        py::arg("f_mev"), py::arg("v0_mev"), py::arg("n_levels") = 9, py::arg("handedness") = "right");

  // Thermal preparation
  m.def("lls_polarization",
        [](double delta_e0_ghz, double temperature_k) {
          const auto g = space_spin::lls_polarization(units::ghz_to_mev(delta_e0_ghz), temperature_k);
          return py::make_tuple(g.gamma_reference, g.gamma_boltzmann);
        },
        py::arg("delta_e0_ghz"), py::arg("temperature_k"),
        "Returns (tanh(x), tanh(x/2)) with x = dE0 / kT.");
  m.def("thermal_spin_state",
        [](double f_mev, double v0_mev, double temperature_k, int bands) {
          const auto s = solve(f_mev, v0_mev, 3 * bands, 0);
          const auto basis = space_spin::build_allowed_basis(s, bands);
          return space_spin::spin_reduced(space_spin::thermal_state(basis, temperature_k)).matrix();
        },
        py::arg("f_mev"), py::arg("v0_mev"), py::arg("temperature_k"), py::arg("bands") = 1);

  // Drive
  m.def("logical_gate",
        [](const std::string& name) {
          if (name == "X") return gate_dict(drive::logical_gate(drive::GateName::X));
          if (name == "Z") return gate_dict(drive::logical_gate(drive::GateName::Z));
          throw ValidationError("gate must be 'X' or 'Z'");
        },
        py::arg("name"));
  m.def("logical_rotation",
        [](double alpha, double beta) { return gate_dict(drive::logical_rotation(alpha, beta)); },
        py::arg("alpha"), py::arg("beta"));
  m.def("pi_pulse_spin_state", [] {
    const auto& basis = drive::default_band0_basis();
    drive::PulseSpec pulse;
    pulse.theta = kPi;
    const auto reduced =
        space_spin::spin_reduced(drive::evolve_pulse(space_spin::ground_state_rho0(basis), pulse));
    const auto post = drive::post_select_m_half(reduced);
    return py::make_tuple(reduced.matrix(), post.state.matrix(), post.probability);
  }, "Spin state after a right-handed pi pulse from rho0, then the m=+-1/2 post-selection.");

  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          const int code = cli::run_cli(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one command line; returns (exit_code, stdout, stderr).");
}
