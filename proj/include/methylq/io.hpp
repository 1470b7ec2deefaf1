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

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "methylq/drive.hpp"
#include "methylq/rotor.hpp"
#include "methylq/space_spin.hpp"

namespace methylq::io {

using nlohmann::json;

inline constexpr const char* kSweepCsvHeader =
    "q,v0_over_f,level,band,symmetry,energy_mev,delta_e_n_ghz";

/// {params, levels: [{energy_mev, symmetry, band, fourier_abs2_by_residue}], splittings_ghz}
json spectrum_to_json(const rotor::RotorSpectrum& spectrum);

/// Splittings (GHz) recomputed from the level energies and band labels of a
/// spectrum JSON document.
std::vector<double> splittings_from_json(const json& doc);

void write_spectrum_csv(std::ostream& out, const rotor::RotorSpectrum& spectrum);
void write_sweep_csv(std::ostream& out, const rotor::SweepTable& table);

json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& doc);

/// Basis labels, diagonal populations and the full matrix.
json state_to_json(const space_spin::CombinedState& state);

json gate_report_to_json(const drive::GateReport& report);

struct PulseOp {
  drive::Arm arm = drive::Arm::plus;
  double theta = 0.0;
  double phi = 0.0;
  int line = 0;
};

/// One pulse per line: "U+ theta=<rad> phi=<rad>" or "U- ...". Blank lines and
/// '#' comments are skipped. Angles accept plain numbers or pi multiples
/// ("pi", "2pi", "-pi/2", "0.5*pi"). Throws ValidationError naming the line.
std::vector<PulseOp> parse_pulse_program(std::istream& in);

double parse_angle(const std::string& text);

/// Flat "key = value" file; '#' starts a comment.
std::map<std::string, std::string> parse_config(std::istream& in);

}  // namespace methylq::io
