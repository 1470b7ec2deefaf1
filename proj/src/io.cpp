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


#include "methylq/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace methylq::io {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& s) {
  const auto hash = s.find('#');
  return hash == std::string::npos ? s : s.substr(0, hash);
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ValidationError("not a number: '" + text + "'");
  }
  return value;
}

// Shortest text that round-trips exactly.
std::string format_double(double v) {
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), v);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace

json spectrum_to_json(const rotor::RotorSpectrum& spectrum) {
  json doc;
  doc["params"] = {{"f_mev", spectrum.params.f_mev},
                   {"v0_mev", spectrum.params.v0_mev},
                   {"l_max", spectrum.params.l_max}};
  json levels = json::array();
  for (const auto& level : spectrum.levels) {
    const auto w = level.residue_weights();
    levels.push_back({{"energy_mev", level.energy_mev},
                      {"symmetry", std::string(to_string(level.symmetry))},
                      {"band", level.band},
                      {"fourier_abs2_by_residue", {w[0], w[1], w[2]}}});
  }
  doc["levels"] = levels;
  json splittings = json::array();
  for (double s : spectrum.splittings_mev) splittings.push_back(units::mev_to_ghz(s));
  doc["splittings_ghz"] = splittings;
  return doc;
}

std::vector<double> splittings_from_json(const json& doc) {
  std::map<int, double> e_a;
  std::map<int, std::vector<double>> e_e;
  for (const auto& level : doc.at("levels")) {
    const int band = level.at("band").get<int>();
    if (band < 0) continue;
    const double energy = level.at("energy_mev").get<double>();
    if (symmetry_from_string(level.at("symmetry").get<std::string>()) == SymmetryLabel::A) {
      e_a[band] = energy;
    } else {
      e_e[band].push_back(energy);
    }
  }
  std::vector<double> out;
  for (int band = 0; e_a.count(band) && e_e.count(band) && e_e[band].size() == 2; ++band) {
    const double mean_e = 0.5 * (e_e[band][0] + e_e[band][1]);
    out.push_back(units::mev_to_ghz(mean_e - e_a[band]));
  }
  return out;
}

void write_spectrum_csv(std::ostream& out, const rotor::RotorSpectrum& spectrum) {
  out << "level,band,symmetry,energy_mev,delta_e_n_ghz\n";
  for (std::size_t i = 0; i < spectrum.levels.size(); ++i) {
    const auto& level = spectrum.levels[i];
    out << i << ',';
    if (level.band >= 0) out << level.band;
    out << ',' << to_string(level.symmetry) << ',' << format_double(level.energy_mev) << ',';
    if (level.band >= 0 && level.band < spectrum.complete_bands()) {
      out << format_double(units::mev_to_ghz(spectrum.splittings_mev[level.band]));
    }
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const rotor::SweepTable& table) {
  out << kSweepCsvHeader << '\n';
  for (const auto& row : table.rows) {
    out << format_double(row.q) << ',' << format_double(row.v0_over_f) << ',' << row.level << ',';
    if (row.band >= 0) out << row.band;
    out << ',' << to_string(row.symmetry) << ',' << format_double(row.energy_mev) << ',';
    if (row.delta_e_n_ghz) out << format_double(*row.delta_e_n_ghz);
    out << '\n';
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return {{"real", re}, {"imag", im}};
}

ComplexMatrix matrix_from_json(const json& doc) {
  const auto& re = doc.at("real");
  const auto& im = doc.at("imag");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(re.at(0).size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = Complex(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
    }
  }
  return m;
}

json state_to_json(const space_spin::CombinedState& state) {
  json labels = json::array();
  json populations = json::array();
  const Eigen::VectorXd pops = state.populations();
  for (std::size_t i = 0; i < state.basis().size(); ++i) {
    const auto& element = state.basis()[i];
    labels.push_back({{"label", element.label()},
                      {"band", element.band},
                      {"torsional", std::string(to_string(element.torsional))},
                      {"spin_symmetry", std::string(to_string(element.spin.symmetry))},
                      {"m", element.spin.m},
                      {"total_energy_mev", element.total_energy_mev}});
    populations.push_back(pops(static_cast<Eigen::Index>(i)));
  }
  return {{"basis", labels}, {"populations", populations}, {"matrix", matrix_to_json(state.matrix())}};
}

json gate_report_to_json(const drive::GateReport& report) {
  json residuals = json::object();
  for (const auto& [key, value] : report.residuals) residuals[key] = value;
  return {{"name", report.name},
          {"accepted", report.accepted},
          {"global_phase", {report.global_phase.real(), report.global_phase.imag()}},
          {"logical", matrix_to_json(report.logical)},
          {"residuals", residuals}};
}

double parse_angle(const std::string& raw) {
  std::string text = trim(raw);
  if (text.empty()) throw ValidationError("empty angle");
  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string::npos) return parse_number(text);

  std::string coeff = text.substr(0, pi_pos);
  std::string rest = text.substr(pi_pos + 2);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  double factor = 1.0;
  if (coeff == "-") {
    factor = -1.0;
  } else if (coeff == "+" || coeff.empty()) {
    factor = 1.0;
  } else {
    factor = parse_number(coeff);
  }
  if (!rest.empty()) {
    if (rest.front() != '/') throw ValidationError("bad angle '" + raw + "'");
    const double divisor = parse_number(rest.substr(1));
    if (divisor == 0.0) throw ValidationError("bad angle '" + raw + "'");
    factor /= divisor;
  }
  return factor * kPi;
}

std::vector<PulseOp> parse_pulse_program(std::istream& in) {
  std::vector<PulseOp> program;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ValidationError("pulse program line " + std::to_string(number) + ": " + why);
    };
    std::istringstream tokens(body);
    std::string head;
    tokens >> head;
    PulseOp op;
    op.line = number;
    if (head == "U+") {
      op.arm = drive::Arm::plus;
    } else if (head == "U-") {
      op.arm = drive::Arm::minus;
    } else {
      fail("expected 'U+' or 'U-', got '" + head + "'");
    }
    bool has_theta = false;
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + token + "'");
      const std::string key = token.substr(0, eq);
      const std::string value = token.substr(eq + 1);
      try {
        if (key == "theta") {
          op.theta = parse_angle(value);
          has_theta = true;
        } else if (key == "phi") {
          op.phi = parse_angle(value);
        } else {
          fail("unknown key '" + key + "'");
        }
      } catch (const ValidationError& e) {
        if (std::string(e.what()).rfind("pulse program line", 0) == 0) throw;
        fail(e.what());
      }
    }
    if (!has_theta) fail("missing theta");
    program.push_back(op);
  }
  return program;
}

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(number) + ": expected key = value");
    }
    out[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
  }
  return out;
}

}  // namespace methylq::io
