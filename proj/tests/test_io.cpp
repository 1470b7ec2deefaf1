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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "methylq/io.hpp"
#include "methylq/linalg.hpp"

using namespace methylq;

TEST_CASE("spectrum JSON round-trips the splittings") {
  const auto spectrum = rotor::solve_spectrum({0.6, 32.0, 30}, 9);
  const io::json doc = io::json::parse(io::spectrum_to_json(spectrum).dump());
  REQUIRE(doc.contains("params"));
  REQUIRE(doc.at("levels").size() == 9);
  const auto& first = doc.at("levels").at(0);
  CHECK(first.at("symmetry") == "A");
  CHECK(first.at("band") == 0);
  CHECK(first.at("fourier_abs2_by_residue").at(0).get<double>() == doctest::Approx(1.0));
  const auto printed = doc.at("splittings_ghz").get<std::vector<double>>();
  const auto rederived = io::splittings_from_json(doc);
  REQUIRE(rederived.size() == printed.size());
  for (std::size_t n = 0; n < printed.size(); ++n) {
    CHECK(std::abs(rederived[n] - printed[n]) <= 1e-9);
  }
}

TEST_CASE("sweep CSV layout") {
  const auto table = rotor::sweep_barrier(0.6, {0.0, 0.3}, 5);
  std::ostringstream out;
  io::write_sweep_csv(out, table);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "q,v0_over_f,level,band,symmetry,energy_mev,delta_e_n_ghz");
  int rows = 0;
  bool saw_unassigned = false;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    // Levels 3 and 4 of a 5-level run belong to an incomplete band.
    if (line.find(",3,,") != std::string::npos || line.find(",4,,") != std::string::npos) {
      saw_unassigned = true;
      CHECK(line.back() == ',');
    }
  }
  CHECK(rows == 10);
  CHECK(saw_unassigned);
}

TEST_CASE("spectrum CSV") {
  std::ostringstream out;
  io::write_spectrum_csv(out, rotor::solve_spectrum({0.64, 0.0, 30}, 3));
  CHECK(out.str().rfind("level,band,symmetry,energy_mev,delta_e_n_ghz\n0,0,A,0,", 0) == 0);
}

TEST_CASE("complex matrix JSON") {
  ComplexMatrix m(2, 3);
  m << Complex(1, 2), 3, Complex(0, -1), 0.5, Complex(-2, 0.25), 7;
  const ComplexMatrix back = io::matrix_from_json(io::json::parse(io::matrix_to_json(m).dump()));
  CHECK(linalg::max_abs(back - m) == 0.0);
  CHECK_THROWS(io::matrix_from_json(io::json::parse(R"({"real": [[1]]})")));
}

TEST_CASE("state and gate report JSON") {
  const auto& basis = drive::default_band0_basis();
  const io::json state = io::state_to_json(space_spin::ground_state_rho0(basis));
  CHECK(state.at("basis").size() == 8);
  CHECK(state.at("populations").at(0).get<double>() == doctest::Approx(0.25));
  CHECK(state.at("basis").at(0).at("label") == "Phi(A,0)|A,+3/2>");
  const io::json gate = io::gate_report_to_json(drive::logical_gate(drive::GateName::X));
  CHECK(gate.at("name") == "X");
  CHECK(gate.at("accepted") == true);
  CHECK(gate.at("residuals").contains("anticommutator"));
  CHECK(gate.at("logical").at("real").size() == 2);
}

TEST_CASE("angle literals") {
  CHECK(io::parse_angle("1.5") == doctest::Approx(1.5));
  CHECK(io::parse_angle("pi") == doctest::Approx(kPi));
  CHECK(io::parse_angle("-pi/2") == doctest::Approx(-kPi / 2));
  CHECK(io::parse_angle("2pi") == doctest::Approx(2 * kPi));
  CHECK(io::parse_angle("0.5*pi") == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(io::parse_angle("pi/0"), ValidationError);
  CHECK_THROWS_AS(io::parse_angle("abc"), ValidationError);
  CHECK_THROWS_AS(io::parse_angle(""), ValidationError);
}

TEST_CASE("pulse programs") {
  std::istringstream good("# prepare\nU+ theta=pi phi=0\n\nU- theta=1.25 phi=-pi/2  # trailing\n");
  const auto ops = io::parse_pulse_program(good);
  REQUIRE(ops.size() == 2);
  CHECK(ops[0].arm == drive::Arm::plus);
  CHECK(ops[0].theta == doctest::Approx(kPi));
  CHECK(ops[1].arm == drive::Arm::minus);
  CHECK(ops[1].phi == doctest::Approx(-kPi / 2));
  CHECK(ops[1].line == 4);

  std::istringstream empty("");
  CHECK(io::parse_pulse_program(empty).empty());

  auto error_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      io::parse_pulse_program(in);
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("U+ theta=1\nU* theta=1\n").find("line 2") != std::string::npos);
  CHECK(error_of("U+ phi=1\n").find("missing theta") != std::string::npos);
  CHECK(error_of("U+ theta=1 gamma=2\n").find("unknown key") != std::string::npos);
  CHECK(error_of("\n\nU- theta=oops\n").find("line 3") != std::string::npos);
}

TEST_CASE("config files") {
  std::istringstream in("# defaults\nf_mev = 0.64\nv0-mev=28.14\n\n");
  const auto cfg = io::parse_config(in);
  CHECK(cfg.at("f_mev") == "0.64");
  CHECK(cfg.at("v0-mev") == "28.14");
  std::istringstream bad("f_mev 0.6\n");
  CHECK_THROWS_AS(io::parse_config(bad), ValidationError);
}
