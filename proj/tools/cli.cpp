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


#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "methylq/drive.hpp"
#include "methylq/io.hpp"
#include "methylq/linalg.hpp"
#include "methylq/rotor.hpp"
#include "methylq/space_spin.hpp"
#include "verify.hpp"

namespace methylq::cli {

namespace {

using io::json;

struct RotorOptions {
  double f_mev = 0.6;
  std::optional<double> v0_mev;
  std::optional<double> q;
  double scale = rotor::kDefaultSweepScale;
  int levels = 12;
  int l_max = 0;
};

struct RunConfig {
  RotorOptions rotor;
  std::string format;
  std::string out_path;
  std::optional<double> temperature_k;
  std::optional<double> delta_e0_ghz;
  double omega_h = 0.0;
  int bands = 1;
  std::string q_grid;
  int q_points = 50;
  double q_min = 0.0;
  double q_max = 0.95;
  std::string program;
  std::string init = "rho0";
  std::uint64_t seed = 42;
  int samples = 100;
  double perturb = 0.0;
};

// Known barrier/rotor-constant pairs with a literature ground splitting in GHz.
struct ReferenceRow {
  const char* compound;
  double v0_mev;
  double f_mev;
  double delta_e0_ghz;
};

constexpr ReferenceRow kReferenceRows[] = {
    {"o-fluorotoluene", 28.14, 0.64, 20.0},
    {"m-fluorotoluene", 2.6, 0.66, 860.0},
    {"o-toluidine", 86.79, 0.66, 350.0},
};

void add_rotor_options(CLI::App* sub, RotorOptions& r, int default_levels) {
  r.levels = default_levels;
  sub->add_option("--f-mev", r.f_mev, "free-rotor constant F in meV")->capture_default_str();
  sub->add_option("--v0-mev", r.v0_mev, "barrier height V0 in meV");
  sub->add_option("--q", r.q, "dimensionless barrier q, V0 = F*S*q/(1-q)");
  sub->add_option("--scale", r.scale, "scale S of the q map")->capture_default_str();
  sub->add_option("--levels", r.levels, "number of torsional levels")->capture_default_str();
  sub->add_option("--l-max", r.l_max, "plane-wave cutoff (0 = automatic)")->capture_default_str();
}

rotor::RotorParams resolve_params(const RotorOptions& r) {
  if (r.v0_mev && r.q) throw ValidationError("give either --v0-mev or --q, not both");
  if (!r.v0_mev && !r.q) throw ValidationError("one of --v0-mev or --q is required");
  if (!(r.f_mev > 0.0)) throw ValidationError("--f-mev must be positive");
  if (r.levels < 1) throw ValidationError("--levels must be positive");
  if (r.l_max < 0) throw ValidationError("--l-max must be non-negative");
  const double v0 = r.v0_mev ? *r.v0_mev : rotor::v0_from_q(r.f_mev, *r.q, r.scale);
  if (r.l_max > 0) {
    rotor::RotorParams params{r.f_mev, v0, r.l_max};
    params.validate();
    return params;
  }
  return rotor::converged_params(r.f_mev, v0, r.levels);
}

std::string sequence_label(SymmetryLabel s) { return s == SymmetryLabel::A ? "A" : "E"; }

std::string infer_format(const RunConfig& cfg, const std::string& fallback) {
  std::string format = cfg.format;
  if (format.empty() && cfg.out_path.size() > 4) {
    const std::string ext = cfg.out_path.substr(cfg.out_path.size() - 4);
    if (ext == ".csv") format = "csv";
    if (ext == "json") format = "json";
  }
  if (format.empty()) format = fallback;
  if (format != "csv" && format != "json") {
    throw ValidationError("--format must be csv or json, got '" + format + "'");
  }
  return format;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw ValidationError("failed writing '" + path + "'");
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const rotor::RotorParams params = resolve_params(cfg.rotor);
  const rotor::RotorSpectrum spectrum = rotor::solve_spectrum(params, cfg.rotor.levels);

  out << std::setprecision(10);
  out << "# F = " << params.f_mev << " meV, V0 = " << params.v0_mev << " meV, l_max = "
      << params.l_max << "\n";
  out << "level  band  symmetry  energy_mev\n";
  std::string sequence;
  for (std::size_t i = 0; i < spectrum.levels.size(); ++i) {
    const auto& level = spectrum.levels[i];
    out << std::setw(5) << i << "  " << std::setw(4)
        << (level.band == rotor::kUnassignedBand ? std::string("-") : std::to_string(level.band))
        << "  " << std::setw(8) << to_string(level.symmetry) << "  " << level.energy_mev << "\n";
    sequence += (i ? "," : "") + sequence_label(level.symmetry);
  }
  out << "symmetry sequence: " << sequence << "\n";
  out << "band  E_A_mev  E_E_mev  delta_e_n_ghz\n";
  for (int n = 0; n < spectrum.complete_bands(); ++n) {
    const double ea = spectrum.levels[spectrum.level_index(n, SymmetryLabel::A)].energy_mev;
    const double ee = spectrum.levels[spectrum.level_index(n, SymmetryLabel::E_plus)].energy_mev;
    out << n << "  " << ea << "  " << ee << "  " << units::mev_to_ghz(spectrum.splittings_mev[n])
        << "\n";
  }
  for (const auto& row : kReferenceRows) {
    if (std::abs(row.f_mev - params.f_mev) < 1e-9 && std::abs(row.v0_mev - params.v0_mev) < 1e-9 &&
        spectrum.complete_bands() > 0) {
      const double computed = units::mev_to_ghz(spectrum.splittings_mev[0]);
      const double ratio = std::abs(computed) / row.delta_e0_ghz;
      out << "diagnostic: " << row.compound << " computed delta_E0 = " << computed
          << " GHz, literature " << row.delta_e0_ghz << " GHz (ratio " << ratio << ")\n";
    }
  }

  if (!cfg.out_path.empty()) {
    std::ostringstream buffer;
    if (infer_format(cfg, "json") == "csv") {
      io::write_spectrum_csv(buffer, spectrum);
    } else {
      buffer << io::spectrum_to_json(spectrum).dump(2) << "\n";
    }
    write_file(cfg.out_path, buffer.str());
  }
  return 0;
}

std::vector<double> parse_q_grid(const RunConfig& cfg) {
  std::vector<double> grid;
  if (!cfg.q_grid.empty()) {
    std::stringstream ss(cfg.q_grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        grid.push_back(std::stod(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ValidationError("bad --q-grid entry '" + item + "'");
      }
    }
    return grid;
  }
  if (cfg.q_points < 1) throw ValidationError("--q-points must be positive");
  if (!(cfg.q_min >= 0.0 && cfg.q_max < 1.0 && cfg.q_min <= cfg.q_max)) {
    throw ValidationError("need 0 <= --q-min <= --q-max < 1");
  }
  for (int i = 0; i < cfg.q_points; ++i) {
    const double t = cfg.q_points == 1 ? 0.0 : static_cast<double>(i) / (cfg.q_points - 1);
    grid.push_back(cfg.q_min + t * (cfg.q_max - cfg.q_min));
  }
  return grid;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (infer_format(cfg, "csv") != "csv") throw ValidationError("sweep writes csv only");
  if (!(cfg.rotor.f_mev > 0.0)) throw ValidationError("--f-mev must be positive");
  if (cfg.rotor.levels < 1) throw ValidationError("--levels must be positive");
  const std::vector<double> grid = parse_q_grid(cfg);
  const rotor::SweepTable table =
      rotor::sweep_barrier(cfg.rotor.f_mev, grid, cfg.rotor.levels, cfg.rotor.scale, cfg.rotor.l_max);
  for (const auto& failure : table.failures) {
    err << "sweep: q = " << failure.q << " failed: " << failure.message << "\n";
  }
  std::ostringstream buffer;
  io::write_sweep_csv(buffer, table);
  if (cfg.out_path.empty()) {
    out << buffer.str();
  } else {
    write_file(cfg.out_path, buffer.str());
  }
  return table.rows.empty() && !grid.empty() ? 2 : 0;
}

// Single-band spectrum with the given A-E splitting, for runs that skip the rotor solve.
rotor::RotorSpectrum two_level_spectrum(double delta_mev) {
  rotor::RotorSpectrum spectrum;
  spectrum.params = {1.0, 0.0, 3};
  const int n = spectrum.params.dimension();
  const std::pair<SymmetryLabel, int> members[] = {
      {SymmetryLabel::A, 0}, {SymmetryLabel::E_plus, 1}, {SymmetryLabel::E_minus, -1}};
  for (const auto& [symmetry, l] : members) {
    rotor::TorsionalLevel level;
    level.energy_mev = symmetry == SymmetryLabel::A ? 0.0 : delta_mev;
    level.symmetry = symmetry;
    level.band = 0;
    level.fourier = ComplexVector::Zero(n);
    level.fourier(l + spectrum.params.l_max) = 1.0;
    spectrum.levels.push_back(level);
  }
  if (delta_mev < 0.0) std::swap(spectrum.levels[0], spectrum.levels[1]);
  std::stable_sort(spectrum.levels.begin(), spectrum.levels.end(),
                   [](const auto& a, const auto& b) { return a.energy_mev < b.energy_mev; });
  spectrum.splittings_mev = {delta_mev};
  return spectrum;
}

int cmd_lls(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.temperature_k) throw ValidationError("--temperature-k is required");
  rotor::RotorSpectrum spectrum;
  if (cfg.delta_e0_ghz) {
    if (cfg.rotor.v0_mev || cfg.rotor.q) {
      throw ValidationError("give either --delta-e0-ghz or rotor parameters, not both");
    }
    if (cfg.bands != 1) throw ValidationError("--bands requires rotor parameters");
    spectrum = two_level_spectrum(units::ghz_to_mev(*cfg.delta_e0_ghz));
  } else {
    RotorOptions r = cfg.rotor;
    r.levels = std::max(r.levels, 3 * cfg.bands);
    spectrum = rotor::solve_spectrum(resolve_params(r), r.levels);
  }
  if (spectrum.complete_bands() < 1) throw NumericalError("no complete band in spectrum");
  const double delta_mev = spectrum.splittings_mev[0];
  const space_spin::AllowedBasis basis =
      space_spin::build_allowed_basis(spectrum, cfg.bands, cfg.omega_h);
  const space_spin::CombinedState state = space_spin::thermal_state(basis, *cfg.temperature_k);
  const space_spin::LlsPolarization gamma =
      space_spin::lls_polarization(delta_mev, *cfg.temperature_k);
  const spin::DensityMatrix8 reduced = space_spin::spin_reduced(state);
  const double distance = linalg::trace_distance(
      reduced.matrix(), spin::lls_state(gamma.gamma_boltzmann).matrix());

  out << std::setprecision(10);
  out << "delta_E0_ghz = " << units::mev_to_ghz(delta_mev) << "\n";
  out << "temperature_k = " << *cfg.temperature_k << "\n";
  out << "gamma_reference = " << gamma.gamma_reference << "\n";
  out << "gamma_boltzmann = " << gamma.gamma_boltzmann << "\n";
  out << "distance_to_lls = " << distance << "\n";
  out << "gamma_fit = " << space_spin::fit_lls_gamma(reduced) << "\n";
  const Eigen::VectorXd pops = state.populations();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out << "population " << basis[i].label() << " = " << pops(static_cast<Eigen::Index>(i)) << "\n";
  }
  if (!cfg.out_path.empty()) {
    json doc = io::state_to_json(state);
    doc["gamma_reference"] = gamma.gamma_reference;
    doc["gamma_boltzmann"] = gamma.gamma_boltzmann;
    doc["distance_to_lls"] = distance;
    write_file(cfg.out_path, doc.dump(2) + "\n");
  }
  return 0;
}

space_spin::CombinedState initial_state(const RunConfig& cfg, const space_spin::AllowedBasis& basis) {
  if (cfg.init == "rho0") return space_spin::ground_state_rho0(basis);
  if (cfg.init == "thermal") {
    if (!cfg.temperature_k) throw ValidationError("--init thermal needs --temperature-k");
    return space_spin::thermal_state(basis, *cfg.temperature_k);
  }
  if (cfg.init == "zero") return drive::logical_sector_state(basis, 0);
  if (cfg.init == "one") return drive::logical_sector_state(basis, 1);
  throw ValidationError("--init must be rho0, thermal, zero or one");
}

int cmd_pulse(const RunConfig& cfg, std::ostream& out) {
  std::vector<io::PulseOp> program;
  if (!cfg.program.empty()) {
    std::ifstream file(cfg.program);
    if (!file) throw ValidationError("cannot open pulse program '" + cfg.program + "'");
    program = io::parse_pulse_program(file);
  }
  space_spin::AllowedBasis basis;
  if (cfg.rotor.v0_mev || cfg.rotor.q) {
    RotorOptions r = cfg.rotor;
    r.levels = std::max(r.levels, 3);
    basis = space_spin::build_allowed_basis(rotor::solve_spectrum(resolve_params(r), r.levels), 1);
  } else {
    basis = drive::default_band0_basis();
  }

  const space_spin::CombinedState initial = initial_state(cfg, basis);
  ComplexMatrix u = ComplexMatrix::Identity(initial.matrix().rows(), initial.matrix().cols());
  json ops = json::array();
  for (const auto& op : program) {
    u = drive::u_rotation(op.arm, op.theta, op.phi, basis) * u;
    ops.push_back({{"arm", op.arm == drive::Arm::plus ? "U+" : "U-"},
                   {"theta", op.theta},
                   {"phi", op.phi},
                   {"line", op.line}});
  }
  ComplexMatrix evolved = u * initial.matrix() * u.adjoint();
  evolved = 0.5 * (evolved + evolved.adjoint()).eval();
  const space_spin::CombinedState final_state(basis, evolved);
  const spin::DensityMatrix8 reduced = space_spin::spin_reduced(final_state);
  const drive::PostSelection post = drive::post_select_m_half(reduced);
  const spin::CpBasis& cp = spin::cp_basis();

  json doc;
  doc["program"] = ops;
  doc["initial"] = io::state_to_json(initial);
  doc["final"] = io::state_to_json(final_state);
  doc["spin_reduced"] = io::matrix_to_json(reduced.matrix());
  doc["spin_reduced_cp"] = io::matrix_to_json(cp.to_cp(reduced.matrix()));
  doc["post_selection"] = {{"probability", post.probability},
                           {"discarded", post.discarded},
                           {"state_cp", io::matrix_to_json(cp.to_cp(post.state.matrix()))}};
  try {
    doc["logical_density"] = io::matrix_to_json(drive::logical_density(final_state).matrix());
  } catch (const ZeroProbabilityError&) {
    doc["logical_density"] = nullptr;
  }

  if (cfg.out_path.empty()) {
    out << doc.dump(2) << "\n";
  } else {
    write_file(cfg.out_path, doc.dump(2) + "\n");
    out << std::setprecision(10) << "pulses = " << program.size() << "\n"
        << "post_selection_probability = " << post.probability << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, bool gates_only) {
  if (cfg.samples < 1) throw ValidationError("--samples must be positive");
  if (!(cfg.perturb >= 0.0)) throw ValidationError("--perturb must be non-negative");
  VerifyOptions options;
  options.seed = cfg.seed;
  options.samples = cfg.samples;
  options.perturb = cfg.perturb;
  options.gates_only = gates_only;
  const std::vector<CheckResult> checks = run_invariant_checks(options);
  print_checks(out, checks);
  const auto failed = std::count_if(checks.begin(), checks.end(),
                                    [](const CheckResult& c) { return !c.passed; });
  out << (failed == 0 ? "all " + std::to_string(checks.size()) + " checks passed"
                      : std::to_string(failed) + " of " + std::to_string(checks.size()) +
                            " checks failed")
      << "\n";
  if (gates_only && !cfg.out_path.empty()) {
    json reports = json::array();
    for (drive::GateName name : {drive::GateName::X, drive::GateName::Z}) {
      reports.push_back(io::gate_report_to_json(drive::logical_gate(name)));
    }
    write_file(cfg.out_path, reports.dump(2) + "\n");
  }
  return failed == 0 ? 0 : 2;
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  while (!key.empty() && key.front() == '-') key.erase(key.begin());
  return key;
}

// Finds --config in the raw arguments and splices its entries in front of the user's flags,
// so that later (command-line) values win under the take-last policy.
std::vector<std::string> splice_config(const std::vector<std::string>& args, CLI::App& app) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (!path) return args;
  std::ifstream file(*path);
  if (!file) throw ValidationError("cannot open config file '" + *path + "'");
  const auto entries = io::parse_config(file);

  const auto sub_pos = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
    return app.get_subcommand_no_throw(a) != nullptr;
  });
  if (sub_pos == args.end()) return args;
  CLI::App* sub = app.get_subcommand(*sub_pos);

  std::vector<std::string> injected;
  for (const auto& [raw_key, value] : entries) {
    const std::string flag = "--" + normalize_key(raw_key);
    if (flag == "--config") continue;
    if (sub->get_option_no_throw(flag) != nullptr) {
      injected.push_back(flag + "=" + value);
      continue;
    }
    bool known = false;
    for (const CLI::App* other : app.get_subcommands({})) {
      known = known || other->get_option_no_throw(flag) != nullptr;
    }
    if (!known) throw ValidationError("unknown config key '" + raw_key + "'");
  }
  std::vector<std::string> result(args.begin(), sub_pos + 1);
  result.insert(result.end(), injected.begin(), injected.end());
  result.insert(result.end(), sub_pos + 1, args.end());
  return result;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"methyl-group logical qubit simulator", "methylq"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  bool show_version = false;
  app.add_flag("--version", show_version, "print version and unit constants");

  RunConfig cfg;
  std::string config_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value config file");
    sub->add_option("--out", cfg.out_path, "output file");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "solve the torsional spectrum");
  add_rotor_options(spectrum, cfg.rotor, 12);
  spectrum->add_option("--format", cfg.format, "csv or json");
  add_common(spectrum);

  CLI::App* sweep = app.add_subcommand("sweep", "sweep the barrier over a q grid");
  sweep->add_option("--f-mev", cfg.rotor.f_mev, "free-rotor constant F in meV")->capture_default_str();
  sweep->add_option("--scale", cfg.rotor.scale, "scale S of the q map")->capture_default_str();
  sweep->add_option("--levels", cfg.rotor.levels, "levels per point")->capture_default_str();
  sweep->add_option("--l-max", cfg.rotor.l_max, "plane-wave cutoff (0 = automatic)");
  sweep->add_option("--q-grid", cfg.q_grid, "comma-separated q values");
  sweep->add_option("--q-points", cfg.q_points, "uniform grid size")->capture_default_str();
  sweep->add_option("--q-min", cfg.q_min, "grid start")->capture_default_str();
  sweep->add_option("--q-max", cfg.q_max, "grid end")->capture_default_str();
  sweep->add_option("--format", cfg.format, "csv");
  add_common(sweep);

  CLI::App* lls = app.add_subcommand("lls", "thermal long-lived-state preparation");
  add_rotor_options(lls, cfg.rotor, 3);
  lls->add_option("--temperature-k", cfg.temperature_k, "temperature in K");
  lls->add_option("--delta-e0-ghz", cfg.delta_e0_ghz, "ground A-E splitting in GHz");
  lls->add_option("--bands", cfg.bands, "torsional bands in the thermal state")->capture_default_str();
  lls->add_option("--omega-h", cfg.omega_h, "Larmor angular frequency in rad/s");
  add_common(lls);

  CLI::App* pulse = app.add_subcommand("pulse", "apply a pulse program");
  add_rotor_options(pulse, cfg.rotor, 3);
  pulse->add_option("--program", cfg.program, "pulse program file");
  pulse->add_option("--init", cfg.init, "rho0, thermal, zero or one")->capture_default_str();
  pulse->add_option("--temperature-k", cfg.temperature_k, "temperature for --init thermal");
  add_common(pulse);

  CLI::App* gates = app.add_subcommand("gates", "logical gate checks");
  CLI::App* verify = app.add_subcommand("verify", "full invariant suite");
  for (CLI::App* sub : {gates, verify}) {
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "random samples per check")->capture_default_str();
    add_common(sub);
  }
  verify->add_option("--perturb", cfg.perturb, "noise added to P+ (fault injection)");

  try {
    std::vector<std::string> argv = splice_config(args, app);
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (show_version) {
    out << "methylq " << kVersion << "\n"
        << std::setprecision(12) << "1 meV = " << units::kGhzPerMev << " GHz\n"
        << "k_B = " << units::kBoltzmannMevPerKelvin << " meV/K\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    err << "error: a subcommand is required\n" << app.help();
    return 1;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out, err);
    if (lls->parsed()) return cmd_lls(cfg, out);
    if (pulse->parsed()) return cmd_pulse(cfg, out);
    if (gates->parsed()) return cmd_verify(cfg, out, true);
    return cmd_verify(cfg, out, false);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace methylq::cli
