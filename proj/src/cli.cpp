// Copyright 2026 The loqsim authors
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

#include "loqsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "loqsim/dsl.hpp"

namespace loqsim {
namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write file: " + path);
  file << content;
  if (!file) throw std::runtime_error("write failed: " + path);
}

std::string format_sig(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string format_exact(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

Circuit resolve_circuit(const std::string& name, double theta_third_deg,
                        double phi_c_rad) {
  if (name == "conceptual") return build_conceptual_cnot();
  if (name == "experimental") return build_experimental_cnot(theta_third_deg, phi_c_rad);
  return load_circuit_file(name);
}

json matrix_json(const Eigen::Matrix4cd& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < 4; ++i) {
    json re_row = json::array(), im_row = json::array();
    for (int j = 0; j < 4; ++j) {
      re_row.push_back(round_for_output(m(i, j).real()));
      im_row.push_back(round_for_output(m(i, j).imag()));
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return json{{"re", re}, {"im", im}};
}

const char* kLogicalNames[4] = {"00", "01", "10", "11"};

struct CommonArgs {
  std::string circuit = "conceptual";
  double xi = 1.0;
  double theta_third_deg = third_splitter_hwp_deg();
  double phi_c_rad = 0.0;
};

void add_common_options(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--circuit", args->circuit,
                  "'conceptual', 'experimental', or a circuit file path")
      ->capture_default_str();
  cmd->add_option("--xi", args->xi,
                  "wavepacket overlap between the two photons (1 = ideal)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--theta-third", args->theta_third_deg,
                  "wide-HWP angle in degrees (experimental circuit only)")
      ->capture_default_str();
  cmd->add_option("--phi-c", args->phi_c_rad,
                  "control-arm compensator phase in radians (experimental circuit only)")
      ->capture_default_str();
}

json common_json(const CommonArgs& args) {
  json j;
  j["circuit"] = args.circuit;
  j["xi"] = round_for_output(args.xi);
  if (args.circuit == "experimental") {
    j["theta_third_deg"] = round_for_output(args.theta_third_deg);
    j["phi_c_rad"] = round_for_output(args.phi_c_rad);
  }
  return j;
}

struct TruthTableArgs {
  CommonArgs common;
  std::string out = "truth_table.json";
  std::string csv = "truth_table.csv";
};

int cmd_truth_table(const TruthTableArgs& args) {
  const Circuit circuit = resolve_circuit(args.common.circuit, args.common.theta_third_deg,
                                          args.common.phi_c_rad);
  const TruthTableResult result = truth_table_full(circuit, args.common.xi);

  json j = common_json(args.common);
  j["inputs"] = json::array({"00", "01", "10", "11"});
  json table = json::array();
  json success = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int k = 0; k < 4; ++k) row.push_back(round_for_output(result.table(i, k)));
    table.push_back(row);
    success.push_back(round_for_output(result.success_probability(i)));
  }
  j["table"] = table;
  j["success_probability"] = success;
  write_file(args.out, j.dump(2) + "\n");

  std::ostringstream csv;
  csv << "input,p00,p01,p10,p11,success_probability\n";
  for (int i = 0; i < 4; ++i) {
    csv << kLogicalNames[i];
    for (int k = 0; k < 4; ++k) csv << "," << format_sig(result.table(i, k));
    csv << "," << format_sig(result.success_probability(i)) << "\n";
  }
  write_file(args.csv, csv.str());
  return 0;
}

struct FringeArgs {
  CommonArgs common;
  std::int64_t counts = 0;
  std::uint64_t seed = 12345;
  std::string out = "fringe.json";
  std::string csv_d = "fringe_d.csv";
  std::string csv_h = "fringe_h.csv";
};

int cmd_fringe(const FringeArgs& args) {
  const Circuit circuit = resolve_circuit(args.common.circuit, args.common.theta_third_deg,
                                          args.common.phi_c_rad);
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::Vector2cd control(s, -s);
  const Eigen::Vector2cd target(0.0, 1.0);
  std::vector<double> angles;
  for (int h = 0; h <= 180; h += 5) angles.push_back(h);

  std::mt19937_64 rng(args.seed);
  json j = common_json(args.common);
  if (args.counts > 0) {
    j["counts_per_point"] = args.counts;
    j["seed"] = args.seed;
  }
  json scans = json::array();

  const struct {
    AnalyzerTag tag;
    const std::string* csv_path;
  } scan_plan[2] = {{AnalyzerTag::D, &args.csv_d}, {AnalyzerTag::H, &args.csv_h}};

  for (const auto& entry : scan_plan) {
    FringeData data = fringe_scan(circuit, control, target, args.common.xi,
                                  analyzer_setting(entry.tag), angles);
    if (args.counts > 0) {
      std::vector<double> estimates(data.probabilities.size());
      for (std::size_t k = 0; k < data.probabilities.size(); ++k) {
        const double mean = static_cast<double>(args.counts) * data.probabilities[k];
        std::int64_t n = 0;
        if (mean > 0.0) {
          std::poisson_distribution<std::int64_t> dist(mean);
          n = dist(rng);
        }
        estimates[k] = static_cast<double>(n) / static_cast<double>(args.counts);
      }
      data = fit_fringe(angles, estimates);
    }

    json scan;
    scan["control_setting"] = std::string(1, analyzer_tag_char(entry.tag));
    scan["visibility"] = round_for_output(data.visibility);
    scan["phase_deg"] = round_for_output(data.phase_deg);
    scan["period_deg"] = round_for_output(data.period_deg);
    json points = json::array();
    for (std::size_t k = 0; k < data.angles_deg.size(); ++k) {
      points.push_back(json{{"target_hwp_deg", round_for_output(data.angles_deg[k])},
                            {"probability", round_for_output(data.probabilities[k])}});
    }
    scan["points"] = points;
    scans.push_back(scan);

    std::ostringstream csv;
    csv << "target_hwp_deg,probability\n";
    for (std::size_t k = 0; k < data.angles_deg.size(); ++k) {
      csv << format_sig(data.angles_deg[k]) << "," << format_sig(data.probabilities[k])
          << "\n";
    }
    write_file(*entry.csv_path, csv.str());
  }

  j["scans"] = scans;
  write_file(args.out, j.dump(2) + "\n");
  return 0;
}

struct BellArgs {
  CommonArgs common;
  std::string out = "bell.json";
};

int cmd_bell(const BellArgs& args) {
  const Circuit circuit = resolve_circuit(args.common.circuit, args.common.theta_third_deg,
                                          args.common.phi_c_rad);
  json j = common_json(args.common);
  json states;
  for (BellKind kind : {BellKind::kPhiPlus, BellKind::kPhiMinus, BellKind::kPsiPlus,
                        BellKind::kPsiMinus}) {
    const auto [control, target] = bell_input(kind);
    const MixedResult result = run_with_mismatch(circuit, control, target, args.common.xi);
    if (!result.defined) {
      throw std::runtime_error(std::string("no coincidence support for ") +
                               bell_name(kind));
    }
    json entry;
    entry["fidelity"] = round_for_output(fidelity(result.rho, bell_vector(kind)));
    entry["tangle"] = round_for_output(tangle(result.rho));
    entry["linear_entropy"] = round_for_output(linear_entropy(result.rho));
    entry["chsh"] = round_for_output(chsh_max(result.rho));
    entry["success_probability"] = round_for_output(result.success_probability);
    states[bell_name(kind)] = entry;
  }
  j["states"] = states;
  write_file(args.out, j.dump(2) + "\n");
  return 0;
}

struct TomoArgs {
  CommonArgs common;
  std::string counts_csv;
  std::string bell = "psi_minus";
  std::string target;
  std::int64_t counts = 100000;
  std::uint64_t seed = 12345;
  bool analytic = false;
  int resamples = 0;
  std::string out = "tomography.json";
  std::string save_counts;
};

int cmd_tomo(const TomoArgs& args) {
  json j;
  std::vector<CountRecord> records;
  double n_per_setting = 0.0;

  if (!args.counts_csv.empty()) {
    records = parse_counts_csv(read_file(args.counts_csv));
    j["source"] = args.counts_csv;
  } else {
    const Circuit circuit = resolve_circuit(
        args.common.circuit, args.common.theta_third_deg, args.common.phi_c_rad);
    const BellKind kind = parse_bell_name(args.bell);
    const auto [control, target] = bell_input(kind);
    const MixedResult result =
        run_with_mismatch(circuit, control, target, args.common.xi);
    if (!result.defined) throw std::runtime_error("no coincidence support");
    if (args.counts <= 0) throw std::runtime_error("--counts must be positive");
    if (args.analytic) {
      for (const TomographySetting& setting : tomography_settings()) {
        const double p = std::clamp(
            (result.rho * setting_projector(setting)).trace().real(), 0.0, 1.0);
        records.push_back({setting, static_cast<double>(args.counts) * p});
      }
    } else {
      records = simulate_counts(result.rho, args.counts, args.seed);
    }
    n_per_setting = static_cast<double>(args.counts);
    j = common_json(args.common);
    j["bell"] = args.bell;
    j["counts_per_setting"] = args.counts;
    j["analytic"] = args.analytic;
    if (!args.analytic) j["seed"] = args.seed;
  }

  const std::vector<CountRecord> ordered = canonicalize_records(records);
  if (!args.save_counts.empty()) {
    write_file(args.save_counts, write_counts_csv(ordered));
  }

  const std::string target_name = args.target.empty() ? args.bell : args.target;
  const Eigen::Vector4cd psi = bell_vector(parse_bell_name(target_name));

  const auto [probabilities, scale] = counts_to_probabilities(ordered, n_per_setting);
  const DensityMatrix linear = linear_reconstruct(probabilities);
  const MleResult mle = mle_reconstruct(ordered, n_per_setting);

  json counts = json::array();
  for (const CountRecord& record : ordered) {
    counts.push_back(
        json{{"control", std::string(1, analyzer_tag_char(record.setting.control))},
             {"target", std::string(1, analyzer_tag_char(record.setting.target))},
             {"counts", round_for_output(record.counts)}});
  }
  j["counts"] = counts;
  j["n_per_setting"] = round_for_output(scale);
  j["target"] = target_name;
  j["linear"] = json{{"rho", matrix_json(linear)}};
  j["mle"] = json{{"rho", matrix_json(mle.rho)},
                  {"log_likelihood", round_for_output(mle.log_likelihood)},
                  {"gradient_norm", round_for_output(mle.gradient_norm)},
                  {"iterations", mle.iterations},
                  {"converged", mle.converged}};
  j["measures"] = json{{"fidelity", round_for_output(fidelity(mle.rho, psi))},
                       {"tangle", round_for_output(tangle(mle.rho))},
                       {"linear_entropy", round_for_output(linear_entropy(mle.rho))},
                       {"chsh", round_for_output(chsh_max(mle.rho))}};

  if (args.resamples >= 2) {
    const BootstrapResult bootstrap =
        bootstrap_uncertainty(ordered, psi, args.resamples, args.seed, n_per_setting);
    j["bootstrap"] = json{{"resamples", args.resamples},
                          {"resamples_converged", bootstrap.resamples_converged},
                          {"sigma_fidelity", round_for_output(bootstrap.sigma_fidelity)},
                          {"sigma_tangle", round_for_output(bootstrap.sigma_tangle)},
                          {"sigma_linear_entropy",
                           round_for_output(bootstrap.sigma_linear_entropy)},
                          {"sigma_chsh", round_for_output(bootstrap.sigma_chsh)}};
  }

  write_file(args.out, j.dump(2) + "\n");
  return mle.converged ? 0 : 2;
}

}  // namespace

double round_for_output(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return std::strtod(buffer, nullptr);
}

std::string write_counts_csv(const std::vector<CountRecord>& records) {
  std::ostringstream out;
  out << "setting_c,setting_t,counts\n";
  for (const CountRecord& record : records) {
    out << analyzer_tag_char(record.setting.control) << ","
        << analyzer_tag_char(record.setting.target) << ","
        << format_exact(record.counts) << "\n";
  }
  return out.str();
}

std::vector<CountRecord> parse_counts_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  std::vector<CountRecord> records;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "setting_c,setting_t,counts") {
        throw std::runtime_error("line " + std::to_string(line_number) +
                                 ": expected header 'setting_c,setting_t,counts'");
      }
      header_seen = true;
      continue;
    }
    std::istringstream fields(line);
    std::string c_field, t_field, n_field;
    if (!std::getline(fields, c_field, ',') || !std::getline(fields, t_field, ',') ||
        !std::getline(fields, n_field)) {
      throw std::runtime_error("line " + std::to_string(line_number) +
                               ": expected 'setting_c,setting_t,counts'");
    }
    char* end = nullptr;
    const double counts = std::strtod(n_field.c_str(), &end);
    if (end == n_field.c_str() || *end != '\0') {
      throw std::runtime_error("line " + std::to_string(line_number) +
                               ": bad count value '" + n_field + "'");
    }
    records.push_back(
        {{parse_analyzer_tag(c_field), parse_analyzer_tag(t_field)}, counts});
  }
  if (!header_seen) throw std::runtime_error("empty counts file");
  return records;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Two-photon linear-optical gate simulator and analysis toolkit"};
  app.require_subcommand(1);

  TruthTableArgs tt_args;
  CLI::App* tt = app.add_subcommand(
      "truth-table", "Coincidence-basis logical truth table at a given overlap");
  add_common_options(tt, &tt_args.common);
  tt->add_option("--out", tt_args.out, "JSON output path")->capture_default_str();
  tt->add_option("--csv", tt_args.csv, "CSV output path")->capture_default_str();

  FringeArgs fringe_args;
  CLI::App* fringe = app.add_subcommand(
      "fringe", "Target-analyzer fringes for superposed and logical control settings");
  add_common_options(fringe, &fringe_args.common);
  fringe->add_option("--counts", fringe_args.counts,
                     "Poisson counts per point (0 = exact probabilities)")
      ->capture_default_str();
  fringe->add_option("--seed", fringe_args.seed, "RNG seed for sampled counts")
      ->capture_default_str();
  fringe->add_option("--out", fringe_args.out, "JSON output path")->capture_default_str();
  fringe->add_option("--csv-d", fringe_args.csv_d,
                     "CSV path for the superposed-control scan")
      ->capture_default_str();
  fringe->add_option("--csv-h", fringe_args.csv_h, "CSV path for the logical-control scan")
      ->capture_default_str();

  BellArgs bell_args;
  CLI::App* bell = app.add_subcommand(
      "bell", "Entanglement measures for the four post-selected Bell outputs");
  add_common_options(bell, &bell_args.common);
  bell->add_option("--out", bell_args.out, "JSON output path")->capture_default_str();

  TomoArgs tomo_args;
  CLI::App* tomo = app.add_subcommand(
      "tomo", "Two-qubit state tomography: simulate or load counts, reconstruct, report");
  add_common_options(tomo, &tomo_args.common);
  tomo->add_option("counts_csv", tomo_args.counts_csv,
                   "existing counts CSV (omit to simulate)");
  tomo->add_option("--bell", tomo_args.bell,
                   "simulated input: phi_plus, phi_minus, psi_plus, psi_minus")
      ->capture_default_str();
  tomo->add_option("--target", tomo_args.target,
                   "Bell state used for the fidelity report (defaults to --bell)");
  tomo->add_option("--counts", tomo_args.counts, "counts per analyzer setting")
      ->capture_default_str();
  tomo->add_option("--seed", tomo_args.seed, "RNG seed for count simulation")
      ->capture_default_str();
  tomo->add_flag("--analytic", tomo_args.analytic,
                 "use exact expected counts instead of Poisson samples");
  tomo->add_option("--resamples", tomo_args.resamples,
                   "bootstrap resamples for uncertainties (0 = off)")
      ->check(CLI::Range(0, 1000000))
      ->capture_default_str();
  tomo->add_option("--out", tomo_args.out, "JSON output path")->capture_default_str();
  tomo->add_option("--save-counts", tomo_args.save_counts,
                   "also write the counts table to this CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(tt)) return cmd_truth_table(tt_args);
    if (app.got_subcommand(fringe)) return cmd_fringe(fringe_args);
    if (app.got_subcommand(bell)) return cmd_bell(bell_args);
    if (app.got_subcommand(tomo)) return cmd_tomo(tomo_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace loqsim
