// Copyright 2026 The qcstat developers
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

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "qcstat/io.hpp"

namespace {

using namespace qcstat;
using nlohmann::json;

double parse_extended(const std::string& s, const char* flag) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(
      fmt::format("--{}: expected a number or 'inf', got '{}'", flag, s));
}

std::vector<int> parse_widths(const std::string& s) {
  std::vector<int> widths;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string tok = s.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      widths.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw ValidationError(
          fmt::format("--widths: expected comma-separated integers, got '{}'",
                      s));
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return widths;
}

void emit_value(double value, const std::string& out_path, json payload) {
  fmt::print("{:.17g}\n", value);
  if (!out_path.empty()) {
    payload["schema_version"] = kSchemaVersion;
    payload["value"] = value;
    write_text_file(out_path, payload.dump(2) + "\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli-basis channel norms, circuit magic measures and "
               "Rademacher-complexity bounds"};
  app.require_subcommand(1);

  int max_qubits = kDefaultQubitCap;
  int workers = 0;
  std::uint64_t seed = 0;
  app.add_option("--max-qubits", max_qubits,
                 "qubit cap for dense Pauli-basis objects")
      ->capture_default_str();
  app.add_option("--workers", workers,
                 "worker threads (0 = QCSTAT_WORKERS env or 1)");
  app.add_option("--seed", seed, "seed echoed into outputs")
      ->capture_default_str();

  // ptm
  auto* ptm_cmd = app.add_subcommand("ptm", "build a circuit's PTM");
  std::string ptm_circuit, ptm_out;
  ptm_cmd->add_option("--circuit", ptm_circuit, "circuit JSON file")
      ->required();
  ptm_cmd->add_option("--out", ptm_out, "output JSON path (default: stdout)");

  // norm
  auto* norm_cmd =
      app.add_subcommand("norm", "(p,q) group norm of a circuit's PTM");
  std::string norm_circuit, norm_p, norm_q, norm_out;
  bool norm_modified = false;
  norm_cmd->add_option("--circuit", norm_circuit, "circuit JSON file")
      ->required();
  norm_cmd->add_option("--p", norm_p, "row exponent (> 0 or 'inf')")
      ->required();
  norm_cmd->add_option("--q", norm_q, "aggregation exponent (> 0 or 'inf')")
      ->required();
  norm_cmd->add_flag("--modified", norm_modified,
                     "use the modified (hat) representation matrix");
  norm_cmd->add_option("--out", norm_out, "also write a JSON report");

  // measure
  auto* measure_cmd =
      app.add_subcommand("measure", "layered-circuit resource measure");
  std::string measure_circuit, measure_kind, measure_p, measure_q, measure_out;
  double measure_r = 1.0;
  bool measure_modified = false;
  measure_cmd->add_option("--circuit", measure_circuit, "circuit JSON file")
      ->required();
  measure_cmd->add_option("--kind", measure_kind, "mu | nu | gamma")
      ->required();
  measure_cmd->add_option("--p", measure_p, "row exponent")->required();
  measure_cmd->add_option("--q", measure_q, "aggregation exponent")->required();
  measure_cmd->add_option("--r", measure_r, "nu mean exponent")
      ->capture_default_str();
  measure_cmd->add_flag("--modified", measure_modified,
                        "modified (hat) variant; requires unital layers");
  measure_cmd->add_option("--out", measure_out, "also write a JSON report");

  // bound
  auto* bound_cmd =
      app.add_subcommand("bound", "evaluate a Rademacher bound RHS");
  std::string bound_variant, bound_p, bound_q, bound_widths, bound_out;
  double bound_resource = 0.0, bound_k = 0.0;
  long long bound_m = 1;
  bound_cmd
      ->add_option("--variant", bound_variant,
                   "single | single_unital | depth_nu | depth_nu_unital | "
                   "depth_mu | depth_mu_unital | depth_gamma | "
                   "depth_gamma_unital")
      ->required();
  bound_cmd->add_option("--p", bound_p, "norm exponent (1 <= p < inf)")
      ->required();
  bound_cmd->add_option("--q", bound_q, "norm exponent (> 0 or 'inf')")
      ->required();
  bound_cmd->add_option("--resource", bound_resource, "resource bound value")
      ->required();
  bound_cmd->add_option("--m", bound_m, "sample count")->required();
  bound_cmd
      ->add_option("--widths", bound_widths,
                   "comma-separated widths n_0,...,n_l in circuit order")
      ->required();
  bound_cmd->add_option("--k", bound_k, "K factor value")->required();
  bound_cmd->add_option("--out", bound_out, "also write a JSON report");

  // estimate
  auto* estimate_cmd = app.add_subcommand(
      "estimate", "empirical Rademacher complexity of a circuit family");
  std::string estimate_config, estimate_out;
  estimate_cmd->add_option("--config", estimate_config, "experiment JSON file")
      ->required();
  estimate_cmd->add_option("--out", estimate_out, "also write a JSON report");

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "run a bound-verification experiment and emit the report");
  std::string verify_config, verify_out, verify_csv;
  verify_cmd->add_option("--config", verify_config, "experiment JSON file")
      ->required();
  verify_cmd->add_option("--out", verify_out,
                         "report JSON path (default: stdout)");
  verify_cmd->add_option("--csv", verify_csv, "also write the rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  }

  try {
    if (*ptm_cmd) {
      LayeredCircuit circuit = load_circuit(ptm_circuit, max_qubits);
      json j = ptm_to_json(circuit.end_to_end(), seed);
      if (ptm_out.empty()) {
        fmt::print("{}\n", j.dump(2));
      } else {
        write_text_file(ptm_out, j.dump(2) + "\n");
      }
    } else if (*norm_cmd) {
      LayeredCircuit circuit = load_circuit(norm_circuit, max_qubits);
      const double p = parse_extended(norm_p, "p");
      const double q = parse_extended(norm_q, "q");
      DensePTM m = circuit.end_to_end();
      const double value = norm_modified
                               ? modified_group_norm(modified_ptm(m), p, q)
                               : group_norm(m, p, q);
      emit_value(value, norm_out,
                 json{{"seed", seed},
                      {"p", extended_to_json(p)},
                      {"q", extended_to_json(q)},
                      {"modified", norm_modified}});
    } else if (*measure_cmd) {
      LayeredCircuit circuit = load_circuit(measure_circuit, max_qubits);
      const double p = parse_extended(measure_p, "p");
      const double q = parse_extended(measure_q, "q");
      MeasureKind kind;
      if (measure_kind == "mu") {
        kind.variant = MeasureKind::Variant::mu;
      } else if (measure_kind == "nu") {
        kind.variant = MeasureKind::Variant::nu;
      } else if (measure_kind == "gamma") {
        kind.variant = MeasureKind::Variant::gamma;
      } else {
        throw ValidationError(
            fmt::format("--kind: expected mu, nu or gamma, got '{}'",
                        measure_kind));
      }
      kind.modified = measure_modified;
      kind.r = measure_r;
      const double value = circuit_measure(circuit, kind, p, q);
      emit_value(value, measure_out,
                 json{{"seed", seed},
                      {"kind", measure_kind},
                      {"p", extended_to_json(p)},
                      {"q", extended_to_json(q)},
                      {"r", measure_r},
                      {"modified", measure_modified}});
    } else if (*bound_cmd) {
      BoundRequest req;
      req.variant = bound_variant_from_string(bound_variant);
      req.p = parse_extended(bound_p, "p");
      req.q = parse_extended(bound_q, "q");
      req.resource = bound_resource;
      req.samples = bound_m;
      req.widths = parse_widths(bound_widths);
      KFactor k{bound_k, is_unital_variant(req.variant)};
      const double value = rad_bound(req, k);
      emit_value(value, bound_out,
                 json{{"seed", seed},
                      {"variant", bound_variant},
                      {"p", extended_to_json(req.p)},
                      {"q", extended_to_json(req.q)},
                      {"resource", bound_resource},
                      {"m", bound_m},
                      {"k", bound_k}});
    } else if (*estimate_cmd) {
      ExperimentConfig config = load_experiment(estimate_config);
      config.family.max_qubits = max_qubits;
      config.options.workers = workers;
      if (app.count("--seed") > 0) config.options.seed = seed;
      CircuitFamily family = enumerate_family(config.family);
      std::vector<PauliVec> samples = encode_samples(config);
      FValueTable table = f_value_table(family, samples, config.observable);
      RadEstimate est =
          config.m <= config.options.exact_cap
              ? rademacher_exact(table, workers,
                                 static_cast<int>(config.options.exact_cap))
              : rademacher_mc(table, config.options.draws, config.options.seed,
                              workers);
      const bool mc = est.method == RadEstimate::Method::monte_carlo;
      emit_value(est.value, estimate_out,
                 json{{"seed", config.options.seed},
                      {"m", config.m},
                      {"family_size", family.members.size()},
                      {"method", mc ? "monte-carlo" : "exact"},
                      {"draws", est.draws},
                      {"stderr", est.stderr_value}});
    } else if (*verify_cmd) {
      ExperimentConfig config = load_experiment(verify_config);
      config.family.max_qubits = max_qubits;
      config.options.workers = workers;
      if (app.count("--seed") > 0) config.options.seed = seed;
      ExperimentReport report = run_experiment(config);
      const std::string text = report_to_json(report).dump(2) + "\n";
      if (verify_out.empty()) {
        fmt::print("{}", text);
      } else {
        write_text_file(verify_out, text);
      }
      if (!verify_csv.empty()) {
        write_text_file(verify_csv, report_to_csv(report));
      }
      if (!report.all_satisfied) {
        fmt::print(stderr, "error: {} of {} bound rows violated\n",
                   std::count_if(report.rows.begin(), report.rows.end(),
                                 [](const BoundCheckRow& r) {
                                   return !r.satisfied;
                                 }),
                   report.rows.size());
        return 1;
      }
    }
  } catch (const ValidationError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return 1;
  }
  return 0;
}
