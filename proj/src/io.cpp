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

#include "qcstat/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>

namespace qcstat {

using nlohmann::json;

double extended_from_json(const json& j, const char* field) {
  if (j.is_number()) {
    return j.get<double>();
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Inf" || s == "infinity") {
      return kInf;
    }
    throw ValidationError(
        fmt::format("field '{}': expected a number or \"inf\", got \"{}\"",
                    field, s));
  }
  throw ValidationError(
      fmt::format("field '{}': expected a number or \"inf\"", field));
}

json extended_to_json(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

namespace {

const json& require_field(const json& j, const char* field,
                          const char* context) {
  auto it = j.find(field);
  if (it == j.end()) {
    throw ValidationError(
        fmt::format("{}: missing required field '{}'", context, field));
  }
  return *it;
}

Eigen::MatrixXcd complex_matrix_from_json(const json& j, const char* context) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError(fmt::format("{}: expected a matrix", context));
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError(fmt::format("{}: ragged matrix rows", context));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& cell = row.at(static_cast<std::size_t>(c));
      if (!cell.is_array() || cell.size() != 2) {
        throw ValidationError(fmt::format(
            "{}: matrix entries must be [re, im] pairs", context));
      }
      m(r, c) = std::complex<double>(cell.at(0).get<double>(),
                                     cell.at(1).get<double>());
    }
  }
  return m;
}

int qubits_from_dim(Eigen::Index dim, const char* context) {
  int n = 0;
  for (Eigen::Index d = dim; d > 1; d /= 2) {
    if (d % 2 != 0) {
      throw ValidationError(
          fmt::format("{}: dimension {} is not a power of two", context, dim));
    }
    ++n;
  }
  if (n == 0) {
    throw ValidationError(fmt::format("{}: dimension must be >= 2", context));
  }
  return n;
}

FamilyGate gate_from_json(const json& j, const char* context) {
  FamilyGate gate;
  if (j.is_string()) {
    gate.name = j.get<std::string>();
    return gate;
  }
  if (!j.is_object()) {
    throw ValidationError(
        fmt::format("{}: gate must be a name or an object", context));
  }
  gate.name = require_field(j, "name", context).get<std::string>();
  if (j.contains("params")) {
    gate.params = j.at("params").get<std::vector<double>>();
  }
  if (j.contains("targets")) {
    gate.targets = j.at("targets").get<std::vector<int>>();
  }
  if (j.contains("param_grid")) {
    const json& grid = j.at("param_grid");
    if (!grid.is_array() || grid.empty()) {
      throw ValidationError(
          fmt::format("{}: param_grid must be a nonempty array", context));
    }
    for (const json& entry : grid) {
      if (entry.is_number()) {
        gate.param_grid.push_back({entry.get<double>()});
      } else {
        gate.param_grid.push_back(entry.get<std::vector<double>>());
      }
    }
  }
  return gate;
}

DensePTM layer_from_json(const json& j, std::size_t index, int max_qubits) {
  const std::string context = fmt::format("layer {}", index + 1);
  if (!j.is_object()) {
    throw ValidationError(context + ": expected an object");
  }
  const int width_in =
      require_field(j, "width_in", context.c_str()).get<int>();
  const int width_out =
      require_field(j, "width_out", context.c_str()).get<int>();

  if (j.contains("unitary")) {
    Eigen::MatrixXcd u =
        complex_matrix_from_json(j.at("unitary"), context.c_str());
    const int n = qubits_from_dim(u.rows(), context.c_str());
    if (n != width_in || n != width_out) {
      throw ValidationError(fmt::format(
          "{}: unitary acts on {} qubits but widths are {} -> {}", context, n,
          width_in, width_out));
    }
    return ptm_from_unitary(u, n, max_qubits);
  }
  if (j.contains("kraus")) {
    std::vector<Eigen::MatrixXcd> kraus;
    for (const json& k : j.at("kraus")) {
      kraus.push_back(complex_matrix_from_json(k, context.c_str()));
    }
    return ptm_from_kraus(kraus, width_in, width_out, max_qubits);
  }
  if (j.contains("gates")) {
    if (width_in != width_out) {
      throw ValidationError(fmt::format(
          "{}: gate layers preserve width, got {} -> {}", context, width_in,
          width_out));
    }
    DensePTM m = identity_ptm(width_in, max_qubits);
    for (const json& gj : j.at("gates")) {
      FamilyGate g = gate_from_json(gj, context.c_str());
      if (!g.param_grid.empty()) {
        throw ValidationError(
            context + ": param_grid is only valid in family templates");
      }
      if (g.targets.empty()) {
        throw ValidationError(
            fmt::format("{}: gate '{}' needs targets", context, g.name));
      }
      m = compose_ptm(ptm_named(g.name, g.params, g.targets, width_in,
                                max_qubits),
                      m);
    }
    return m;
  }
  throw ValidationError(context +
                        ": needs one of 'gates', 'unitary' or 'kraus'");
}

}  // namespace

LayeredCircuit circuit_from_json(const json& j, int max_qubits) {
  const json& layers_json = require_field(j, "layers", "circuit");
  if (!layers_json.is_array() || layers_json.empty()) {
    throw ValidationError("circuit: 'layers' must be a nonempty array");
  }
  std::vector<DensePTM> layers;
  layers.reserve(layers_json.size());
  for (std::size_t i = 0; i < layers_json.size(); ++i) {
    layers.push_back(layer_from_json(layers_json.at(i), i, max_qubits));
  }
  return LayeredCircuit(std::move(layers));
}

LayeredCircuit load_circuit(const std::string& path, int max_qubits) {
  return circuit_from_json(load_json_file(path), max_qubits);
}

json ptm_to_json(const DensePTM& m, std::uint64_t seed) {
  json rows = json::array();
  for (Eigen::Index z = 0; z < m.entries().rows(); ++z) {
    json row = json::array();
    for (Eigen::Index x = 0; x < m.entries().cols(); ++x) {
      row.push_back(m.entries()(z, x));
    }
    rows.push_back(std::move(row));
  }
  return json{{"schema_version", kSchemaVersion},
              {"seed", seed},
              {"n_in", m.n_in()},
              {"n_out", m.n_out()},
              {"entries", std::move(rows)}};
}

namespace {

FamilySpec family_from_json(const json& j) {
  FamilySpec spec;
  const std::string type =
      require_field(j, "type", "family").get<std::string>();
  if (j.contains("cap")) {
    spec.size_cap = j.at("cap").get<std::size_t>();
  }
  if (type == "gate_set") {
    GateSetSpec gs;
    gs.depth = require_field(j, "depth", "family").get<int>();
    gs.width = require_field(j, "width", "family").get<int>();
    for (const json& gj : require_field(j, "gates", "family")) {
      gs.gates.push_back(gate_from_json(gj, "family"));
    }
    spec.spec = std::move(gs);
  } else if (type == "grid") {
    GridSpec gr;
    gr.width = require_field(j, "width", "family").get<int>();
    for (const json& lj : require_field(j, "layers", "family")) {
      std::vector<FamilyGate> layer;
      for (const json& gj : require_field(lj, "gates", "family layer")) {
        layer.push_back(gate_from_json(gj, "family"));
      }
      gr.layers.push_back(std::move(layer));
    }
    spec.spec = std::move(gr);
  } else {
    throw ValidationError(
        fmt::format("family: unknown type '{}' (use gate_set or grid)", type));
  }
  return spec;
}

PauliVec observable_from_json(const json& j) {
  if (j.contains("pauli")) {
    const std::string s = j.at("pauli").get<std::string>();
    PauliIndex idx = PauliIndex::from_string(s);
    Eigen::VectorXd entries =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(pow4(idx.num_qubits())));
    entries[static_cast<Eigen::Index>(idx.linear())] = 1.0;
    return PauliVec{std::move(entries), idx.num_qubits(), VecKind::observable};
  }
  if (j.contains("matrix")) {
    Eigen::MatrixXcd h = complex_matrix_from_json(j.at("matrix"), "observable");
    const int n = qubits_from_dim(h.rows(), "observable");
    return observable_vec(h, n);
  }
  throw ValidationError("observable: needs 'pauli' or 'matrix'");
}

}  // namespace

ExperimentConfig experiment_from_json(const json& j) {
  ExperimentConfig config;
  config.family = family_from_json(require_field(j, "family", "experiment"));
  config.encoding = encoding_from_string(
      require_field(j, "encoding", "experiment").get<std::string>());
  config.sample_features = require_field(j, "samples", "experiment")
                               .get<std::vector<std::vector<double>>>();
  if (config.sample_features.empty()) {
    throw ValidationError("experiment: 'samples' must be nonempty");
  }
  config.observable =
      observable_from_json(require_field(j, "observable", "experiment"));
  for (const json& nj : require_field(j, "norms", "experiment")) {
    config.norms.emplace_back(extended_from_json(require_field(nj, "p", "norms"), "p"),
                              extended_from_json(require_field(nj, "q", "norms"), "q"));
  }
  for (const json& vj : require_field(j, "variants", "experiment")) {
    config.variants.push_back(bound_variant_from_string(vj.get<std::string>()));
  }
  config.m = static_cast<long long>(config.sample_features.size());
  if (j.contains("m")) {
    config.m = j.at("m").get<long long>();
    if (config.m < 1 ||
        config.m > static_cast<long long>(config.sample_features.size())) {
      throw ValidationError(fmt::format(
          "experiment: m = {} must lie in [1, {}]", config.m,
          config.sample_features.size()));
    }
  }
  if (j.contains("draws")) {
    config.options.draws = j.at("draws").get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    config.options.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("r")) {
    config.options.r = j.at("r").get<double>();
  }
  if (j.contains("exact_cap")) {
    config.options.exact_cap = j.at("exact_cap").get<long long>();
  }
  return config;
}

ExperimentConfig load_experiment(const std::string& path) {
  return experiment_from_json(load_json_file(path));
}

std::vector<PauliVec> encode_samples(const ExperimentConfig& config) {
  std::vector<PauliVec> samples;
  samples.reserve(static_cast<std::size_t>(config.m));
  for (long long i = 0; i < config.m; ++i) {
    samples.push_back(state_vec_from_features(
        config.sample_features[static_cast<std::size_t>(i)], config.encoding,
        config.family.max_qubits));
  }
  return samples;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  CircuitFamily family = enumerate_family(config.family);
  std::vector<PauliVec> samples = encode_samples(config);
  return verify_bounds(family, samples, config.observable, config.norms,
                       config.variants, config.options);
}

json report_to_json(const ExperimentReport& report) {
  json rows = json::array();
  for (const BoundCheckRow& row : report.rows) {
    rows.push_back(json{{"variant", to_string(row.variant)},
                        {"p", extended_to_json(row.p)},
                        {"q", extended_to_json(row.q)},
                        {"resource", row.resource},
                        {"k", row.k},
                        {"bound", row.bound},
                        {"empirical", report.empirical.value},
                        {"stderr", report.empirical.stderr_value},
                        {"satisfied", row.satisfied}});
  }
  const bool mc = report.empirical.method == RadEstimate::Method::monte_carlo;
  return json{{"schema_version", kSchemaVersion},
              {"seed", report.seed},
              {"m", report.m},
              {"family_size", report.family_size},
              {"widths", report.widths},
              {"empirical",
               json{{"method", mc ? "monte-carlo" : "exact"},
                    {"value", report.empirical.value},
                    {"draws", report.empirical.draws},
                    {"stderr", report.empirical.stderr_value},
                    {"seed", report.empirical.seed}}},
              {"rows", std::move(rows)},
              {"all_satisfied", report.all_satisfied}};
}

std::string report_to_csv(const ExperimentReport& report) {
  std::string out =
      "variant,p,q,resource,k,bound,empirical,stderr,method,satisfied\n";
  const bool mc = report.empirical.method == RadEstimate::Method::monte_carlo;
  auto num = [](double v) {
    return std::isinf(v) ? std::string("inf") : fmt::format("{:.17g}", v);
  };
  for (const BoundCheckRow& row : report.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n",
                       to_string(row.variant), num(row.p), num(row.q),
                       num(row.resource), num(row.k), num(row.bound),
                       num(report.empirical.value),
                       num(report.empirical.stderr_value),
                       mc ? "monte-carlo" : "exact",
                       row.satisfied ? "true" : "false");
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError(fmt::format("cannot open '{}'", path));
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("cannot parse '{}': {}", path, e.what()));
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError(fmt::format("cannot write '{}'", path));
  }
  out << text;
}

}  // namespace qcstat
