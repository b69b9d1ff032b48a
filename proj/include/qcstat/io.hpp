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

#pragma once

#include <json.hpp>
#include <string>

#include "qcstat/estimator.hpp"

namespace qcstat {

// All emitted files carry this schema version.
inline constexpr const char* kSchemaVersion = "1";

// Extended reals in JSON: infinity is written and read as the string "inf"
// (JSON numbers cannot represent it).
double extended_from_json(const nlohmann::json& j, const char* field);
nlohmann::json extended_to_json(double v);

// Circuit description files:
// {"layers": [{"gates": [{"name", "params", "targets"}],
//              "width_in": n, "width_out": n}
//             | {"unitary": [[[re, im], ...], ...], ...}
//             | {"kraus": [matrix, ...], ...}]}
// Gates within a layer compose in listed order (first applied first).
LayeredCircuit circuit_from_json(const nlohmann::json& j,
                                 int max_qubits = kDefaultQubitCap);
LayeredCircuit load_circuit(const std::string& path,
                            int max_qubits = kDefaultQubitCap);

nlohmann::json ptm_to_json(const DensePTM& m, std::uint64_t seed = 0);

struct ExperimentConfig {
  FamilySpec family;
  Encoding encoding = Encoding::angle_y;
  std::vector<std::vector<double>> sample_features;
  PauliVec observable;  // observable-kind representation vector
  std::vector<NormParams> norms;
  std::vector<BoundVariant> variants;
  long long m = 0;  // number of samples to use (defaults to all)
  VerifyOptions options;
};

// Experiment configuration files:
// {"family": {"type": "gate_set", "gates": [...], "depth", "width"}
//           | {"type": "grid", "width", "layers": [{"gates": [...]}, ...]},
//  "encoding": "angle-y" | "angle-zy" | "basis",
//  "samples": [[feature, ...], ...],
//  "observable": {"pauli": "Z"} | {"matrix": [[[re, im], ...], ...]},
//  "norms": [{"p": 1, "q": "inf"}, ...],
//  "variants": ["single", "depth_nu", ...],
//  "m": 4, "draws": 100000, "seed": 0, "r": 1}
ExperimentConfig experiment_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment(const std::string& path);

std::vector<PauliVec> encode_samples(const ExperimentConfig& config);

ExperimentReport run_experiment(const ExperimentConfig& config);

nlohmann::json report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qcstat
