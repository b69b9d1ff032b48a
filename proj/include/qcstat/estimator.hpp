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

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qcstat/bounds.hpp"
#include "qcstat/circuit.hpp"
#include "qcstat/ptm.hpp"

namespace qcstat {

// One gate slot in a family description. In a gate-set alphabet an empty
// `targets` means "every placement on the register" (each qubit for
// one-qubit gates, ordered pairs for CNOT, unordered pairs for CZ). In a
// grid template a non-empty `param_grid` makes the gate a grid axis; each
// grid entry is a full parameter vector.
struct FamilyGate {
  std::string name;
  std::vector<double> params;
  std::vector<int> targets;
  std::vector<std::vector<double>> param_grid;
};

// Words of a fixed depth over a gate alphabet; each letter is one layer.
struct GateSetSpec {
  std::vector<FamilyGate> gates;
  int depth = 1;
  int width = 1;
};

// A fixed circuit template whose grid axes are swept over a Cartesian
// product. Gates within a layer compose in listed order (first applied
// first).
struct GridSpec {
  std::vector<std::vector<FamilyGate>> layers;
  int width = 1;
};

struct FamilySpec {
  std::variant<GateSetSpec, GridSpec> spec;
  std::size_t size_cap = 100000;
  int max_qubits = kDefaultQubitCap;
};

// Finite, deterministically ordered circuit family. All members share depth
// and width vector. Enumeration order: gate-set words are lexicographic
// with the first layer most significant; grid combinations are lexicographic
// over axis indices in template order with the last axis varying fastest.
struct CircuitFamily {
  std::vector<LayeredCircuit> members;
  std::vector<int> widths;  // (n_0, ..., n_l)
};

CircuitFamily enumerate_family(const FamilySpec& spec);

// f-value table: values(i, c) = f_{C_c}(x_i) per the expectation functional.
struct FValueTable {
  Eigen::MatrixXd values;  // samples x family members
};

FValueTable f_value_table(const CircuitFamily& family,
                          std::span<const PauliVec> samples,
                          const PauliVec& alpha);

struct RadEstimate {
  enum class Method { exact, monte_carlo };
  double value = 0.0;
  Method method = Method::exact;
  std::uint64_t draws = 0;      // Monte Carlo only
  double stderr_value = 0.0;    // Monte Carlo only
  std::uint64_t seed = 0;       // Monte Carlo only
};

// Exact empirical Rademacher complexity:
// (1/2^m) sum over all sign vectors of (1/m) max_c |sum_i eps_i F(i, c)|.
// Enumerates 2^m sign patterns; refuses m above `m_cap`.
RadEstimate rademacher_exact(const FValueTable& table, int workers = 0,
                             int m_cap = 20);

// Seeded Monte Carlo estimate of the same expectation with
// "splitmix64-v1" signs; identical (seed, draws, table) gives bit-identical
// output for any worker count.
RadEstimate rademacher_mc(const FValueTable& table, std::uint64_t draws,
                          std::uint64_t seed, int workers = 0);

struct BoundCheckRow {
  BoundVariant variant;
  double p = 1.0;
  double q = kInf;
  double resource = 0.0;  // family-wide value: max over members
  double k = 0.0;
  double bound = 0.0;
  bool satisfied = false;
};

struct ExperimentReport {
  RadEstimate empirical;
  std::vector<BoundCheckRow> rows;
  long long m = 0;
  std::size_t family_size = 0;
  std::vector<int> widths;
  std::uint64_t seed = 0;
  bool all_satisfied = true;
};

struct VerifyOptions {
  long long exact_cap = 20;
  std::uint64_t draws = 100000;
  std::uint64_t seed = 0;
  double r = 1.0;  // exponent of the nu measures
  int workers = 0;
};

// Family-wide resource value of one bound variant: the max over members, so
// every member lies in the theorem's constraint set.
double family_resource(const CircuitFamily& family, BoundVariant variant,
                       double p, double q, double r = 1.0);

// Evaluates every requested (variant x norm) bound against the empirical
// Rademacher complexity of the family. A row is satisfied when
// bound >= empirical - 3 * stderr.
ExperimentReport verify_bounds(const CircuitFamily& family,
                               std::span<const PauliVec> samples,
                               const PauliVec& alpha,
                               std::span<const NormParams> norms,
                               std::span<const BoundVariant> variants,
                               const VerifyOptions& opts = {});

}  // namespace qcstat
