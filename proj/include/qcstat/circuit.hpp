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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcstat/ptm.hpp"

namespace qcstat {

// A depth-l circuit as an ordered sequence of channel layers; layers[0] is
// applied first. Widths chain: layers[i].n_in == layers[i-1].n_out.
class LayeredCircuit {
 public:
  explicit LayeredCircuit(std::vector<DensePTM> layers);

  const std::vector<DensePTM>& layers() const { return layers_; }
  int depth() const { return static_cast<int>(layers_.size()); }
  int n_in() const { return layers_.front().n_in(); }
  int n_out() const { return layers_.back().n_out(); }
  // (n_0, n_1, ..., n_l) in circuit order, length depth + 1.
  std::vector<int> widths() const;
  // PTM of the whole circuit: M_l ... M_2 M_1.
  DensePTM end_to_end() const;

 private:
  std::vector<DensePTM> layers_;
};

// `first` applied before `then`; widths must chain.
LayeredCircuit concat(const LayeredCircuit& first, const LayeredCircuit& then);

// Layerwise tensor product of two circuits of equal depth; `a` acts on the
// leading qubits.
LayeredCircuit tensor_circuits(const LayeredCircuit& a,
                               const LayeredCircuit& b,
                               int max_qubits = kDefaultQubitCap);

struct MeasureKind {
  enum class Variant { mu, nu, gamma };
  Variant variant = Variant::mu;
  bool modified = false;
  double r = 1.0;  // nu only
};

// Product over layers of the (modified) group norm.
double mu_measure(const LayeredCircuit& c, double p, double q, bool modified);

// Generalized r-mean over layers of the (modified) group norm:
// ((1/l) sum_i ||M_i||^r)^{1/r}.
double nu_measure(const LayeredCircuit& c, double p, double q, double r,
                  bool modified);

// Per-output path norms gamma^{(z)}_p: l_p aggregation over all index paths
// v_0 -> v_1 -> ... -> v_l = z through the layer matrices. Computed as row
// sums of the product of entrywise |.|^p layer matrices (p = inf takes the
// max path weight). With modified = true, paths run over non-identity
// indices only and the result has 4^{n_l} - 1 entries.
Eigen::VectorXd gamma_per_output(const LayeredCircuit& c, double p,
                                 bool modified);

// q-mean over outputs of the per-output path norms, averaged over 4^{n_l}
// outputs (or 4^{n_l} - 1 when modified).
double gamma_measure(const LayeredCircuit& c, double p, double q,
                     bool modified);

double circuit_measure(const LayeredCircuit& c, const MeasureKind& kind,
                       double p, double q);

// Minimum of the measure over family members whose end-to-end PTM matches
// `target` within `tol` (max-abs). Returns nullopt when no member realizes
// the target. Ties keep the first member in enumeration order.
std::optional<double> min_realization_resource(
    const DensePTM& target, std::span<const LayeredCircuit> family,
    const MeasureKind& kind, double p, double q, double tol = kValidationTol);

}  // namespace qcstat
