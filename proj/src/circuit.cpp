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

#include "qcstat/circuit.hpp"

#include <fmt/format.h>

#include <cmath>

namespace qcstat {

LayeredCircuit::LayeredCircuit(std::vector<DensePTM> layers)
    : layers_(std::move(layers)) {
  if (layers_.empty()) {
    throw ValidationError("LayeredCircuit: depth must be >= 1");
  }
  for (std::size_t i = 1; i < layers_.size(); ++i) {
    if (layers_[i].n_in() != layers_[i - 1].n_out()) {
      throw ValidationError(fmt::format(
          "LayeredCircuit: layer {} consumes {} qubits but layer {} produces "
          "{}",
          i + 1, layers_[i].n_in(), i, layers_[i - 1].n_out()));
    }
  }
}

std::vector<int> LayeredCircuit::widths() const {
  std::vector<int> w;
  w.reserve(layers_.size() + 1);
  w.push_back(layers_.front().n_in());
  for (const auto& layer : layers_) {
    w.push_back(layer.n_out());
  }
  return w;
}

DensePTM LayeredCircuit::end_to_end() const {
  DensePTM result = layers_.front();
  for (std::size_t i = 1; i < layers_.size(); ++i) {
    result = compose_ptm(layers_[i], result);
  }
  return result;
}

LayeredCircuit concat(const LayeredCircuit& first, const LayeredCircuit& then) {
  std::vector<DensePTM> layers = first.layers();
  layers.insert(layers.end(), then.layers().begin(), then.layers().end());
  return LayeredCircuit(std::move(layers));
}

LayeredCircuit tensor_circuits(const LayeredCircuit& a, const LayeredCircuit& b,
                               int max_qubits) {
  if (a.depth() != b.depth()) {
    throw ValidationError("tensor_circuits: circuits must have equal depth");
  }
  std::vector<DensePTM> layers;
  layers.reserve(a.depth());
  for (int i = 0; i < a.depth(); ++i) {
    layers.push_back(tensor_ptm(a.layers()[i], b.layers()[i], max_qubits));
  }
  return LayeredCircuit(std::move(layers));
}

namespace {

// Per-layer norm, hat block when modified. A non-unital layer under the
// modified measures is a hard error; the hat measures are undefined there.
double layer_norm(const DensePTM& layer, std::size_t index, double p, double q,
                  bool modified) {
  if (!modified) {
    return group_norm(layer, p, q);
  }
  try {
    return modified_group_norm(modified_ptm(layer), p, q);
  } catch (const ValidationError& e) {
    throw ValidationError(
        fmt::format("layer {} is not unital: {}", index + 1, e.what()));
  }
}

}  // namespace

double mu_measure(const LayeredCircuit& c, double p, double q, bool modified) {
  double prod = 1.0;
  for (std::size_t i = 0; i < c.layers().size(); ++i) {
    prod *= layer_norm(c.layers()[i], i, p, q, modified);
  }
  return prod;
}

double nu_measure(const LayeredCircuit& c, double p, double q, double r,
                  bool modified) {
  if (!(r > 0.0) || std::isnan(r)) {
    throw ValidationError(fmt::format("nu_measure: r must be > 0, got {}", r));
  }
  KahanSum acc;
  for (std::size_t i = 0; i < c.layers().size(); ++i) {
    acc.add(std::pow(layer_norm(c.layers()[i], i, p, q, modified), r));
  }
  return std::pow(acc.value() / c.depth(), 1.0 / r);
}

namespace {

Eigen::MatrixXd layer_block(const DensePTM& layer, std::size_t index,
                            bool modified) {
  if (!modified) {
    return layer.entries();
  }
  try {
    return modified_ptm(layer).entries;
  } catch (const ValidationError& e) {
    throw ValidationError(
        fmt::format("layer {} is not unital: {}", index + 1, e.what()));
  }
}

}  // namespace

Eigen::VectorXd gamma_per_output(const LayeredCircuit& c, double p,
                                 bool modified) {
  if (!(p > 0.0) || std::isnan(p)) {
    throw ValidationError(
        fmt::format("gamma_per_output: p must be > 0, got {}", p));
  }
  if (std::isinf(p)) {
    // Max path weight: max-times propagation of entrywise |.|.
    Eigen::VectorXd v =
        Eigen::VectorXd::Ones(layer_block(c.layers()[0], 0, modified).cols());
    for (std::size_t i = 0; i < c.layers().size(); ++i) {
      Eigen::MatrixXd b = layer_block(c.layers()[i], i, modified).cwiseAbs();
      Eigen::VectorXd next = Eigen::VectorXd::Zero(b.rows());
      for (Eigen::Index z = 0; z < b.rows(); ++z) {
        double best = 0.0;
        for (Eigen::Index x = 0; x < b.cols(); ++x) {
          best = std::max(best, b(z, x) * v[x]);
        }
        next[z] = best;
      }
      v = next;
    }
    return v;
  }
  Eigen::VectorXd v =
      Eigen::VectorXd::Ones(layer_block(c.layers()[0], 0, modified).cols());
  for (std::size_t i = 0; i < c.layers().size(); ++i) {
    Eigen::MatrixXd b = layer_block(c.layers()[i], i, modified)
                            .cwiseAbs()
                            .array()
                            .pow(p)
                            .matrix();
    v = (b * v).eval();
  }
  return v.array().pow(1.0 / p).matrix();
}

double gamma_measure(const LayeredCircuit& c, double p, double q,
                     bool modified) {
  NormParams{p, q};  // validates
  Eigen::VectorXd per_output = gamma_per_output(c, p, modified);
  const auto count = static_cast<double>(per_output.size());
  if (std::isinf(q)) {
    return per_output.maxCoeff();
  }
  KahanSum acc;
  for (Eigen::Index z = 0; z < per_output.size(); ++z) {
    acc.add(std::pow(per_output[z], q));
  }
  return std::pow(acc.value() / count, 1.0 / q);
}

double circuit_measure(const LayeredCircuit& c, const MeasureKind& kind,
                       double p, double q) {
  switch (kind.variant) {
    case MeasureKind::Variant::mu:
      return mu_measure(c, p, q, kind.modified);
    case MeasureKind::Variant::nu:
      return nu_measure(c, p, q, kind.r, kind.modified);
    case MeasureKind::Variant::gamma:
      return gamma_measure(c, p, q, kind.modified);
  }
  throw ValidationError("circuit_measure: unknown measure kind");
}

std::optional<double> min_realization_resource(
    const DensePTM& target, std::span<const LayeredCircuit> family,
    const MeasureKind& kind, double p, double q, double tol) {
  if (family.empty()) {
    throw ValidationError("min_realization_resource: empty family");
  }
  std::optional<double> best;
  for (const LayeredCircuit& member : family) {
    if (member.n_in() != target.n_in() || member.n_out() != target.n_out()) {
      throw ValidationError(fmt::format(
          "min_realization_resource: family members map {} -> {} qubits but "
          "target maps {} -> {}",
          member.n_in(), member.n_out(), target.n_in(), target.n_out()));
    }
    DensePTM realized = member.end_to_end();
    double dev = (realized.entries() - target.entries()).cwiseAbs().maxCoeff();
    if (dev > tol) continue;
    double value = circuit_measure(member, kind, p, q);
    if (!best.has_value() || value < *best) {
      best = value;
    }
  }
  return best;
}

}  // namespace qcstat
