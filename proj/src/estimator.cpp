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

#include "qcstat/estimator.hpp"

#include <fmt/format.h>

#include <bit>
#include <cctype>
#include <cmath>

#include "qcstat/parallel.hpp"
#include "qcstat/rng.hpp"

namespace qcstat {

namespace {

// Expands one alphabet entry of a gate-set spec into embedded layer PTMs.
std::vector<DensePTM> expand_gate(const FamilyGate& gate, int width,
                                  int max_qubits) {
  if (!gate.param_grid.empty()) {
    throw ValidationError(
        "gate-set families take fixed parameters, not param_grid");
  }
  const GateInfo& info = gate_info(gate.name);
  if (!gate.targets.empty()) {
    return {ptm_named(gate.name, gate.params, gate.targets, width, max_qubits)};
  }
  std::vector<DensePTM> placements;
  if (info.arity == 1) {
    for (int t = 0; t < width; ++t) {
      placements.push_back(
          ptm_named(gate.name, gate.params, {t}, width, max_qubits));
    }
  } else if (info.arity == 2) {
    // CZ is symmetric in its targets; enumerate unordered pairs for it and
    // ordered pairs otherwise.
    std::string lower = gate.name;
    for (char& ch : lower) ch = static_cast<char>(std::tolower(ch));
    const bool symmetric = lower == "cz";
    for (int a = 0; a < width; ++a) {
      for (int b = 0; b < width; ++b) {
        if (a == b) continue;
        if (symmetric && a > b) continue;
        placements.push_back(
            ptm_named(gate.name, gate.params, {a, b}, width, max_qubits));
      }
    }
  } else {
    throw ValidationError(
        fmt::format("cannot auto-place {}-qubit gate '{}'", info.arity,
                    gate.name));
  }
  if (placements.empty()) {
    throw ValidationError(fmt::format(
        "gate '{}' has no placement on a width-{} register", gate.name, width));
  }
  return placements;
}

CircuitFamily enumerate_gate_set(const GateSetSpec& spec, std::size_t cap,
                                 int max_qubits) {
  if (spec.depth < 1) {
    throw ValidationError("gate-set family: depth must be >= 1");
  }
  check_qubit_count(spec.width, max_qubits, "enumerate_family");
  if (spec.gates.empty()) {
    throw ValidationError("gate-set family: empty gate list");
  }
  std::vector<DensePTM> alphabet;
  for (const FamilyGate& g : spec.gates) {
    auto placements = expand_gate(g, spec.width, max_qubits);
    alphabet.insert(alphabet.end(), placements.begin(), placements.end());
  }
  std::size_t count = 1;
  for (int d = 0; d < spec.depth; ++d) {
    count *= alphabet.size();
    if (count > cap) {
      throw ResourceLimitError(fmt::format(
          "gate-set family of {}^{} members exceeds cap {}", alphabet.size(),
          spec.depth, cap));
    }
  }
  CircuitFamily family;
  family.members.reserve(count);
  std::vector<std::size_t> choice(spec.depth, 0);
  for (std::size_t w = 0; w < count; ++w) {
    // Word w in base |alphabet|, first layer most significant.
    std::size_t rem = w;
    for (int d = spec.depth - 1; d >= 0; --d) {
      choice[d] = rem % alphabet.size();
      rem /= alphabet.size();
    }
    std::vector<DensePTM> layers;
    layers.reserve(spec.depth);
    for (int d = 0; d < spec.depth; ++d) {
      layers.push_back(alphabet[choice[d]]);
    }
    family.members.emplace_back(std::move(layers));
  }
  family.widths = family.members.front().widths();
  return family;
}

CircuitFamily enumerate_grid(const GridSpec& spec, std::size_t cap,
                             int max_qubits) {
  if (spec.layers.empty()) {
    throw ValidationError("grid family: template has no layers");
  }
  check_qubit_count(spec.width, max_qubits, "enumerate_family");
  // Gate PTM per grid value, or a single PTM for fixed gates.
  struct Slot {
    std::vector<DensePTM> options;
    bool is_axis;
  };
  std::vector<std::vector<Slot>> slots(spec.layers.size());
  std::size_t count = 1;
  for (std::size_t li = 0; li < spec.layers.size(); ++li) {
    if (spec.layers[li].empty()) {
      throw ValidationError(fmt::format("grid family: layer {} has no gates",
                                        li + 1));
    }
    for (const FamilyGate& g : spec.layers[li]) {
      if (g.targets.empty()) {
        throw ValidationError(
            fmt::format("grid family: gate '{}' needs explicit targets",
                        g.name));
      }
      Slot slot;
      if (g.param_grid.empty()) {
        slot.is_axis = false;
        slot.options.push_back(
            ptm_named(g.name, g.params, g.targets, spec.width, max_qubits));
      } else {
        slot.is_axis = true;
        for (const auto& values : g.param_grid) {
          slot.options.push_back(
              ptm_named(g.name, values, g.targets, spec.width, max_qubits));
        }
        count *= slot.options.size();
        if (count > cap) {
          throw ResourceLimitError(
              fmt::format("grid family exceeds cap {}", cap));
        }
      }
      slots[li].push_back(std::move(slot));
    }
  }
  CircuitFamily family;
  family.members.reserve(count);
  for (std::size_t combo = 0; combo < count; ++combo) {
    // Axis indices in template order, last axis varying fastest.
    std::vector<std::size_t> axis_choice;
    std::size_t divisor = count;
    for (const auto& layer : slots) {
      for (const auto& slot : layer) {
        if (slot.is_axis) {
          divisor /= slot.options.size();
          axis_choice.push_back((combo / divisor) % slot.options.size());
        }
      }
    }
    std::vector<DensePTM> layers;
    layers.reserve(slots.size());
    std::size_t axis_pos = 0;
    for (const auto& layer : slots) {
      DensePTM m = identity_ptm(spec.width, max_qubits);
      for (const auto& slot : layer) {
        const DensePTM& gate =
            slot.is_axis ? slot.options[axis_choice[axis_pos]] : slot.options[0];
        if (slot.is_axis) ++axis_pos;
        m = compose_ptm(gate, m);
      }
      layers.push_back(std::move(m));
    }
    family.members.emplace_back(std::move(layers));
  }
  family.widths = family.members.front().widths();
  return family;
}

}  // namespace

CircuitFamily enumerate_family(const FamilySpec& spec) {
  if (std::holds_alternative<GateSetSpec>(spec.spec)) {
    return enumerate_gate_set(std::get<GateSetSpec>(spec.spec), spec.size_cap,
                              spec.max_qubits);
  }
  return enumerate_grid(std::get<GridSpec>(spec.spec), spec.size_cap,
                        spec.max_qubits);
}

FValueTable f_value_table(const CircuitFamily& family,
                          std::span<const PauliVec> samples,
                          const PauliVec& alpha) {
  if (family.members.empty()) {
    throw ValidationError("f_value_table: empty family");
  }
  if (samples.empty()) {
    throw ValidationError("f_value_table: no samples");
  }
  Eigen::MatrixXd values(static_cast<Eigen::Index>(samples.size()),
                         static_cast<Eigen::Index>(family.members.size()));
  for (std::size_t c = 0; c < family.members.size(); ++c) {
    const auto& layers = family.members[c].layers();
    for (std::size_t i = 0; i < samples.size(); ++i) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          expectation(alpha, std::span<const DensePTM>(layers), samples[i]);
    }
  }
  return FValueTable{std::move(values)};
}

RadEstimate rademacher_exact(const FValueTable& table, int workers, int m_cap) {
  const Eigen::Index m = table.values.rows();
  const Eigen::Index cols = table.values.cols();
  if (m < 1 || cols < 1) {
    throw ValidationError("rademacher_exact: empty table");
  }
  if (m > m_cap) {
    throw ValidationError(fmt::format(
        "rademacher_exact: m = {} exceeds the exact-enumeration cap {}; use "
        "the Monte Carlo estimator",
        m, m_cap));
  }
  const std::size_t total = std::size_t{1} << m;
  constexpr std::size_t kBlock = 1 << 14;
  const std::size_t num_blocks = (total + kBlock - 1) / kBlock;
  std::vector<double> block_sums(num_blocks, 0.0);

  for_each_block(total, kBlock, workers, [&](std::size_t b, std::size_t begin,
                                             std::size_t end) {
    // Gray-code walk: pattern for index t is g = t ^ (t >> 1); consecutive
    // indices differ in exactly one sign.
    std::size_t gray = begin ^ (begin >> 1);
    Eigen::VectorXd eps(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      eps[i] = ((gray >> i) & 1u) ? -1.0 : 1.0;
    }
    Eigen::RowVectorXd s = eps.transpose() * table.values;
    KahanSum acc;
    for (std::size_t t = begin; t < end; ++t) {
      acc.add(s.cwiseAbs().maxCoeff());
      if (t + 1 < end) {
        const int flip = std::countr_zero(t + 1);
        const double old_sign = ((gray >> flip) & 1u) ? -1.0 : 1.0;
        s -= 2.0 * old_sign * table.values.row(flip);
        gray ^= std::size_t{1} << flip;
      }
    }
    block_sums[b] = acc.value();
  });

  KahanSum total_sum;
  for (double bs : block_sums) {
    total_sum.add(bs);
  }
  RadEstimate est;
  est.method = RadEstimate::Method::exact;
  est.value = total_sum.value() / static_cast<double>(total) /
              static_cast<double>(m);
  return est;
}

RadEstimate rademacher_mc(const FValueTable& table, std::uint64_t draws,
                          std::uint64_t seed, int workers) {
  const Eigen::Index m = table.values.rows();
  const Eigen::Index cols = table.values.cols();
  if (m < 1 || cols < 1) {
    throw ValidationError("rademacher_mc: empty table");
  }
  if (draws < 100) {
    throw ValidationError(
        fmt::format("rademacher_mc: needs at least 100 draws, got {}", draws));
  }
  const CounterRng rng{seed};
  constexpr std::size_t kBlock = 1024;
  const std::size_t num_blocks = (draws + kBlock - 1) / kBlock;
  std::vector<double> block_sum(num_blocks, 0.0);
  std::vector<double> block_sumsq(num_blocks, 0.0);

  for_each_block(draws, kBlock, workers, [&](std::size_t b, std::size_t begin,
                                             std::size_t end) {
    Eigen::VectorXd eps(m);
    KahanSum sum, sumsq;
    for (std::size_t d = begin; d < end; ++d) {
      for (Eigen::Index i = 0; i < m; ++i) {
        eps[i] = rng.sign_at(static_cast<std::uint64_t>(d) *
                                 static_cast<std::uint64_t>(m) +
                             static_cast<std::uint64_t>(i));
      }
      const double sup =
          (eps.transpose() * table.values).cwiseAbs().maxCoeff() /
          static_cast<double>(m);
      sum.add(sup);
      sumsq.add(sup * sup);
    }
    block_sum[b] = sum.value();
    block_sumsq[b] = sumsq.value();
  });

  KahanSum sum, sumsq;
  for (std::size_t b = 0; b < num_blocks; ++b) {
    sum.add(block_sum[b]);
    sumsq.add(block_sumsq[b]);
  }
  const double n = static_cast<double>(draws);
  const double mean = sum.value() / n;
  double var = (sumsq.value() - n * mean * mean) / (n - 1.0);
  if (var < 0.0) var = 0.0;

  RadEstimate est;
  est.method = RadEstimate::Method::monte_carlo;
  est.value = mean;
  est.draws = draws;
  est.seed = seed;
  est.stderr_value = std::sqrt(var / n);
  return est;
}

double family_resource(const CircuitFamily& family, BoundVariant variant,
                       double p, double q, double r) {
  if (family.members.empty()) {
    throw ValidationError("family_resource: empty family");
  }
  double worst = 0.0;
  for (std::size_t c = 0; c < family.members.size(); ++c) {
    const LayeredCircuit& member = family.members[c];
    double value = 0.0;
    try {
      switch (variant) {
        case BoundVariant::single:
          value = group_norm(member.end_to_end(), p, q);
          break;
        case BoundVariant::single_unital:
          value = modified_group_norm(modified_ptm(member.end_to_end()), p, q);
          break;
        case BoundVariant::depth_mu:
          value = mu_measure(member, p, q, false);
          break;
        case BoundVariant::depth_mu_unital:
          value = mu_measure(member, p, q, true);
          break;
        case BoundVariant::depth_nu:
          value = nu_measure(member, p, q, r, false);
          break;
        case BoundVariant::depth_nu_unital:
          value = nu_measure(member, p, q, r, true);
          break;
        case BoundVariant::depth_gamma:
          value = gamma_measure(member, p, q, false);
          break;
        case BoundVariant::depth_gamma_unital:
          value = gamma_measure(member, p, q, true);
          break;
      }
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format(
          "family_resource: variant '{}' failed on member {}: {}",
          to_string(variant), c, e.what()));
    }
    worst = std::max(worst, value);
  }
  return worst;
}

ExperimentReport verify_bounds(const CircuitFamily& family,
                               std::span<const PauliVec> samples,
                               const PauliVec& alpha,
                               std::span<const NormParams> norms,
                               std::span<const BoundVariant> variants,
                               const VerifyOptions& opts) {
  ExperimentReport report;
  report.m = static_cast<long long>(samples.size());
  report.family_size = family.members.size();
  report.widths = family.widths;
  report.seed = opts.seed;

  FValueTable table = f_value_table(family, samples, alpha);
  report.empirical =
      report.m <= opts.exact_cap
          ? rademacher_exact(table, opts.workers,
                             static_cast<int>(opts.exact_cap))
          : rademacher_mc(table, opts.draws, opts.seed, opts.workers);

  const double fuzz = 3.0 * report.empirical.stderr_value;
  for (BoundVariant variant : variants) {
    for (const NormParams& pq : norms) {
      BoundCheckRow row;
      row.variant = variant;
      row.p = pq.p;
      row.q = pq.q;
      row.resource = family_resource(family, variant, pq.p, pq.q, opts.r);
      KFactor k = k_factor(samples, alpha, pq.p, is_unital_variant(variant));
      row.k = k.value;
      BoundRequest req;
      req.variant = variant;
      req.p = pq.p;
      req.q = pq.q;
      req.resource = row.resource;
      req.samples = report.m;
      if (is_depth_variant(variant)) {
        req.widths = family.widths;
      } else {
        req.widths = {family.widths.front(), family.widths.back()};
      }
      row.bound = rad_bound(req, k);
      row.satisfied = row.bound >= report.empirical.value - fuzz;
      report.all_satisfied = report.all_satisfied && row.satisfied;
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace qcstat
