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

#include "qcstat/bounds.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace qcstat {

double holder_conjugate(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw ValidationError(
        fmt::format("holder_conjugate: p must be >= 1, got {}", p));
  }
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

BoundVariant bound_variant_from_string(const std::string& s) {
  if (s == "single") return BoundVariant::single;
  if (s == "single_unital") return BoundVariant::single_unital;
  if (s == "depth_nu") return BoundVariant::depth_nu;
  if (s == "depth_nu_unital") return BoundVariant::depth_nu_unital;
  if (s == "depth_mu") return BoundVariant::depth_mu;
  if (s == "depth_mu_unital") return BoundVariant::depth_mu_unital;
  if (s == "depth_gamma") return BoundVariant::depth_gamma;
  if (s == "depth_gamma_unital") return BoundVariant::depth_gamma_unital;
  throw ValidationError(fmt::format("unknown bound variant '{}'", s));
}

std::string to_string(BoundVariant v) {
  switch (v) {
    case BoundVariant::single: return "single";
    case BoundVariant::single_unital: return "single_unital";
    case BoundVariant::depth_nu: return "depth_nu";
    case BoundVariant::depth_nu_unital: return "depth_nu_unital";
    case BoundVariant::depth_mu: return "depth_mu";
    case BoundVariant::depth_mu_unital: return "depth_mu_unital";
    case BoundVariant::depth_gamma: return "depth_gamma";
    case BoundVariant::depth_gamma_unital: return "depth_gamma_unital";
  }
  return "?";
}

bool is_unital_variant(BoundVariant v) {
  return v == BoundVariant::single_unital || v == BoundVariant::depth_nu_unital ||
         v == BoundVariant::depth_mu_unital ||
         v == BoundVariant::depth_gamma_unital;
}

bool is_depth_variant(BoundVariant v) {
  return v != BoundVariant::single && v != BoundVariant::single_unital;
}

namespace {

Eigen::VectorXd drop_identity_entry(const Eigen::VectorXd& v) {
  return v.tail(v.size() - 1);
}

}  // namespace

KFactor k_factor(std::span<const PauliVec> samples, const PauliVec& alpha,
                 double p, bool hat) {
  if (alpha.kind != VecKind::observable) {
    throw ValidationError("k_factor: alpha must be an observable vector");
  }
  if (samples.empty()) {
    throw ValidationError("k_factor: no samples");
  }
  const double pstar = holder_conjugate(p);
  if (hat && std::abs(alpha.entries[0]) > kAssertTol) {
    throw ValidationError(fmt::format(
        "k_factor: hat variant requires a traceless observable, but the "
        "identity coefficient is {:.3e}",
        alpha.entries[0]));
  }
  const double alpha_norm =
      lp_norm(hat ? drop_identity_entry(alpha.entries) : alpha.entries, p);
  double max_state_norm = 0.0;
  for (const PauliVec& f : samples) {
    if (f.kind != VecKind::state) {
      throw ValidationError("k_factor: samples must be state vectors");
    }
    Eigen::VectorXd v = hat ? drop_identity_entry(f.entries) : f.entries;
    max_state_norm = std::max(max_state_norm, lp_norm(v, pstar));
  }
  return KFactor{alpha_norm * max_state_norm, hat};
}

double rad_bound(const BoundRequest& req, const KFactor& k) {
  if (std::isnan(req.p) || req.p < 1.0 || std::isinf(req.p)) {
    throw ValidationError(
        fmt::format("rad_bound: p must lie in [1, inf), got {}", req.p));
  }
  if (!(req.q > 0.0) || std::isnan(req.q)) {
    throw ValidationError(fmt::format("rad_bound: q must be > 0, got {}", req.q));
  }
  if (req.samples < 1) {
    throw ValidationError("rad_bound: sample count m must be >= 1");
  }
  if (req.resource < 0.0) {
    throw ValidationError("rad_bound: resource value must be >= 0");
  }
  if (k.hat != is_unital_variant(req.variant)) {
    throw ValidationError(fmt::format(
        "rad_bound: K factor {} the hat form but variant '{}' {} it",
        k.hat ? "uses" : "does not use", to_string(req.variant),
        is_unital_variant(req.variant) ? "requires" : "forbids"));
  }
  if (req.widths.size() < 2) {
    throw ValidationError("rad_bound: widths must contain (n_0, ..., n_l)");
  }
  if (!is_depth_variant(req.variant) && req.widths.size() != 2) {
    throw ValidationError(fmt::format(
        "rad_bound: variant '{}' takes widths (n_0, n_1), got {} entries",
        to_string(req.variant), req.widths.size()));
  }
  for (int n : req.widths) {
    if (n < 1) {
      throw ValidationError("rad_bound: widths must be >= 1");
    }
  }

  const double pstar = holder_conjugate(req.p);
  const double expo = std::max(ext_reciprocal(pstar), ext_reciprocal(req.q));
  const int n0 = req.widths.front();
  const int depth = static_cast<int>(req.widths.size()) - 1;
  const double m = static_cast<double>(req.samples);

  double rate;
  if (req.p <= 2.0) {
    rate = std::sqrt(std::min(pstar, 8.0 * n0)) / std::sqrt(m);
  } else {
    rate = std::sqrt(pstar) / std::pow(m, 1.0 / req.p);
  }

  // Per-variant width factor and resource exponent. N_i = 4^{n_i} - 1 in
  // the unital (hat) variants.
  double width_factor = 1.0;
  double resource_factor;
  auto full_size = [](int n) { return std::pow(4.0, n); };
  auto hat_size = [](int n) { return std::pow(4.0, n) - 1.0; };
  switch (req.variant) {
    case BoundVariant::single:
      width_factor = std::pow(full_size(req.widths[1]), expo);
      resource_factor = req.resource;
      break;
    case BoundVariant::single_unital:
      width_factor = std::pow(hat_size(req.widths[1]), expo);
      resource_factor = req.resource;
      break;
    case BoundVariant::depth_nu:
    case BoundVariant::depth_mu: {
      int width_sum = 0;
      for (int i = 1; i <= depth; ++i) width_sum += req.widths[i];
      width_factor = std::pow(4.0, width_sum * expo);
      resource_factor = req.variant == BoundVariant::depth_nu
                            ? std::pow(req.resource, depth)
                            : req.resource;
      break;
    }
    case BoundVariant::depth_nu_unital:
    case BoundVariant::depth_mu_unital: {
      for (int i = 1; i <= depth; ++i) {
        width_factor *= std::pow(hat_size(req.widths[i]), expo);
      }
      resource_factor = req.variant == BoundVariant::depth_nu_unital
                            ? std::pow(req.resource, depth)
                            : req.resource;
      break;
    }
    case BoundVariant::depth_gamma: {
      width_factor = std::pow(full_size(req.widths[depth]), expo);
      for (int i = 1; i < depth; ++i) {
        width_factor *= std::pow(full_size(req.widths[i]), ext_reciprocal(pstar));
      }
      resource_factor = req.resource;
      break;
    }
    case BoundVariant::depth_gamma_unital: {
      width_factor = std::pow(hat_size(req.widths[depth]), expo);
      for (int i = 1; i < depth; ++i) {
        width_factor *= std::pow(hat_size(req.widths[i]), ext_reciprocal(pstar));
      }
      resource_factor = req.resource;
      break;
    }
    default:
      throw ValidationError("rad_bound: unknown variant");
  }
  return resource_factor * width_factor * rate * k.value;
}

double massart_bound(std::span<const Eigen::VectorXd> vectors) {
  if (vectors.empty()) {
    throw ValidationError("massart_bound: empty set");
  }
  const Eigen::Index m = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != m) {
      throw ValidationError("massart_bound: vectors have unequal lengths");
    }
  }
  // Symmetrize: A' = A u (-A), deduplicated exactly.
  std::set<std::vector<double>> unique;
  for (const auto& v : vectors) {
    std::vector<double> plus(v.data(), v.data() + v.size());
    std::vector<double> minus(plus.size());
    for (std::size_t j = 0; j < plus.size(); ++j) minus[j] = -plus[j];
    unique.insert(std::move(plus));
    unique.insert(std::move(minus));
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
  for (const auto& v : unique) {
    mean += Eigen::Map<const Eigen::VectorXd>(v.data(), m);
  }
  mean /= static_cast<double>(unique.size());
  double max_spread = 0.0;
  for (const auto& v : unique) {
    max_spread = std::max(
        max_spread, (Eigen::Map<const Eigen::VectorXd>(v.data(), m) - mean).norm());
  }
  return max_spread * std::sqrt(2.0 * std::log(static_cast<double>(unique.size()))) /
         static_cast<double>(m);
}

}  // namespace qcstat
