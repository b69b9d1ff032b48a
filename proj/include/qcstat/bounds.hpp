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

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "qcstat/ptm.hpp"

namespace qcstat {

// Holder conjugate p* with 1/p + 1/p* = 1; p = 1 -> inf, p = inf -> 1.
double holder_conjugate(double p);

// Which Rademacher bound to evaluate. The `single` pair treats the whole
// circuit as one channel; the depth variants take the layer structure into
// account with the multiplicative (mu), averaged (nu) or path (gamma)
// resource measure. The *_unital variants use the modified representation
// objects and require a traceless observable.
enum class BoundVariant {
  single,
  single_unital,
  depth_nu,
  depth_nu_unital,
  depth_mu,
  depth_mu_unital,
  depth_gamma,
  depth_gamma_unital,
};

BoundVariant bound_variant_from_string(const std::string& s);
std::string to_string(BoundVariant v);
bool is_unital_variant(BoundVariant v);
bool is_depth_variant(BoundVariant v);

struct BoundRequest {
  BoundVariant variant = BoundVariant::single;
  double p = 1.0;
  double q = kInf;
  double resource = 0.0;      // mu, nu or gamma value
  std::vector<int> widths;    // (n_0, ..., n_l) in circuit order;
                              // single variants use (n_0, n_1)
  long long samples = 1;      // m
};

// K_p(S, H) = ||alpha||_p max_i ||f_I(x_i)||_{p*}; with hat = true the
// identity entries of alpha and the f_I are dropped (requires traceless H).
struct KFactor {
  double value = 0.0;
  bool hat = false;
};

KFactor k_factor(std::span<const PauliVec> samples, const PauliVec& alpha,
                 double p, bool hat);

// Right-hand side of the requested bound:
//   resource-factor * width-factor * rate * K
// where the rate is sqrt(min{p*, 8 n_0})/sqrt(m) for 1 <= p <= 2 and
// sqrt(p*)/m^{1/p} for 2 < p < inf. The K factor's hat flag must match the
// variant.
double rad_bound(const BoundRequest& req, const KFactor& k);

// Finite-class bound max_{v in A'} ||v - mean(A')||_2 sqrt(2 log|A'|)/m
// where A' = A u (-A). The symmetrization makes the bound dominate the
// absolute-value form of the empirical Rademacher average.
double massart_bound(std::span<const Eigen::VectorXd> vectors);

}  // namespace qcstat
