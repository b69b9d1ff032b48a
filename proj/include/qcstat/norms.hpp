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

#include "qcstat/common.hpp"

namespace qcstat {

// (p, q) exponent pair for group norms. Both exponents live in (0, inf];
// values below 1 give quasi-norms and are accepted. Infinity is handled as
// an exact limit (max), never as a large finite exponent.
struct NormParams {
  double p;
  double q;

  NormParams(double p_, double q_) : p(p_), q(q_) { validate(); }
  void validate() const;
};

// l_p norm of a vector: (sum |v_j|^p)^{1/p}, max |v_j| at p = inf.
// Accumulation is compensated so results are reproducible to ~1e-15 for
// 4^n-length rows.
double lp_norm(const Eigen::VectorXd& v, double p);

// (p, q) group norm of a matrix with N1 rows:
// ((1/N1) sum_i ||row_i||_p^q)^{1/q}, with the q = inf limit being the max
// over row p-norms.
double group_norm(const Eigen::MatrixXd& m, double p, double q);

inline double group_norm(const Eigen::MatrixXd& m, const NormParams& pq) {
  return group_norm(m, pq.p, pq.q);
}

}  // namespace qcstat
