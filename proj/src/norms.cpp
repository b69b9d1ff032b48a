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

#include "qcstat/norms.hpp"

#include <fmt/format.h>

#include <cmath>

namespace qcstat {

void NormParams::validate() const {
  if (!(p > 0.0) || std::isnan(p)) {
    throw ValidationError(fmt::format("NormParams: p must be > 0, got {}", p));
  }
  if (!(q > 0.0) || std::isnan(q)) {
    throw ValidationError(fmt::format("NormParams: q must be > 0, got {}", q));
  }
}

double lp_norm(const Eigen::VectorXd& v, double p) {
  if (!(p > 0.0) || std::isnan(p)) {
    throw ValidationError(fmt::format("lp_norm: p must be > 0, got {}", p));
  }
  if (std::isinf(p)) {
    double mx = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      mx = std::max(mx, std::abs(v[j]));
    }
    return mx;
  }
  KahanSum acc;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    double a = std::abs(v[j]);
    if (a != 0.0) {
      acc.add(std::pow(a, p));
    }
  }
  double s = acc.value();
  if (s == 0.0) {
    return 0.0;
  }
  if (p == 1.0) {
    return s;
  }
  if (p == 2.0) {
    return std::sqrt(s);
  }
  return std::pow(s, 1.0 / p);
}

double group_norm(const Eigen::MatrixXd& m, double p, double q) {
  NormParams{p, q};  // validates
  if (m.rows() == 0 || m.cols() == 0) {
    throw ValidationError("group_norm: empty matrix");
  }
  const Eigen::Index n1 = m.rows();
  if (std::isinf(q)) {
    double mx = 0.0;
    for (Eigen::Index i = 0; i < n1; ++i) {
      mx = std::max(mx, lp_norm(m.row(i).transpose(), p));
    }
    return mx;
  }
  KahanSum acc;
  for (Eigen::Index i = 0; i < n1; ++i) {
    double r = lp_norm(m.row(i).transpose(), p);
    if (r != 0.0) {
      acc.add(std::pow(r, q));
    }
  }
  double s = acc.value() / static_cast<double>(n1);
  if (s == 0.0) {
    return 0.0;
  }
  return std::pow(s, 1.0 / q);
}

}  // namespace qcstat
