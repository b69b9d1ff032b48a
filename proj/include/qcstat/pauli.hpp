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
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qcstat/common.hpp"

namespace qcstat {

// Digit labels: 0 = I, 1 = X, 2 = Y, 3 = Z.
//
// An n-qubit Pauli string is a base-4 word (d_0, ..., d_{n-1}) with qubit 0
// as the MOST significant digit, so the linear index of a string is
// sum_i d_i * 4^{n-1-i}. All Pauli-basis vectors and matrices in this
// library are ordered by that linear index.
class PauliIndex {
 public:
  explicit PauliIndex(std::vector<std::uint8_t> digits,
                      int max_qubits = kDefaultQubitCap);

  static PauliIndex from_linear(std::size_t index, int num_qubits,
                                int max_qubits = kDefaultQubitCap);
  // Text form, e.g. "IXZ" <-> digits (0, 1, 3).
  static PauliIndex from_string(const std::string& s,
                                int max_qubits = kDefaultQubitCap);

  int num_qubits() const { return static_cast<int>(digits_.size()); }
  const std::vector<std::uint8_t>& digits() const { return digits_; }
  std::size_t linear() const;
  std::string str() const;

  bool operator==(const PauliIndex& other) const = default;

 private:
  std::vector<std::uint8_t> digits_;
};

// Explicit 2^n x 2^n matrix of the Pauli string, built as the Kronecker
// product of single-qubit Paulis in digit order.
Eigen::MatrixXcd pauli_matrix(const PauliIndex& idx,
                              int max_qubits = kDefaultQubitCap);

// Coefficients a_z = (1/2^n) Tr[P_z A] for all 4^n Pauli strings z, in
// linear-index order. This is the workhorse behind representation matrices
// and vectors; it runs in O(n 4^n) via a blockwise recursion rather than
// 4^n explicit traces.
Eigen::VectorXcd pauli_coefficients(const Eigen::MatrixXcd& a);

}  // namespace qcstat
