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

#include "qcstat/pauli.hpp"

#include <fmt/format.h>

#include <unsupported/Eigen/KroneckerProduct>

namespace qcstat {

namespace {

using Complex = std::complex<double>;

const Eigen::Matrix2cd& single_qubit_pauli(std::uint8_t d) {
  static const Eigen::Matrix2cd table[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return table[d];
}

constexpr char kPauliChars[] = {'I', 'X', 'Y', 'Z'};

}  // namespace

PauliIndex::PauliIndex(std::vector<std::uint8_t> digits, int max_qubits)
    : digits_(std::move(digits)) {
  check_qubit_count(static_cast<int>(digits_.size()), max_qubits, "PauliIndex");
  for (std::uint8_t d : digits_) {
    if (d > 3) {
      throw ValidationError(
          fmt::format("PauliIndex: digit {} outside {{0,1,2,3}}", d));
    }
  }
}

PauliIndex PauliIndex::from_linear(std::size_t index, int num_qubits,
                                   int max_qubits) {
  check_qubit_count(num_qubits, max_qubits, "PauliIndex");
  if (index >= pow4(num_qubits)) {
    throw ValidationError(fmt::format(
        "PauliIndex: linear index {} out of range for {} qubits", index,
        num_qubits));
  }
  std::vector<std::uint8_t> digits(num_qubits);
  for (int i = num_qubits - 1; i >= 0; --i) {
    digits[i] = static_cast<std::uint8_t>(index & 3u);
    index >>= 2;
  }
  return PauliIndex(std::move(digits), max_qubits);
}

PauliIndex PauliIndex::from_string(const std::string& s, int max_qubits) {
  std::vector<std::uint8_t> digits;
  digits.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'I': case 'i': digits.push_back(0); break;
      case 'X': case 'x': digits.push_back(1); break;
      case 'Y': case 'y': digits.push_back(2); break;
      case 'Z': case 'z': digits.push_back(3); break;
      default:
        throw ValidationError(
            fmt::format("PauliIndex: invalid character '{}' in \"{}\"", c, s));
    }
  }
  return PauliIndex(std::move(digits), max_qubits);
}

std::size_t PauliIndex::linear() const {
  std::size_t index = 0;
  for (std::uint8_t d : digits_) {
    index = (index << 2) | d;
  }
  return index;
}

std::string PauliIndex::str() const {
  std::string s;
  s.reserve(digits_.size());
  for (std::uint8_t d : digits_) {
    s.push_back(kPauliChars[d]);
  }
  return s;
}

Eigen::MatrixXcd pauli_matrix(const PauliIndex& idx, int max_qubits) {
  check_qubit_count(idx.num_qubits(), max_qubits, "pauli_matrix");
  Eigen::MatrixXcd result = single_qubit_pauli(idx.digits()[0]);
  for (int i = 1; i < idx.num_qubits(); ++i) {
    result = Eigen::kroneckerProduct(result, single_qubit_pauli(idx.digits()[i]))
                 .eval();
  }
  return result;
}

namespace {

// One level of the blockwise Pauli decomposition. Splitting A into 2x2
// blocks A_ab of half size, Tr[(P_d tensor Q) A] = sum_ab (P_d)_ab Tr[Q A_ba],
// so the leading digit d selects a half-size combination and the recursion
// handles the remaining digits. The leaf value is Tr[P_z A].
void decompose_rec(const Eigen::MatrixXcd& a, std::size_t base,
                   Eigen::VectorXcd& out) {
  const Eigen::Index dim = a.rows();
  if (dim == 1) {
    out[base] = a(0, 0);
    return;
  }
  const Eigen::Index h = dim / 2;
  const std::size_t span =
      static_cast<std::size_t>(h) * static_cast<std::size_t>(h);  // 4^{n-1}

  decompose_rec(a.topLeftCorner(h, h) + a.bottomRightCorner(h, h),
                base + 0 * span, out);
  decompose_rec(a.bottomLeftCorner(h, h) + a.topRightCorner(h, h),
                base + 1 * span, out);
  decompose_rec(Complex(0, 1) * (a.topRightCorner(h, h) - a.bottomLeftCorner(h, h)),
                base + 2 * span, out);
  decompose_rec(a.topLeftCorner(h, h) - a.bottomRightCorner(h, h),
                base + 3 * span, out);
}

}  // namespace

Eigen::VectorXcd pauli_coefficients(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() < 2) {
    throw ValidationError("pauli_coefficients: matrix must be square 2^n x 2^n");
  }
  int n = 0;
  for (Eigen::Index d = a.rows(); d > 1; d /= 2) {
    if (d % 2 != 0) {
      throw ValidationError(
          "pauli_coefficients: dimension is not a power of two");
    }
    ++n;
  }
  Eigen::VectorXcd out(static_cast<Eigen::Index>(pow4(n)));
  decompose_rec(a, 0, out);
  out /= static_cast<double>(pow2(n));
  return out;
}

}  // namespace qcstat
