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

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qcstat {

// Tolerance conventions used throughout the library:
//   kValidationTol  - accepting user-supplied objects (unitarity, Kraus
//                     completeness, Hermiticity)
//   kAssertTol      - internal structural assertions (vanishing imaginary
//                     parts, unitality checks)
// Chosen for double precision with 4^n-term sums at n <= 6.
inline constexpr double kValidationTol = 1e-8;
inline constexpr double kAssertTol = 1e-10;

// Dense Pauli-basis objects scale as 4^n; the default cap keeps a single
// matrix at 4096x4096. Anything above kHardQubitCap is refused outright.
inline constexpr int kDefaultQubitCap = 6;
inline constexpr int kHardQubitCap = 8;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Invalid user input or violated operation precondition. The CLI maps this
// to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a configured size cap (qubit count, family size, ...).
class ResourceLimitError : public ValidationError {
 public:
  explicit ResourceLimitError(const std::string& what) : ValidationError(what) {}
};

// Neumaier-compensated accumulator, used for 4^n-length reductions so that
// 1e-10 assertions stay honest at the qubit cap.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// 1/x on the extended reals with 1/inf = 0 exactly.
inline double ext_reciprocal(double x) {
  return std::isinf(x) ? 0.0 : 1.0 / x;
}

inline std::size_t pow4(int n) { return std::size_t{1} << (2 * n); }
inline std::size_t pow2(int n) { return std::size_t{1} << n; }

inline void check_qubit_count(int n, int max_qubits, const char* where) {
  if (n < 1) {
    throw ValidationError(std::string(where) + ": qubit count must be >= 1");
  }
  int cap = max_qubits < kHardQubitCap ? max_qubits : kHardQubitCap;
  if (n > cap) {
    throw ResourceLimitError(std::string(where) + ": " + std::to_string(n) +
                             " qubits exceeds cap of " + std::to_string(cap));
  }
}

}  // namespace qcstat
