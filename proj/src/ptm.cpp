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

#include "qcstat/ptm.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <unsupported/Eigen/KroneckerProduct>

namespace qcstat {

namespace {

using Complex = std::complex<double>;

int qubits_for_dim(Eigen::Index dim, const char* where) {
  int n = 0;
  for (Eigen::Index d = dim; d > 1; d /= 2) {
    if (d % 2 != 0) {
      throw ValidationError(
          fmt::format("{}: dimension {} is not a power of two", where, dim));
    }
    ++n;
  }
  if (n == 0) {
    throw ValidationError(fmt::format("{}: dimension must be >= 2", where));
  }
  return n;
}

void check_unitary(const Eigen::MatrixXcd& u, const char* where) {
  if (u.rows() != u.cols()) {
    throw ValidationError(fmt::format("{}: matrix is not square", where));
  }
  Eigen::MatrixXcd gram = u.adjoint() * u;
  double dev = (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                   .cwiseAbs()
                   .maxCoeff();
  if (dev > kValidationTol) {
    throw ValidationError(fmt::format(
        "{}: matrix is not unitary (|U^dag U - I| deviates by {:.3e})", where,
        dev));
  }
}

// Extracts the real Pauli coefficient vector of a matrix that must expand
// with real coefficients (images of Paulis under Hermiticity-preserving
// maps, Hermitian observables).
Eigen::VectorXd real_pauli_coefficients(const Eigen::MatrixXcd& a,
                                        const char* where) {
  Eigen::VectorXcd c = pauli_coefficients(a);
  double imag_dev = c.imag().cwiseAbs().maxCoeff();
  if (imag_dev > kAssertTol) {
    throw ValidationError(fmt::format(
        "{}: Pauli coefficients have non-real part {:.3e}", where, imag_dev));
  }
  return c.real();
}

std::string canonical_gate_name(const std::string& name) {
  std::string s;
  s.reserve(name.size());
  for (char c : name) {
    s.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(
                                     static_cast<unsigned char>(c))));
  }
  return s;
}

}  // namespace

DensePTM::DensePTM(Eigen::MatrixXd entries, int n_in, int n_out)
    : entries_(std::move(entries)), n_in_(n_in), n_out_(n_out) {
  check_qubit_count(n_in_, kHardQubitCap, "DensePTM");
  check_qubit_count(n_out_, kHardQubitCap, "DensePTM");
  if (entries_.rows() != static_cast<Eigen::Index>(pow4(n_out_)) ||
      entries_.cols() != static_cast<Eigen::Index>(pow4(n_in_))) {
    throw ValidationError(fmt::format(
        "DensePTM: entries are {}x{} but widths ({} -> {}) require {}x{}",
        entries_.rows(), entries_.cols(), n_in_, n_out_, pow4(n_out_),
        pow4(n_in_)));
  }
}

DensePTM identity_ptm(int n, int max_qubits) {
  check_qubit_count(n, max_qubits, "identity_ptm");
  const auto dim = static_cast<Eigen::Index>(pow4(n));
  return DensePTM(Eigen::MatrixXd::Identity(dim, dim), n, n);
}

DensePTM ptm_from_unitary(const Eigen::MatrixXcd& u, int n, int max_qubits) {
  check_qubit_count(n, max_qubits, "ptm_from_unitary");
  if (u.rows() != static_cast<Eigen::Index>(pow2(n))) {
    throw ValidationError(
        fmt::format("ptm_from_unitary: matrix is {}x{} but {} qubits require "
                    "dimension {}",
                    u.rows(), u.cols(), n, pow2(n)));
  }
  check_unitary(u, "ptm_from_unitary");
  const auto dim = static_cast<Eigen::Index>(pow4(n));
  Eigen::MatrixXd m(dim, dim);
  Eigen::MatrixXcd udag = u.adjoint();
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::MatrixXcd px =
        pauli_matrix(PauliIndex::from_linear(static_cast<std::size_t>(x), n),
                     max_qubits);
    Eigen::MatrixXcd image = u * px * udag;
    m.col(x) = real_pauli_coefficients(image, "ptm_from_unitary");
  }
  return DensePTM(std::move(m), n, n);
}

DensePTM ptm_from_kraus(const std::vector<Eigen::MatrixXcd>& kraus, int n_in,
                        int n_out, int max_qubits) {
  check_qubit_count(n_in, max_qubits, "ptm_from_kraus");
  check_qubit_count(n_out, max_qubits, "ptm_from_kraus");
  if (kraus.empty()) {
    throw ValidationError("ptm_from_kraus: empty Kraus set");
  }
  const auto din = static_cast<Eigen::Index>(pow2(n_in));
  const auto dout = static_cast<Eigen::Index>(pow2(n_out));
  Eigen::MatrixXcd completeness = Eigen::MatrixXcd::Zero(din, din);
  for (const auto& k : kraus) {
    if (k.rows() != dout || k.cols() != din) {
      throw ValidationError(fmt::format(
          "ptm_from_kraus: operator is {}x{}, expected {}x{}", k.rows(),
          k.cols(), dout, din));
    }
    completeness += k.adjoint() * k;
  }
  double dev =
      (completeness - Eigen::MatrixXcd::Identity(din, din)).cwiseAbs().maxCoeff();
  if (dev > kValidationTol) {
    throw ValidationError(fmt::format(
        "ptm_from_kraus: Kraus set incomplete (|sum K^dag K - I| = {:.3e})",
        dev));
  }
  const auto cols = static_cast<Eigen::Index>(pow4(n_in));
  const auto rows = static_cast<Eigen::Index>(pow4(n_out));
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index x = 0; x < cols; ++x) {
    Eigen::MatrixXcd px = pauli_matrix(
        PauliIndex::from_linear(static_cast<std::size_t>(x), n_in), max_qubits);
    Eigen::MatrixXcd image = Eigen::MatrixXcd::Zero(dout, dout);
    for (const auto& k : kraus) {
      image += k * px * k.adjoint();
    }
    m.col(x) = real_pauli_coefficients(image, "ptm_from_kraus");
  }
  return DensePTM(std::move(m), n_in, n_out);
}

namespace {

Eigen::MatrixXcd gate_unitary(const std::string& canon,
                              const std::vector<double>& params) {
  const Complex i(0, 1);
  if (canon == "i") return Eigen::Matrix2cd::Identity();
  if (canon == "x") return (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  if (canon == "y")
    return (Eigen::Matrix2cd() << 0, -i, i, 0).finished();
  if (canon == "z") return (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  if (canon == "h") {
    const double s = 1.0 / std::sqrt(2.0);
    return (Eigen::Matrix2cd() << s, s, s, -s).finished();
  }
  if (canon == "s") return (Eigen::Matrix2cd() << 1, 0, 0, i).finished();
  if (canon == "t")
    return (Eigen::Matrix2cd() << 1, 0, 0, std::exp(i * (M_PI / 4))).finished();
  if (canon == "rx" || canon == "ry" || canon == "rz") {
    const double c = std::cos(params[0] / 2);
    const double s = std::sin(params[0] / 2);
    if (canon == "rx")
      return (Eigen::Matrix2cd() << c, -i * s, -i * s, c).finished();
    if (canon == "ry")
      return (Eigen::Matrix2cd() << c, -s, s, c).finished();
    return (Eigen::Matrix2cd() << std::exp(-i * (params[0] / 2)), 0, 0,
            std::exp(i * (params[0] / 2)))
        .finished();
  }
  if (canon == "cnot") {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    u(2, 2) = 0; u(3, 3) = 0; u(2, 3) = 1; u(3, 2) = 1;
    return u;
  }
  if (canon == "cz") {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    u(3, 3) = -1;
    return u;
  }
  throw ValidationError(fmt::format("unknown unitary gate '{}'", canon));
}

std::vector<Eigen::MatrixXcd> gate_kraus(const std::string& canon,
                                         const std::vector<double>& params) {
  if (canon == "depolarizing") {
    const double lambda = params[0];
    if (lambda < 0.0 || lambda > 1.0) {
      throw ValidationError(fmt::format(
          "depolarizing: retention parameter {} outside [0, 1]", lambda));
    }
    // P -> lambda P for P != I; error probability q = 1 - lambda.
    const double q = 1.0 - lambda;
    std::vector<Eigen::MatrixXcd> ks;
    ks.push_back(std::sqrt(1.0 - 0.75 * q) * Eigen::Matrix2cd::Identity());
    for (std::uint8_t d = 1; d <= 3; ++d) {
      ks.push_back(0.5 * std::sqrt(q) *
                   pauli_matrix(PauliIndex({d})));
    }
    return ks;
  }
  if (canon == "amplitude_damping") {
    const double gamma = params[0];
    if (gamma < 0.0 || gamma > 1.0) {
      throw ValidationError(
          fmt::format("amplitude_damping: gamma {} outside [0, 1]", gamma));
    }
    Eigen::Matrix2cd k0 = Eigen::Matrix2cd::Zero();
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - gamma);
    Eigen::Matrix2cd k1 = Eigen::Matrix2cd::Zero();
    k1(0, 1) = std::sqrt(gamma);
    return {k0, k1};
  }
  throw ValidationError(fmt::format("unknown Kraus gate '{}'", canon));
}

const std::map<std::string, GateInfo>& gate_catalog() {
  static const std::map<std::string, GateInfo> catalog = {
      {"i", {1, 0, true}},       {"x", {1, 0, true}},
      {"y", {1, 0, true}},       {"z", {1, 0, true}},
      {"h", {1, 0, true}},       {"s", {1, 0, true}},
      {"t", {1, 0, true}},       {"cnot", {2, 0, true}},
      {"cz", {2, 0, true}},      {"rx", {1, 1, true}},
      {"ry", {1, 1, true}},      {"rz", {1, 1, true}},
      {"depolarizing", {1, 1, false}},
      {"amplitude_damping", {1, 1, false}},
  };
  return catalog;
}

}  // namespace

const GateInfo& gate_info(const std::string& name) {
  const auto& catalog = gate_catalog();
  auto it = catalog.find(canonical_gate_name(name));
  if (it == catalog.end()) {
    throw ValidationError(fmt::format("unknown gate '{}'", name));
  }
  return it->second;
}

DensePTM embed_ptm(const DensePTM& gate, const std::vector<int>& targets,
                   int width, int max_qubits) {
  check_qubit_count(width, max_qubits, "embed_ptm");
  if (gate.n_in() != gate.n_out()) {
    throw ValidationError("embed_ptm: only square-width channels can be embedded");
  }
  const int k = gate.n_in();
  if (static_cast<int>(targets.size()) != k) {
    throw ValidationError(fmt::format(
        "embed_ptm: channel acts on {} qubits but {} targets given", k,
        targets.size()));
  }
  std::vector<bool> used(width, false);
  for (int t : targets) {
    if (t < 0 || t >= width) {
      throw ValidationError(
          fmt::format("embed_ptm: target {} outside width {}", t, width));
    }
    if (used[t]) {
      throw ValidationError(fmt::format("embed_ptm: duplicate target {}", t));
    }
    used[t] = true;
  }

  std::vector<std::size_t> place(width);
  for (int pos = 0; pos < width; ++pos) {
    place[pos] = pow4(width - 1 - pos);
  }
  // Contribution of each gate-index value to the full linear index.
  const std::size_t gate_count = pow4(k);
  std::vector<std::size_t> gate_contrib(gate_count);
  for (std::size_t g = 0; g < gate_count; ++g) {
    std::size_t contrib = 0;
    std::size_t rem = g;
    for (int j = k - 1; j >= 0; --j) {
      contrib += (rem & 3u) * place[targets[j]];
      rem >>= 2;
    }
    gate_contrib[g] = contrib;
  }
  std::vector<int> rest_positions;
  for (int pos = 0; pos < width; ++pos) {
    if (!used[pos]) rest_positions.push_back(pos);
  }
  const std::size_t rest_count = pow4(width - k);
  std::vector<std::size_t> rest_contrib(rest_count);
  for (std::size_t r = 0; r < rest_count; ++r) {
    std::size_t contrib = 0;
    std::size_t rem = r;
    for (int j = static_cast<int>(rest_positions.size()) - 1; j >= 0; --j) {
      contrib += (rem & 3u) * place[rest_positions[j]];
      rem >>= 2;
    }
    rest_contrib[r] = contrib;
  }

  const auto dim = static_cast<Eigen::Index>(pow4(width));
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t zg = 0; zg < gate_count; ++zg) {
    for (std::size_t xg = 0; xg < gate_count; ++xg) {
      const double v = gate.entries()(static_cast<Eigen::Index>(zg),
                                      static_cast<Eigen::Index>(xg));
      if (v == 0.0) continue;
      for (std::size_t r = 0; r < rest_count; ++r) {
        full(static_cast<Eigen::Index>(gate_contrib[zg] + rest_contrib[r]),
             static_cast<Eigen::Index>(gate_contrib[xg] + rest_contrib[r])) = v;
      }
    }
  }
  return DensePTM(std::move(full), width, width);
}

DensePTM ptm_named(const std::string& name, const std::vector<double>& params,
                   const std::vector<int>& targets, int width, int max_qubits) {
  const std::string canon = canonical_gate_name(name);
  const GateInfo& info = gate_info(canon);
  if (static_cast<int>(params.size()) != info.num_params) {
    throw ValidationError(
        fmt::format("gate '{}' takes {} parameter(s), got {}", name,
                    info.num_params, params.size()));
  }
  DensePTM gate = info.unitary
                      ? ptm_from_unitary(gate_unitary(canon, params),
                                         info.arity, max_qubits)
                      : ptm_from_kraus(gate_kraus(canon, params), info.arity,
                                       info.arity, max_qubits);
  if (static_cast<int>(targets.size()) != info.arity) {
    throw ValidationError(
        fmt::format("gate '{}' acts on {} qubit(s), got {} target(s)", name,
                    info.arity, targets.size()));
  }
  return embed_ptm(gate, targets, width, max_qubits);
}

DensePTM compose_ptm(const DensePTM& m2, const DensePTM& m1) {
  if (m2.n_in() != m1.n_out()) {
    throw ValidationError(
        fmt::format("compose_ptm: width mismatch ({} -> {} then {} -> {})",
                    m1.n_in(), m1.n_out(), m2.n_in(), m2.n_out()));
  }
  return DensePTM(m2.entries() * m1.entries(), m1.n_in(), m2.n_out());
}

DensePTM tensor_ptm(const DensePTM& m1, const DensePTM& m2, int max_qubits) {
  const int n_in = m1.n_in() + m2.n_in();
  const int n_out = m1.n_out() + m2.n_out();
  check_qubit_count(n_in, max_qubits, "tensor_ptm");
  check_qubit_count(n_out, max_qubits, "tensor_ptm");
  Eigen::MatrixXd entries =
      Eigen::kroneckerProduct(m1.entries(), m2.entries());
  return DensePTM(std::move(entries), n_in, n_out);
}

bool is_unital(const DensePTM& m, double tol) {
  const auto& e = m.entries();
  if (std::abs(e(0, 0) - 1.0) > tol) return false;
  for (Eigen::Index z = 1; z < e.rows(); ++z) {
    if (std::abs(e(z, 0)) > tol) return false;
  }
  for (Eigen::Index x = 1; x < e.cols(); ++x) {
    if (std::abs(e(0, x)) > tol) return false;
  }
  return true;
}

ModPTM modified_ptm(const DensePTM& m, double tol) {
  const auto& e = m.entries();
  auto fail = [&](Eigen::Index z, Eigen::Index x) {
    throw ValidationError(
        fmt::format("modified_ptm: PTM is not unital, entry ({},{}) = {:.6g}",
                    z, x, e(z, x)));
  };
  if (std::abs(e(0, 0) - 1.0) > tol) fail(0, 0);
  for (Eigen::Index z = 1; z < e.rows(); ++z) {
    if (std::abs(e(z, 0)) > tol) fail(z, 0);
  }
  for (Eigen::Index x = 1; x < e.cols(); ++x) {
    if (std::abs(e(0, x)) > tol) fail(0, x);
  }
  return ModPTM{e.bottomRightCorner(e.rows() - 1, e.cols() - 1), m.n_in(),
                m.n_out()};
}

bool is_clifford_ptm(const DensePTM& m, double tol) {
  const auto& e = m.entries();
  if (e.rows() != e.cols()) {
    throw ValidationError("is_clifford_ptm: PTM must be square");
  }
  for (Eigen::Index z = 0; z < e.rows(); ++z) {
    int units = 0;
    for (Eigen::Index x = 0; x < e.cols(); ++x) {
      const double a = std::abs(e(z, x));
      if (std::abs(a - 1.0) <= tol) {
        ++units;
      } else if (a > tol) {
        return false;
      }
    }
    if (units != 1) return false;
  }
  return true;
}

PauliVec observable_vec(const Eigen::MatrixXcd& h, int n, int max_qubits) {
  check_qubit_count(n, max_qubits, "observable_vec");
  if (h.rows() != static_cast<Eigen::Index>(pow2(n)) || h.rows() != h.cols()) {
    throw ValidationError(
        fmt::format("observable_vec: matrix is {}x{}, expected {}x{}", h.rows(),
                    h.cols(), pow2(n), pow2(n)));
  }
  double herm_dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kValidationTol) {
    throw ValidationError(fmt::format(
        "observable_vec: matrix is not Hermitian (deviation {:.3e})", herm_dev));
  }
  return PauliVec{real_pauli_coefficients(h, "observable_vec"), n,
                  VecKind::observable};
}

Encoding encoding_from_string(const std::string& s) {
  std::string c = canonical_gate_name(s);
  if (c == "angle_y") return Encoding::angle_y;
  if (c == "angle_zy") return Encoding::angle_zy;
  if (c == "basis" || c == "computational_basis") return Encoding::basis;
  throw ValidationError(fmt::format("unknown encoding '{}'", s));
}

std::string to_string(Encoding e) {
  switch (e) {
    case Encoding::angle_y: return "angle-y";
    case Encoding::angle_zy: return "angle-zy";
    case Encoding::basis: return "basis";
  }
  return "?";
}

PauliVec state_vec_from_features(const std::vector<double>& x, Encoding enc,
                                 int max_qubits) {
  const int n = static_cast<int>(x.size());
  check_qubit_count(n, max_qubits, "state_vec_from_features");
  Eigen::VectorXd f = Eigen::VectorXd::Ones(1);
  for (double xi : x) {
    Eigen::Vector4d local;
    switch (enc) {
      case Encoding::angle_y:
        local << 1.0, std::sin(xi), 0.0, std::cos(xi);
        break;
      case Encoding::angle_zy:
        local << 1.0, std::sin(xi) * std::cos(xi), std::sin(xi) * std::sin(xi),
            std::cos(xi);
        break;
      case Encoding::basis: {
        int bit;
        if (std::abs(xi) <= 1e-9) {
          bit = 0;
        } else if (std::abs(xi - 1.0) <= 1e-9) {
          bit = 1;
        } else {
          throw ValidationError(fmt::format(
              "basis encoding requires features in {{0, 1}}, got {}", xi));
        }
        local << 1.0, 0.0, 0.0, bit == 0 ? 1.0 : -1.0;
        break;
      }
    }
    f = Eigen::kroneckerProduct(f, local).eval();
  }
  return PauliVec{std::move(f), n, VecKind::state};
}

double expectation(const PauliVec& alpha, std::span<const DensePTM> layers,
                   const PauliVec& f_in) {
  if (alpha.kind != VecKind::observable) {
    throw ValidationError("expectation: alpha must be an observable vector");
  }
  if (f_in.kind != VecKind::state) {
    throw ValidationError("expectation: f_in must be a state vector");
  }
  Eigen::VectorXd f = f_in.entries;
  int n = f_in.num_qubits;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const DensePTM& layer = layers[i];
    if (layer.n_in() != n) {
      throw ValidationError(fmt::format(
          "expectation: layer {} expects {} input qubits, state has {}", i + 1,
          layer.n_in(), n));
    }
    f = (layer.entries() * f).eval();
    f *= std::ldexp(1.0, layer.n_out() - layer.n_in());
    n = layer.n_out();
  }
  if (alpha.num_qubits != n) {
    throw ValidationError(
        fmt::format("expectation: observable is on {} qubits, output has {}",
                    alpha.num_qubits, n));
  }
  return alpha.entries.dot(f);
}

}  // namespace qcstat
