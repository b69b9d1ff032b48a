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
#include <span>
#include <string>
#include <vector>

#include "qcstat/common.hpp"
#include "qcstat/norms.hpp"
#include "qcstat/pauli.hpp"

namespace qcstat {

// Pauli transfer matrix of a channel from n_in to n_out qubits: the real
// 4^{n_out} x 4^{n_in} matrix with entries
//   M[z][x] = (1/2^{n_out}) Tr[P_z Phi(P_x)],
// rows indexed by output Pauli strings and columns by input Pauli strings,
// both in PauliIndex linear order. Immutable after construction.
class DensePTM {
 public:
  DensePTM(Eigen::MatrixXd entries, int n_in, int n_out);

  const Eigen::MatrixXd& entries() const { return entries_; }
  int n_in() const { return n_in_; }
  int n_out() const { return n_out_; }

 private:
  Eigen::MatrixXd entries_;
  int n_in_;
  int n_out_;
};

// The (4^{n_out}-1) x (4^{n_in}-1) bottom-right block of a unital channel's
// PTM (identity row and column removed).
struct ModPTM {
  Eigen::MatrixXd entries;
  int n_in;
  int n_out;
};

enum class VecKind { observable, state };

// Pauli-basis representation vector. Observables store
// alpha[z] = (1/2^n) Tr[P_z H]; states store f[x] = Tr[P_x rho] (so the
// entry at the all-identity index is Tr[rho] = 1).
struct PauliVec {
  Eigen::VectorXd entries;
  int num_qubits;
  VecKind kind;
};

DensePTM identity_ptm(int n, int max_qubits = kDefaultQubitCap);

DensePTM ptm_from_unitary(const Eigen::MatrixXcd& u, int n,
                          int max_qubits = kDefaultQubitCap);

DensePTM ptm_from_kraus(const std::vector<Eigen::MatrixXcd>& kraus, int n_in,
                        int n_out, int max_qubits = kDefaultQubitCap);

// Catalog gates: I, X, Y, Z, H, S, T, CNOT, CZ, Rx, Ry, Rz (angle in
// radians), depolarizing (retention probability lambda: P -> lambda P for
// P != I), amplitude_damping (decay gamma). Gate names are matched
// case-insensitively and '-' is treated as '_'.
DensePTM ptm_named(const std::string& name, const std::vector<double>& params,
                   const std::vector<int>& targets, int width,
                   int max_qubits = kDefaultQubitCap);

struct GateInfo {
  int arity;       // qubits acted on
  int num_params;  // required parameter count
  bool unitary;
};
const GateInfo& gate_info(const std::string& name);

// Embeds a k-qubit channel PTM at the given target qubits of a width-qubit
// register, acting as the identity elsewhere.
DensePTM embed_ptm(const DensePTM& gate, const std::vector<int>& targets,
                   int width, int max_qubits = kDefaultQubitCap);

// Matrix product M2 * M1, the PTM of (Phi2 after Phi1).
DensePTM compose_ptm(const DensePTM& m2, const DensePTM& m1);

// Kronecker product; m1 acts on the leading (most significant) qubits.
DensePTM tensor_ptm(const DensePTM& m1, const DensePTM& m2,
                    int max_qubits = kDefaultQubitCap);

// True iff both the first row and first column equal (1, 0, ..., 0) within
// tol, i.e. the channel is unital and trace preserving.
bool is_unital(const DensePTM& m, double tol = kAssertTol);

// Extracts the modified representation matrix. Throws ValidationError
// naming the offending entry when the PTM is not unital.
ModPTM modified_ptm(const DensePTM& m, double tol = kAssertTol);

// True iff every row has exactly one entry of magnitude 1 (within tol) and
// zeros elsewhere, i.e. the PTM is a signed permutation. Callers are
// expected to pass a square, orthogonal PTM (any unitary's PTM qualifies).
bool is_clifford_ptm(const DensePTM& m, double tol = kAssertTol);

PauliVec observable_vec(const Eigen::MatrixXcd& h, int n,
                        int max_qubits = kDefaultQubitCap);

// Product-state feature encodings. Feature j prepares qubit j:
//   angle_y:  Ry(x_j)|0>                 f = (1, sin x, 0, cos x)
//   angle_zy: Rz(x_j) Ry(x_j)|0>         f = (1, sin x cos x, sin^2 x, cos x)
//   basis:    |x_j> for x_j in {0, 1}    f = (1, 0, 0, 1 - 2 x_j)
enum class Encoding { angle_y, angle_zy, basis };
Encoding encoding_from_string(const std::string& s);
std::string to_string(Encoding e);

PauliVec state_vec_from_features(const std::vector<double>& x, Encoding enc,
                                 int max_qubits = kDefaultQubitCap);

// Expected measurement outcome Tr[C(rho) H] evaluated in the Pauli basis:
// alpha . (s_l M_l ... s_1 M_1 f_in) with per-layer scale
// s_i = 2^{n_i - n_{i-1}} so that width-changing layers propagate exactly.
double expectation(const PauliVec& alpha, std::span<const DensePTM> layers,
                   const PauliVec& f_in);

inline double group_norm(const DensePTM& m, double p, double q) {
  return group_norm(m.entries(), p, q);
}
inline double modified_group_norm(const ModPTM& m, double p, double q) {
  return group_norm(m.entries, p, q);
}

}  // namespace qcstat
