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

#include <doctest.h>

#include <random>
#include <unsupported/Eigen/KroneckerProduct>

#include "oracle.hpp"
#include "qcstat/bounds.hpp"
#include "qcstat/norms.hpp"
#include "qcstat/ptm.hpp"

using namespace qcstat;

namespace {

// The T-gate PTM written out by hand from T X T^dag = (X+Y)/sqrt(2),
// T Y T^dag = (Y-X)/sqrt(2); rows ordered (I, X, Y, Z).
Eigen::MatrixXd t_gate_ptm_literal() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd m(4, 4);
  m << 1, 0, 0, 0,
       0, s, -s, 0,
       0, s, s, 0,
       0, 0, 0, 1;
  return m;
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = unif(rng);
    }
  }
  return m;
}

const double kPQGrid[] = {0.5, 1.0, 1.5, 2.0, 3.0, kInf};

}  // namespace

TEST_SUITE_BEGIN("norms");

TEST_CASE("lp_norm examples") {
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
  for (double p : {0.5, 1.0, 2.0, kInf}) {
    CHECK(lp_norm(zero, p) == 0.0);
  }
  Eigen::Vector2d halves(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0));
  CHECK(lp_norm(halves, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  Eigen::Vector2d pyth(3.0, 4.0);
  CHECK(lp_norm(pyth, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(lp_norm(pyth, kInf) == 4.0);
  CHECK_THROWS_AS(lp_norm(pyth, 0.0), ValidationError);
  CHECK_THROWS_AS(lp_norm(pyth, -1.0), ValidationError);
}

TEST_CASE("group norm of the identity is 1 for every (p,q)") {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  for (double p : kPQGrid) {
    for (double q : kPQGrid) {
      CHECK(group_norm(id, p, q) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(group_norm(Eigen::MatrixXd(), 1.0, 1.0), ValidationError);
}

TEST_CASE("T-gate norms frozen from the explicit PTM") {
  Eigen::MatrixXd t = t_gate_ptm_literal();
  CHECK(group_norm(t, 1.0, kInf) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(group_norm(t, 1.0, 1.0) ==
        doctest::Approx((1.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-14));
  // Modified block drops the identity row/column; mean of (sqrt2, sqrt2, 1).
  Eigen::MatrixXd that = t.bottomRightCorner(3, 3);
  CHECK(group_norm(that, 1.0, 1.0) ==
        doctest::Approx((2.0 * std::sqrt(2.0) + 1.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("single-row matrices reduce to the row norm") {
  std::mt19937_64 rng(3);
  Eigen::MatrixXd m = random_matrix(1, 7, rng);
  for (double p : kPQGrid) {
    for (double q : kPQGrid) {
      CHECK(group_norm(m, p, q) ==
            doctest::Approx(lp_norm(m.row(0).transpose(), p)).epsilon(1e-13));
    }
  }
}

TEST_CASE("tensor multiplicativity on random matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd a = random_matrix(3, 4, rng);
    Eigen::MatrixXd b = random_matrix(4, 2, rng);
    Eigen::MatrixXd ab = Eigen::kroneckerProduct(a, b);
    for (double p : kPQGrid) {
      for (double q : kPQGrid) {
        const double lhs = group_norm(ab, p, q);
        const double rhs = group_norm(a, p, q) * group_norm(b, p, q);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("invariance under signed permutations (Clifford PTMs)") {
  std::mt19937_64 rng(13);
  // Random Clifford words over {H, S, CNOT} on 2 qubits.
  const char* alphabet[] = {"H", "S", "CNOT"};
  std::uniform_int_distribution<int> pick(0, 2);
  std::uniform_int_distribution<int> qubit(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    auto word = [&] {
      DensePTM m = identity_ptm(2);
      for (int g = 0; g < 4; ++g) {
        const char* name = alphabet[pick(rng)];
        std::vector<int> targets;
        if (std::string(name) == "CNOT") {
          int a = qubit(rng);
          targets = {a, 1 - a};
        } else {
          targets = {qubit(rng)};
        }
        m = compose_ptm(ptm_named(name, {}, targets, 2), m);
      }
      return m;
    };
    DensePTM u1 = word();
    DensePTM u2 = word();
    REQUIRE(is_clifford_ptm(u1));
    REQUIRE(is_clifford_ptm(u2));
    Eigen::MatrixXd a = random_matrix(16, 16, rng);
    for (double p : {0.5, 1.0, 3.0}) {
      for (double q : {1.0, 2.0, kInf}) {
        const double base = group_norm(a, p, q);
        CHECK(std::abs(group_norm(u1.entries() * a * u2.entries(), p, q) -
                       base) <= 1e-10 * std::max(1.0, base));
      }
    }
  }
}

TEST_CASE("faithfulness directions on unitary PTMs") {
  std::mt19937_64 rng(17);
  std::vector<DensePTM> cliffords = {
      identity_ptm(1),
      ptm_named("H", {}, {0}, 1),
      ptm_named("S", {}, {0}, 1),
      compose_ptm(ptm_named("H", {}, {0}, 1), ptm_named("S", {}, {0}, 1)),
      ptm_named("CNOT", {}, {0, 1}, 2),
  };
  std::vector<DensePTM> magic = {
      ptm_named("T", {}, {0}, 1),
      ptm_named("Rz", {M_PI / 8}, {0}, 1),
  };
  std::vector<DensePTM> haar;
  for (int trial = 0; trial < 10; ++trial) {
    haar.push_back(ptm_from_unitary(testing::random_unitary(2, rng), 1));
  }

  for (double q : {1.0, 2.0}) {
    for (double p : {0.5, 1.0, 1.5}) {
      for (const auto& m : cliffords) {
        CHECK(group_norm(m, p, q) >= 1.0 - 1e-12);
        CHECK(group_norm(m, p, q) == doctest::Approx(1.0).epsilon(1e-10));
      }
      for (const auto& m : magic) {
        CHECK(group_norm(m, p, q) > 1.0 + 1e-3);
      }
      for (const auto& m : haar) {
        CHECK(group_norm(m, p, q) >= 1.0 - 1e-12);
      }
    }
    for (double p : {3.0, 4.0}) {
      for (const auto& m : cliffords) {
        CHECK(group_norm(m, p, q) <= 1.0 + 1e-12);
        CHECK(group_norm(m, p, q) == doctest::Approx(1.0).epsilon(1e-10));
      }
      for (const auto& m : magic) {
        CHECK(group_norm(m, p, q) < 1.0 - 1e-3);
      }
      for (const auto& m : haar) {
        CHECK(group_norm(m, p, q) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("p = 2 is neutral on unitary PTMs") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 2;
    DensePTM m = ptm_from_unitary(
        testing::random_unitary(static_cast<int>(pow2(n)), rng), n);
    for (double q : {0.5, 1.0, 2.0, 3.0, kInf}) {
      CHECK(group_norm(m, 2.0, q) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("convexity for p, q >= 1") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd a = random_matrix(5, 6, rng);
    Eigen::MatrixXd b = random_matrix(5, 6, rng);
    const double lambda = unif(rng);
    for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
      for (double q : {1.0, 2.0, kInf}) {
        const double mix = group_norm(lambda * a + (1 - lambda) * b, p, q);
        const double hull =
            lambda * group_norm(a, p, q) + (1 - lambda) * group_norm(b, p, q);
        CHECK(mix <= hull + 1e-10);
      }
    }
  }
}

TEST_CASE("modified-norm tensor ordering on random unitaries") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd u1 = testing::random_unitary(2, rng);
    Eigen::MatrixXcd u2 = testing::random_unitary(2, rng);
    DensePTM m1 = ptm_from_unitary(u1, 1);
    DensePTM m2 = ptm_from_unitary(u2, 1);
    DensePTM m12 = ptm_from_unitary(
        Eigen::kroneckerProduct(u1, u2).eval(), 2);
    for (double p : {0.5, 1.0, 1.5}) {
      for (double q : {0.5, 1.0, 2.0}) {
        Eigen::MatrixXd hat_prod =
            Eigen::kroneckerProduct(modified_ptm(m1).entries,
                                    modified_ptm(m2).entries);
        const double lhs = group_norm(hat_prod, p, q);
        const double rhs = modified_group_norm(modified_ptm(m12), p, q);
        CHECK(lhs >= rhs - 1e-12);
      }
    }
  }
}

TEST_CASE("vector bound ||Mv||_{p*} <= N1^max{1/p*,1/q} ||M||_{p,q} ||v||_{p*}") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index rows = 2 + static_cast<Eigen::Index>(rng() % 7);
    const Eigen::Index cols = 2 + static_cast<Eigen::Index>(rng() % 7);
    Eigen::MatrixXd m = random_matrix(rows, cols, rng);
    Eigen::VectorXd v = random_matrix(cols, 1, rng).col(0);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      for (double q : {0.5, 1.0, 2.0, kInf}) {
        const double pstar = holder_conjugate(p);
        const double expo = std::max(ext_reciprocal(pstar), ext_reciprocal(q));
        const double lhs = lp_norm((m * v).eval(), pstar);
        const double rhs = std::pow(static_cast<double>(rows), expo) *
                               group_norm(m, p, q) * lp_norm(v, pstar);
        CHECK(lhs <= rhs + 1e-10);
      }
    }
  }
}

TEST_SUITE_END();
