// Copyright 2026 The qproto-bench Authors
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


#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qproto/qsim.hpp"

namespace qproto::qsim {
namespace {

using std::numbers::pi;

// Plain Kronecker product, written independently of the library kernels.
Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix eye(int n) { return Matrix::Identity(n, n); }

Vector ket_from(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const auto& a : amps) v(i++) = a;
  return v / v.norm();
}

TEST(Qsim, InitRegisterIsAllZeros) {
  const auto s = init_register(3);
  EXPECT_EQ(s.num_qubits(), 3);
  EXPECT_EQ(s.dim(), 8);
  EXPECT_DOUBLE_EQ(s.matrix()(0, 0).real(), 1.0);
  EXPECT_NEAR(s.trace(), 1.0, 1e-15);
  EXPECT_THROW(init_register(0), std::invalid_argument);
  EXPECT_THROW(init_register(11), std::invalid_argument);
}

TEST(Qsim, WStateAmplitudes) {
  const auto w = w_state(4);
  // |0001>, |0010>, |0100>, |1000> each carry 1/4 population.
  for (int idx : {1, 2, 4, 8}) EXPECT_NEAR(w.matrix()(idx, idx).real(), 0.25, 1e-15);
  EXPECT_NEAR(w.matrix()(0, 0).real(), 0.0, 1e-15);
  EXPECT_NEAR(w.purity(), 1.0, 1e-12);
  EXPECT_THROW(w_state(1), std::invalid_argument);
}

TEST(Qsim, ConstructorValidates) {
  EXPECT_THROW(DensityState(Matrix::Identity(3, 3), {0, 1}), std::invalid_argument);
  EXPECT_THROW(DensityState(Matrix::Identity(4, 4) / 4.0, {0, 0}), std::invalid_argument);
  const auto s = init_register(2);
  EXPECT_THROW(s.position(7), std::out_of_range);
}

TEST(Qsim, SingleQubitGatesMatchKroneckerOracle) {
  const Matrix rho = pure_state(ket_from({1.0, {0.0, 2.0}, -1.0, 0.5}), {0, 1}).matrix();
  for (const auto kind : {GateKind::X, GateKind::Z, GateKind::H}) {
    const Gate g{kind, {1}};
    const auto out = apply_gate(DensityState(rho, {0, 1}), g);
    const Matrix u = kron(eye(2), g.matrix());
    EXPECT_LT(matrix_distance(out.matrix(), u * rho * u.adjoint()), 1e-12);
  }
}

TEST(Qsim, CnotOnReversedLabelsMatchesPermutedOracle) {
  // CNOT with control at position 1 and target at position 0.
  const Matrix rho = pure_state(ket_from({0.3, 0.1, {0.0, 0.8}, 0.5}), {0, 1}).matrix();
  const auto out = apply_gate(DensityState(rho, {0, 1}), Gate::cnot(1, 0));
  Matrix u = Matrix::Zero(4, 4);
  // |ab> -> |a xor b, b>
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) u(((a ^ b) << 1) | b, (a << 1) | b) = 1.0;
  EXPECT_LT(matrix_distance(out.matrix(), u * rho * u.adjoint()), 1e-12);
}

TEST(Qsim, CzIsSymmetric) {
  const auto plus = pure_state(ket_from({1, 1, 1, 1}), {0, 1});
  const auto a = apply_gate(plus, Gate::cz(0, 1));
  const auto b = apply_gate(plus, Gate::cz(1, 0));
  EXPECT_LT(matrix_distance(a.matrix(), b.matrix()), 1e-15);
}

TEST(Qsim, RotZIsDiagonalPhase) {
  const auto plus = pure_state(ket_from({1, 1}), {0});
  const auto out = apply_gate(plus, Gate::rot_z(0, pi / 2));
  // Coherence picks up e^{-i pi/2}.
  EXPECT_NEAR(out.matrix()(0, 1).real(), 0.0, 1e-12);
  EXPECT_NEAR(out.matrix()(0, 1).imag(), -0.5, 1e-12);
}

TEST(Qsim, BellStatePreparation) {
  auto s = init_register(2);
  s = apply_gate(s, Gate::h(0));
  s = apply_gate(s, Gate::cnot(0, 1));
  EXPECT_NEAR(fidelity(s, ket_from({1, 0, 0, 1})), 1.0, 1e-12);
}

TEST(Qsim, TensorMatchesKron) {
  const auto a = bloch_state({0.7, 1.1}, 3);
  const auto b = bloch_state({2.0, 0.3}, 5);
  const auto t = tensor(a, b);
  EXPECT_EQ(t.labels(), (std::vector<Label>{3, 5}));
  EXPECT_LT(matrix_distance(t.matrix(), kron(a.matrix(), b.matrix())), 1e-15);
  EXPECT_THROW(tensor(a, a), std::invalid_argument);
}

TEST(Qsim, BlochAnglesPoles) {
  EXPECT_NEAR(fidelity(bloch_state({0.0, 0.0}), ket_from({1, 0})), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(bloch_state({pi, 0.0}), ket_from({0, 1})), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(bloch_state({pi / 2, 0.0}), ket_from({1, 1})), 1.0, 1e-15);
}

TEST(Qsim, RotatedBasisOutcomeZeroIsPlusAlpha) {
  for (double alpha : {0.0, pi / 8, 3 * pi / 4, -pi / 3}) {
    const auto plus_a = pure_state(ket_from({1.0, std::exp(Complex{0, alpha})}), {0});
    EXPECT_NEAR(outcome_probability(plus_a, 0, Basis::rotated(alpha), 0), 1.0, 1e-12);
    EXPECT_NEAR(outcome_probability(plus_a, 0, Basis::rotated(alpha + pi), 1), 1.0, 1e-12);
  }
}

TEST(Qsim, ProjectionProbabilitiesSumToOne) {
  const auto s = apply_gate(w_state(3), Gate::h(1));
  for (Label q : {0, 1, 2}) {
    for (const auto& basis : {Basis::z(), Basis::x(), Basis::rotated(0.4)}) {
      const double p0 = project(s, q, basis, 0).trace();
      const double p1 = project(s, q, basis, 1).trace();
      EXPECT_NEAR(p0 + p1, 1.0, 1e-12);
      EXPECT_NEAR(p0, outcome_probability(s, q, basis, 0), 1e-12);
    }
  }
}

TEST(Qsim, CollapseRemovesQubitAndRenormalizes) {
  const auto bell = pure_state(ket_from({1, 0, 0, 1}), {4, 9});
  const auto post = collapse(bell, 4, Basis::z(), 1);
  EXPECT_EQ(post.labels(), (std::vector<Label>{9}));
  EXPECT_NEAR(post.trace(), 1.0, 1e-12);
  EXPECT_NEAR(post.matrix()(1, 1).real(), 1.0, 1e-12);
  const auto zero = init_register(2);
  EXPECT_THROW(collapse(zero, 0, Basis::z(), 1), std::domain_error);
}

TEST(Qsim, MeasureBornStatistics) {
  const auto s = pure_state(ket_from({1.0, std::sqrt(3.0)}), {0});  // p(1) = 3/4
  Rng rng(11);
  int ones = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) ones += measure(s, 0, Basis::z(), rng).bit;
  const double sigma = std::sqrt(0.75 * 0.25 / n);
  EXPECT_NEAR(ones / static_cast<double>(n), 0.75, 4 * sigma);
}

TEST(Qsim, MeasureOneQubitKeepsCollapsedQubit) {
  const auto s = pure_state(ket_from({1, 1}), {2});
  Rng rng(3);
  const auto m = measure(s, 2, Basis::z(), rng);
  EXPECT_EQ(m.state.num_qubits(), 1);
  EXPECT_NEAR(m.state.matrix()(m.bit, m.bit).real(), 1.0, 1e-12);
}

TEST(Qsim, PartialTraceOfProductState) {
  const auto a = bloch_state({0.4, 0.2}, 0);
  const auto b = bloch_state({1.3, 2.2}, 1);
  const auto c = bloch_state({2.9, 0.9}, 2);
  const auto abc = tensor(tensor(a, b), c);
  const Label keep_b[] = {1};
  EXPECT_LT(matrix_distance(partial_trace(abc, keep_b).matrix(), b.matrix()), 1e-12);
  const Label keep_ca[] = {2, 0};
  // Kept in register order: a then c.
  EXPECT_LT(matrix_distance(partial_trace(abc, keep_ca).matrix(), kron(a.matrix(), c.matrix())), 1e-12);
}

TEST(Qsim, PartialTraceOfBellIsMaximallyMixed) {
  const auto bell = pure_state(ket_from({1, 0, 0, 1}), {0, 1});
  const Label keep[] = {0};
  EXPECT_LT(matrix_distance(partial_trace(bell, keep).matrix(), eye(2) / 2.0), 1e-12);
}

TEST(Qsim, IsPhysical) {
  EXPECT_TRUE(is_physical(w_state(5)));
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  EXPECT_FALSE(is_physical(DensityState(bad, {0})));
}

// Unitaries preserve trace and purity for random circuits.
TEST(QsimProperty, RandomCircuitsStayPure) {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = init_register(4);
    for (int step = 0; step < 30; ++step) {
      const Label a = static_cast<Label>(uniform_index(rng, 4));
      Label b = static_cast<Label>(uniform_index(rng, 3));
      if (b >= a) ++b;
      switch (uniform_index(rng, 5)) {
        case 0: s = apply_gate(s, Gate::h(a)); break;
        case 1: s = apply_gate(s, Gate::x(a)); break;
        case 2: s = apply_gate(s, Gate::rot_z(a, uniform01(rng) * 2 * pi)); break;
        case 3: s = apply_gate(s, Gate::cz(a, b)); break;
        default: s = apply_gate(s, Gate::cnot(a, b)); break;
      }
    }
    EXPECT_NEAR(s.trace(), 1.0, 1e-12);
    EXPECT_NEAR(s.purity(), 1.0, 1e-10);
  }
}

// Measuring two disjoint qubits in either order gives the same joint law.
TEST(QsimProperty, DisjointMeasurementsCommute) {
  auto s = apply_gate(apply_gate(w_state(3), Gate::h(0)), Gate::rot_z(2, 0.7));
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double p01 = project(project(s, 0, Basis::x(), a), 2, Basis::rotated(0.3), b).trace();
      const double p10 = project(project(s, 2, Basis::rotated(0.3), b), 0, Basis::x(), a).trace();
      EXPECT_NEAR(p01, p10, 1e-12);
    }
  }
}

}  // namespace
}  // namespace qproto::qsim
