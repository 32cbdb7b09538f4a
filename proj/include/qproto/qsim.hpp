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

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qproto/rng.hpp"

// Dense density-matrix simulator over at most ten labelled qubits.
//
// Basis ordering: the qubit at position 0 of labels() is the most significant
// bit of the matrix index (Kronecker order). Measured qubits are removed from
// the register, so positions shift while labels stay stable.
namespace qproto::qsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Vector = Eigen::VectorXcd;
using Label = int;

inline constexpr int kMaxQubits = 10;

/// Polar (theta in [0, pi]) and azimuthal (phi in [0, 2pi)) angles.
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

enum class GateKind { X, Z, H, CZ, CNOT, RotZ };

struct Gate {
  GateKind kind;
  std::vector<Label> targets;  // CNOT: {control, target}
  double angle = 0.0;          // RotZ only

  static Gate x(Label q) { return {GateKind::X, {q}}; }
  static Gate z(Label q) { return {GateKind::Z, {q}}; }
  static Gate h(Label q) { return {GateKind::H, {q}}; }
  static Gate cz(Label a, Label b) { return {GateKind::CZ, {a, b}}; }
  static Gate cnot(Label control, Label target) { return {GateKind::CNOT, {control, target}}; }
  static Gate rot_z(Label q, double alpha) { return {GateKind::RotZ, {q}, alpha}; }

  /// Unitary in the ordering of `targets`. RotZ(a) = diag(e^{-ia/2}, e^{ia/2}).
  Matrix matrix() const;
};

/// Measurement basis. Rotated(a) measures {|+_a>, |-_a>} with
/// |+-_a> = (|0> +- e^{ia}|1>)/sqrt(2); outcome 0 is |+_a>. X == Rotated(0).
struct Basis {
  enum class Kind { Z, Rotated };
  Kind kind = Kind::Z;
  double angle = 0.0;

  static Basis z() { return {Kind::Z, 0.0}; }
  static Basis x() { return {Kind::Rotated, 0.0}; }
  static Basis rotated(double alpha) { return {Kind::Rotated, alpha}; }

  /// Single-qubit unitary mapping the outcome-0 vector to |0> and outcome-1 to |1>.
  Matrix2 to_computational() const;
};

class DensityState {
 public:
  /// Validates shape (2^n x 2^n for n = labels.size()) and label uniqueness.
  DensityState(Matrix rho, std::vector<Label> labels);

  int num_qubits() const { return static_cast<int>(labels_.size()); }
  Eigen::Index dim() const { return rho_.rows(); }
  const Matrix& matrix() const { return rho_; }
  const std::vector<Label>& labels() const { return labels_; }

  bool has(Label q) const;
  /// Position of `q` in labels(); throws std::out_of_range for unknown labels.
  int position(Label q) const;

  double trace() const { return rho_.trace().real(); }
  double purity() const;

  // In-place kernels used by protocol code and the noise module.
  void apply_unitary(const Matrix& u, std::span<const Label> targets);
  /// rho -> sum_k K rho K^dagger on one qubit.
  void apply_kraus_1q(std::span<const Matrix2> kraus, Label q);
  /// Multiplies every element whose row and column differ on qubit q.
  void scale_coherences(Label q, double factor);

 private:
  Matrix rho_;
  std::vector<Label> labels_;
};

/// |0...0><0...0| on labels 0..n-1.
DensityState init_register(int n);
/// (1/sqrt(n)) sum_i |0..1_i..0> on labels 0..n-1; requires 2 <= n <= 10.
DensityState w_state(int n);
/// |psi><psi| for an explicit ket; the ket is normalized.
DensityState pure_state(const Vector& ket, std::vector<Label> labels);
/// cos(theta/2) e^{i phi/2}|0> + sin(theta/2) e^{-i phi/2}|1>.
Vector bloch_ket(const BlochAngles& a);
DensityState bloch_state(const BlochAngles& a, Label label = 0);

/// a (x) b; label sets must be disjoint.
DensityState tensor(const DensityState& a, const DensityState& b);

DensityState apply_gate(DensityState state, const Gate& g);

struct Measurement {
  int bit;
  DensityState state;  // measured qubit removed
};

double outcome_probability(const DensityState& state, Label q, const Basis& basis, int bit);
/// Post-measurement state for a fixed outcome, renormalized, qubit removed.
/// Throws std::domain_error when the outcome probability is below 1e-12.
DensityState collapse(const DensityState& state, Label q, const Basis& basis, int bit);
/// Unnormalized collapse; trace equals the outcome probability.
DensityState project(const DensityState& state, Label q, const Basis& basis, int bit);
/// Born-rule sample. A one-qubit register keeps its (collapsed) qubit since
/// an empty register is not representable.
Measurement measure(const DensityState& state, Label q, const Basis& basis, Rng& rng);

/// Reduced state on `keep` (kept in register order). Throws for an empty set.
DensityState partial_trace(const DensityState& state, std::span<const Label> keep);

/// Tr[rho |psi><psi|]; `target` must be pure and of equal dimension.
double fidelity(const DensityState& state, const DensityState& target);
double fidelity(const DensityState& state, const Vector& ket);

/// Largest elementwise modulus of a - b.
double matrix_distance(const Matrix& a, const Matrix& b);

/// Trace 1, Hermitian and eigenvalues >= -tol.
bool is_physical(const DensityState& state, double tol = 1e-9);

}  // namespace qproto::qsim
