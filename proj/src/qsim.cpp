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

#include "qproto/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qproto::qsim {
namespace {

constexpr double kZeroProbability = 1e-12;

using Index = Eigen::Index;

Index bit_mask(int n, int position) { return Index{1} << (n - 1 - position); }

// Index offsets of the 2^k local basis states for the given target positions,
// first target most significant.
std::vector<Index> local_offsets(int n, std::span<const int> positions) {
  const auto k = positions.size();
  std::vector<Index> offsets(std::size_t{1} << k, 0);
  for (std::size_t s = 0; s < offsets.size(); ++s) {
    for (std::size_t j = 0; j < k; ++j) {
      if ((s >> (k - 1 - j)) & 1U) offsets[s] |= bit_mask(n, positions[j]);
    }
  }
  return offsets;
}

// All indices whose target bits are zero.
std::vector<Index> base_indices(Index dim, Index target_mask) {
  std::vector<Index> bases;
  bases.reserve(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) {
    if ((i & target_mask) == 0) bases.push_back(i);
  }
  return bases;
}

void check_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(n));
  }
}

std::vector<Label> iota_labels(int n) {
  std::vector<Label> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i;
  return labels;
}

}  // namespace

Matrix Gate::matrix() const {
  using std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  switch (kind) {
    case GateKind::X: {
      Matrix m(2, 2);
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::Z: {
      Matrix m(2, 2);
      m << 1, 0, 0, -1;
      return m;
    }
    case GateKind::H: {
      Matrix m(2, 2);
      m << 1, 1, 1, -1;
      return m / sqrt2;
    }
    case GateKind::RotZ: {
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = std::exp(-i * angle / 2.0);
      m(1, 1) = std::exp(i * angle / 2.0);
      return m;
    }
    case GateKind::CZ: {
      Matrix m = Matrix::Identity(4, 4);
      m(3, 3) = -1;
      return m;
    }
    case GateKind::CNOT: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = 1;
      m(2, 3) = m(3, 2) = 1;
      return m;
    }
  }
  throw std::logic_error("unhandled gate kind");
}

Matrix2 Basis::to_computational() const {
  if (kind == Kind::Z) return Matrix2::Identity();
  // H * diag(1, e^{-ia}) sends |+_a> -> |0>, |-_a> -> |1>.
  const Complex phase = std::exp(Complex{0.0, -angle});
  Matrix2 u;
  u << 1, phase, 1, -phase;
  return u / std::numbers::sqrt2;
}

DensityState::DensityState(Matrix rho, std::vector<Label> labels)
    : rho_(std::move(rho)), labels_(std::move(labels)) {
  const int n = static_cast<int>(labels_.size());
  check_count(n);
  const Index dim = Index{1} << n;
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw std::invalid_argument("density matrix dimension does not match label count");
  }
  auto sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate qubit label");
  }
}

bool DensityState::has(Label q) const {
  return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

int DensityState::position(Label q) const {
  const auto it = std::find(labels_.begin(), labels_.end(), q);
  if (it == labels_.end()) throw std::out_of_range("unknown qubit label " + std::to_string(q));
  return static_cast<int>(it - labels_.begin());
}

double DensityState::purity() const { return (rho_ * rho_).trace().real(); }

void DensityState::apply_unitary(const Matrix& u, std::span<const Label> targets) {
  const int n = num_qubits();
  std::vector<int> positions;
  positions.reserve(targets.size());
  for (Label t : targets) positions.push_back(position(t));
  {
    auto sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("duplicate gate targets");
    }
  }
  const Index local = Index{1} << positions.size();
  if (u.rows() != local || u.cols() != local) {
    throw std::invalid_argument("operator size does not match target count");
  }
  const auto offsets = local_offsets(n, positions);
  Index mask = 0;
  for (int p : positions) mask |= bit_mask(n, p);
  const auto bases = base_indices(dim(), mask);
  const Matrix u_adj = u.adjoint();

  Vector buffer(local);
  // rho <- U rho
  for (Index col = 0; col < dim(); ++col) {
    for (Index b : bases) {
      for (Index s = 0; s < local; ++s) buffer(s) = rho_(b | offsets[static_cast<std::size_t>(s)], col);
      for (Index r = 0; r < local; ++r) {
        Complex acc = 0.0;
        for (Index s = 0; s < local; ++s) acc += u(r, s) * buffer(s);
        rho_(b | offsets[static_cast<std::size_t>(r)], col) = acc;
      }
    }
  }
  // rho <- rho U^dagger
  for (Index b : bases) {
    for (Index row = 0; row < dim(); ++row) {
      for (Index s = 0; s < local; ++s) buffer(s) = rho_(row, b | offsets[static_cast<std::size_t>(s)]);
      for (Index c = 0; c < local; ++c) {
        Complex acc = 0.0;
        for (Index s = 0; s < local; ++s) acc += buffer(s) * u_adj(s, c);
        rho_(row, b | offsets[static_cast<std::size_t>(c)]) = acc;
      }
    }
  }
}

void DensityState::apply_kraus_1q(std::span<const Matrix2> kraus, Label q) {
  const int n = num_qubits();
  const Index m = bit_mask(n, position(q));
  const auto bases = base_indices(dim(), m);
  for (Index r : bases) {
    for (Index c : bases) {
      Matrix2 block;
      block << rho_(r, c), rho_(r, c | m), rho_(r | m, c), rho_(r | m, c | m);
      Matrix2 out = Matrix2::Zero();
      for (const auto& k : kraus) out.noalias() += k * block * k.adjoint();
      rho_(r, c) = out(0, 0);
      rho_(r, c | m) = out(0, 1);
      rho_(r | m, c) = out(1, 0);
      rho_(r | m, c | m) = out(1, 1);
    }
  }
}

void DensityState::scale_coherences(Label q, double factor) {
  const Index m = bit_mask(num_qubits(), position(q));
  for (Index c = 0; c < dim(); ++c) {
    for (Index r = 0; r < dim(); ++r) {
      if (((r ^ c) & m) != 0) rho_(r, c) *= factor;
    }
  }
}

DensityState init_register(int n) {
  check_count(n);
  const Index dim = Index{1} << n;
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return {std::move(rho), iota_labels(n)};
}

DensityState w_state(int n) {
  if (n < 2 || n > kMaxQubits) {
    throw std::invalid_argument("W state needs 2..10 parties, got " + std::to_string(n));
  }
  const Index dim = Index{1} << n;
  Vector ket = Vector::Zero(dim);
  for (int p = 0; p < n; ++p) ket(bit_mask(n, p)) = 1.0;
  return pure_state(ket, iota_labels(n));
}

DensityState pure_state(const Vector& ket, std::vector<Label> labels) {
  const double norm = ket.norm();
  if (norm < kZeroProbability) throw std::invalid_argument("zero ket");
  const Vector v = ket / norm;
  return {v * v.adjoint(), std::move(labels)};
}

Vector bloch_ket(const BlochAngles& a) {
  const Complex i{0.0, 1.0};
  Vector ket(2);
  ket(0) = std::cos(a.theta / 2.0) * std::exp(i * a.phi / 2.0);
  ket(1) = std::sin(a.theta / 2.0) * std::exp(-i * a.phi / 2.0);
  return ket;
}

DensityState bloch_state(const BlochAngles& a, Label label) {
  const Vector ket = bloch_ket(a);
  return {ket * ket.adjoint(), {label}};
}

DensityState tensor(const DensityState& a, const DensityState& b) {
  std::vector<Label> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  const Index da = a.dim();
  const Index db = b.dim();
  Matrix rho(da * db, da * db);
  for (Index i = 0; i < da; ++i) {
    for (Index j = 0; j < da; ++j) {
      rho.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return {std::move(rho), std::move(labels)};
}

DensityState apply_gate(DensityState state, const Gate& g) {
  const std::size_t expected =
      (g.kind == GateKind::CZ || g.kind == GateKind::CNOT) ? 2U : 1U;
  if (g.targets.size() != expected) throw std::invalid_argument("wrong number of gate targets");
  state.apply_unitary(g.matrix(), g.targets);
  return state;
}

DensityState project(const DensityState& state, Label q, const Basis& basis, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("outcome must be 0 or 1");
  const int n = state.num_qubits();
  if (n < 2) {
    // Removing the last qubit would leave an empty register; callers that
    // need the probability of a one-qubit outcome use outcome_probability.
    throw std::invalid_argument("cannot remove the only qubit of a register");
  }
  DensityState rotated = state;
  if (basis.kind != Basis::Kind::Z) {
    const Matrix u = basis.to_computational();
    const Label target[] = {q};
    rotated.apply_unitary(u, target);
  }
  const int pos = state.position(q);
  const Index m = bit_mask(n, pos);
  const auto bases = base_indices(state.dim(), m);
  const Index off = bit ? m : 0;
  const auto sub = static_cast<Index>(bases.size());
  Matrix out(sub, sub);
  for (Index c = 0; c < sub; ++c) {
    for (Index r = 0; r < sub; ++r) {
      out(r, c) = rotated.matrix()(bases[static_cast<std::size_t>(r)] | off,
                                   bases[static_cast<std::size_t>(c)] | off);
    }
  }
  std::vector<Label> labels = state.labels();
  labels.erase(labels.begin() + pos);
  return {std::move(out), std::move(labels)};
}

double outcome_probability(const DensityState& state, Label q, const Basis& basis, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("outcome must be 0 or 1");
  const int n = state.num_qubits();
  const Index m = bit_mask(n, state.position(q));
  const Matrix2 u = basis.to_computational();
  // <v|rho_q|v> with v the outcome vector; only the reduced 2x2 block matters.
  Matrix2 reduced = Matrix2::Zero();
  for (Index i = 0; i < state.dim(); ++i) {
    if (i & m) continue;
    reduced(0, 0) += state.matrix()(i, i);
    reduced(0, 1) += state.matrix()(i, i | m);
    reduced(1, 0) += state.matrix()(i | m, i);
    reduced(1, 1) += state.matrix()(i | m, i | m);
  }
  const Matrix2 rotated = u * reduced * u.adjoint();
  return std::clamp(rotated(bit, bit).real(), 0.0, 1.0);
}

DensityState collapse(const DensityState& state, Label q, const Basis& basis, int bit) {
  DensityState post = project(state, q, basis, bit);
  const double p = post.trace();
  if (p < kZeroProbability) {
    throw std::domain_error("measurement outcome has zero probability");
  }
  return {post.matrix() / p, post.labels()};
}

Measurement measure(const DensityState& state, Label q, const Basis& basis, Rng& rng) {
  const double p0 = outcome_probability(state, q, basis, 0);
  int bit = uniform01(rng) < p0 ? 0 : 1;
  if (bit == 0 && p0 < kZeroProbability) bit = 1;
  if (bit == 1 && 1.0 - p0 < kZeroProbability) bit = 0;
  if (state.num_qubits() == 1) {
    // Nothing is left once the only qubit is traced out; return the
    // post-measurement single-qubit state instead of an empty register.
    const Matrix2 u = basis.to_computational();
    const Matrix2 v = u.adjoint().col(bit) * u.adjoint().col(bit).adjoint();
    return {bit, DensityState(Matrix(v), state.labels())};
  }
  return {bit, collapse(state, q, basis, bit)};
}

DensityState partial_trace(const DensityState& state, std::span<const Label> keep) {
  if (keep.empty()) throw std::invalid_argument("partial trace needs at least one kept qubit");
  const int n = state.num_qubits();
  std::vector<int> kept;
  for (Label k : keep) kept.push_back(state.position(k));
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("duplicate label in keep set");
  }
  std::vector<int> traced;
  for (int p = 0; p < n; ++p) {
    if (!std::binary_search(kept.begin(), kept.end(), p)) traced.push_back(p);
  }
  const auto keep_offsets = local_offsets(n, kept);
  const auto trace_offsets = local_offsets(n, traced);
  const auto kd = static_cast<Index>(keep_offsets.size());
  Matrix out = Matrix::Zero(kd, kd);
  for (Index r = 0; r < kd; ++r) {
    for (Index c = 0; c < kd; ++c) {
      Complex acc = 0.0;
      for (Index t : trace_offsets) {
        acc += state.matrix()(keep_offsets[static_cast<std::size_t>(r)] | t,
                              keep_offsets[static_cast<std::size_t>(c)] | t);
      }
      out(r, c) = acc;
    }
  }
  std::vector<Label> labels;
  for (int p : kept) labels.push_back(state.labels()[static_cast<std::size_t>(p)]);
  return {std::move(out), std::move(labels)};
}

double fidelity(const DensityState& state, const DensityState& target) {
  if (state.dim() != target.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  if (std::abs(target.purity() - 1.0) > 1e-9) throw std::invalid_argument("fidelity: target is not pure");
  return std::clamp((state.matrix() * target.matrix()).trace().real(), 0.0, 1.0);
}

double fidelity(const DensityState& state, const Vector& ket) {
  if (state.dim() != ket.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Vector v = ket.normalized();
  return std::clamp((v.adjoint() * state.matrix() * v)(0, 0).real(), 0.0, 1.0);
}

double matrix_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_physical(const DensityState& state, double tol) {
  const Matrix& rho = state.matrix();
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > tol) return false;
  if (matrix_distance(rho, rho.adjoint()) > tol) return false;
  const Matrix herm = (rho + rho.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace qproto::qsim
