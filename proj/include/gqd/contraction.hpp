// Copyright 2026 The gqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "gqd/common.hpp"
#include "gqd/pairing.hpp"
#include "gqd/statekit.hpp"

namespace gqd {

/// 4x4 operator of a pair kind, in the basis |00>,|01>,|10>,|11> of
/// (first slot, second slot).
inline Matrix4c pair_operator(PairKind kind) {
  switch (kind) {
    case PairKind::Singlet: return singlet_projector();
    case PairKind::Identity: return Matrix4c::Identity();
    case PairKind::Complement: return Matrix4c::Identity() - singlet_projector();
  }
  throw InvalidInput("unknown pair kind");
}

namespace operators {

/// U = sum_i s^i (x) s^i, built from Pauli products.
inline Matrix4c u_from_paulis() {
  Matrix4c u = Matrix4c::Zero();
  for (int i = 1; i <= 3; ++i) u += pauli::product(i, i);
  return u;
}

/// U = -4 P- + I.
inline Matrix4c u_from_singlet() { return -4.0 * singlet_projector() + Matrix4c::Identity(); }

/// V = I (x) I + sum_i s^i (x) s^i, built from Pauli products.
inline Matrix4c v_from_paulis() { return Matrix4c::Identity() + u_from_paulis(); }

/// V = -4 P- + 2 I.
inline Matrix4c v_from_singlet() { return -4.0 * singlet_projector() + 2.0 * Matrix4c::Identity(); }

}  // namespace operators

/// R(mu, nu) = tr((s^mu (x) s^nu) rho): the copy tensor in the Pauli basis.
inline Matrix4 pauli_transfer(const TwoQubitState &state) {
  Matrix4 r;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Complex v = (pauli::product(mu, nu) * state.matrix()).trace();
      if (std::abs(v.imag()) > 1e-10)
        throw NumericalContractError("copy tensor has imaginary residue");
      r(mu, nu) = v.real();
    }
  return r;
}

/// Edge tensor of a pair operator O in the Pauli basis,
///   W(mu, nu) = tr(O (s^mu (x) s^nu)) / 4,
/// so that O = sum W(mu, nu) s^mu (x) s^nu. Row index belongs to the first
/// slot of the pair.
inline Matrix4 edge_tensor(const Matrix4c &op) {
  Matrix4 w;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Complex v = (op * pauli::product(mu, nu)).trace() / 4.0;
      if (std::abs(v.imag()) > 1e-12)
        throw NumericalContractError("pair operator is not Hermitian");
      w(mu, nu) = v.real();
    }
  return w;
}

inline const Matrix4 &edge_tensor(PairKind kind) {
  static const Matrix4 singlet = edge_tensor(pair_operator(PairKind::Singlet));
  static const Matrix4 identity = edge_tensor(pair_operator(PairKind::Identity));
  static const Matrix4 complement = edge_tensor(pair_operator(PairKind::Complement));
  switch (kind) {
    case PairKind::Singlet: return singlet;
    case PairKind::Identity: return identity;
    case PairKind::Complement: return complement;
  }
  throw InvalidInput("unknown pair kind");
}

/// Expectation tr[(pair operators) rho^(x)n] for a precomputed copy tensor.
///
/// Copies are nodes and pairs are edges; every copy has exactly one a-edge
/// and one b-edge, so each connected component is an alternating cycle. A
/// cycle contracts to the trace of a product of 4x4 real matrices
///   R W_b R^t W_a R W_b ...,
/// which never holds more than 16 numbers at a time. The result does not
/// depend on pair order or on slot order within a pair.
inline double expect_layout(const PairingLayout &layout, const Matrix4 &copy_tensor) {
  const int n = layout.n_copies();
  const auto &pairs = layout.pairs();
  std::vector<int> edge_a(static_cast<std::size_t>(n + 1), -1);
  std::vector<int> edge_b(static_cast<std::size_t>(n + 1), -1);
  for (std::size_t e = 0; e < pairs.size(); ++e)
    for (int c : pairs[e].copies)
      (pairs[e].side == Side::A ? edge_a : edge_b)[static_cast<std::size_t>(c)] = static_cast<int>(e);

  const Matrix4 &r = copy_tensor;
  const Matrix4 rt = r.transpose();
  std::vector<char> visited(static_cast<std::size_t>(n + 1), 0);
  double value = 1.0;
  for (int start = 1; start <= n; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    visited[static_cast<std::size_t>(start)] = 1;
    // Enter `start` through its a slot and leave through its b slot.
    Matrix4 acc = r;
    int cur = start;
    Side out = Side::B;
    for (;;) {
      const int e = (out == Side::A ? edge_a : edge_b)[static_cast<std::size_t>(cur)];
      const PairOp &p = pairs[static_cast<std::size_t>(e)];
      const int next = p.copies[0] == cur ? p.copies[1] : p.copies[0];
      const Matrix4 &w = edge_tensor(p.kind);
      if (p.copies[0] == cur)
        acc = (acc * w).eval();
      else
        acc = (acc * w.transpose()).eval();
      if (next == start && out == Side::A) break;
      visited[static_cast<std::size_t>(next)] = 1;
      // Entering through `out`, leaving through the other side.
      acc = (acc * (out == Side::B ? rt : r)).eval();
      out = out == Side::A ? Side::B : Side::A;
      cur = next;
    }
    value *= acc.trace();
  }
  return value;
}

inline double expect_layout(const PairingLayout &layout, const TwoQubitState &state) {
  return expect_layout(layout, pauli_transfer(state));
}

/// Reference route: builds the 4^n x 4^n operator and rho^(x)n explicitly and
/// traces their product. Limited to n_copies <= 4 (256 x 256).
inline double expect_layout_dense_oracle(const PairingLayout &layout, const TwoQubitState &state) {
  const int n = layout.n_copies();
  if (n > 4) throw InvalidInput("dense oracle supports at most 4 copies");
  const int qubits = 2 * n;
  const Eigen::Index dim = Eigen::Index{1} << qubits;

  // Qubit order: a1 b1 a2 b2 ...; qubit 0 is the most significant bit.
  Eigen::MatrixXcd rho_n = Eigen::MatrixXcd::Ones(1, 1);
  for (int c = 0; c < n; ++c) {
    Eigen::MatrixXcd next(rho_n.rows() * 4, rho_n.cols() * 4);
    for (Eigen::Index i = 0; i < rho_n.rows(); ++i)
      for (Eigen::Index j = 0; j < rho_n.cols(); ++j)
        next.block(4 * i, 4 * j, 4, 4) = rho_n(i, j) * state.matrix();
    rho_n = std::move(next);
  }

  auto bit_of = [&](int qubit) { return qubits - 1 - qubit; };
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(dim, dim);
  for (const PairOp &p : layout.pairs()) {
    const int qp = 2 * (p.copies[0] - 1) + (p.side == Side::A ? 0 : 1);
    const int qq = 2 * (p.copies[1] - 1) + (p.side == Side::A ? 0 : 1);
    const int bp = bit_of(qp);
    const int bq = bit_of(qq);
    const Eigen::Index mask = (Eigen::Index{1} << bp) | (Eigen::Index{1} << bq);
    const Matrix4c small = pair_operator(p.kind);
    Eigen::MatrixXcd emb = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) {
        if (((i ^ j) & ~mask) != 0) continue;
        const auto si = 2 * ((i >> bp) & 1) + ((i >> bq) & 1);
        const auto sj = 2 * ((j >> bp) & 1) + ((j >> bq) & 1);
        emb(i, j) = small(si, sj);
      }
    op = (op * emb).eval();
  }
  const Complex tr = (op.cwiseProduct(rho_n.transpose())).sum();
  if (std::abs(tr.imag()) > 1e-10)
    throw NumericalContractError("dense expectation has imaginary residue");
  return tr.real();
}

/// Joint outcome probabilities of one measurement setting. probs[pattern]
/// with pattern bits in matching order (see Setting::pattern_string): 1 means
/// the pair was found in the singlet, 0 in the complement.
struct OutcomeDistribution {
  Setting setting;
  std::vector<double> probs;

  /// Probability that every pair in `mask` shows singlet, the other pairs
  /// being unconstrained.
  double marginal(std::uint32_t mask) const {
    double s = 0.0;
    for (std::uint32_t pat = 0; pat < probs.size(); ++pat)
      if ((pat & mask) == mask) s += probs[pat];
    return s;
  }

  double marginal(const PairingLayout &layout) const { return marginal(setting.singlet_mask(layout)); }
};

inline constexpr double kNegativeProbabilityTolerance = 1e-12;

/// Probabilities of all 2^pairs outcome patterns. Each pattern is the
/// expectation of the layout with SINGLET on its 1-bits and I - P- on its
/// 0-bits; I - P- enters the contraction through its edge tensor, which is
/// the IDENTITY tensor minus the SINGLET tensor. Patterns are evaluated in
/// ascending order, so the result is reproducible bit for bit.
inline OutcomeDistribution joint_distribution(const Setting &setting, const TwoQubitState &state) {
  const Matrix4 r = pauli_transfer(state);
  OutcomeDistribution d;
  d.setting = setting;
  d.probs.resize(setting.pattern_count());
  for (std::uint32_t pat = 0; pat < d.probs.size(); ++pat) {
    double p = expect_layout(setting.layout_for(pat), r);
    if (p < 0.0) {
      if (p < -kNegativeProbabilityTolerance) {
        std::ostringstream os;
        os << "negative probability " << p << " for pattern " << setting.pattern_string(pat);
        throw NumericalContractError(os.str());
      }
      p = 0.0;
    }
    d.probs[pat] = p;
  }
  double total = 0.0;
  for (double p : d.probs) total += p;
  if (std::abs(total - 1.0) > 1e-9)
    throw NumericalContractError("outcome distribution does not sum to 1");
  for (double &p : d.probs) p /= total;
  return d;
}

}  // namespace gqd
