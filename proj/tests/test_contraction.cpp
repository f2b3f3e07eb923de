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
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "gqd/contraction.hpp"

using namespace gqd;

namespace {

// Brute force over matrix elements of rho^(x)n with qubits ordered
// a1..an b1..bn: sum_{i,j} O_ij (rho^(x)n)_ji, where O_ij is a product of
// pair-operator elements and (rho^(x)n)_ji a product of copy elements.
double brute_force(const PairingLayout &layout, const Matrix4c &rho) {
  const int n = layout.n_copies();
  const int q = 2 * n;
  auto slot = [n](Side s, int copy) { return (s == Side::A ? 0 : n) + copy - 1; };
  auto bitof = [q](unsigned idx, int pos) { return static_cast<int>((idx >> (q - 1 - pos)) & 1u); };
  Complex total = 0.0;
  for (unsigned i = 0; i < (1u << q); ++i) {
    for (unsigned j = 0; j < (1u << q); ++j) {
      Complex o = 1.0;
      for (const PairOp &p : layout.pairs()) {
        const int s0 = slot(p.side, p.copies[0]);
        const int s1 = slot(p.side, p.copies[1]);
        const Matrix4c op = pair_operator(p.kind);
        o *= op(2 * bitof(i, s0) + bitof(i, s1), 2 * bitof(j, s0) + bitof(j, s1));
        if (o == Complex{0.0}) break;
      }
      if (o == Complex{0.0}) continue;
      Complex r = 1.0;
      for (int c = 1; c <= n; ++c) {
        const int sa = slot(Side::A, c);
        const int sb = slot(Side::B, c);
        r *= rho(2 * bitof(j, sa) + bitof(j, sb), 2 * bitof(i, sa) + bitof(i, sb));
      }
      total += o * r;
    }
  }
  return total.real();
}

}  // namespace

TEST(OperatorIdentities, UAndVFromSinglet) {
  using namespace operators;
  EXPECT_LT((u_from_paulis() - u_from_singlet()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((v_from_paulis() - v_from_singlet()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(EdgeTensor, KnownValues) {
  Matrix4 singlet = Matrix4::Zero();
  singlet.diagonal() << 0.25, -0.25, -0.25, -0.25;
  Matrix4 identity = Matrix4::Zero();
  identity(0, 0) = 1.0;
  EXPECT_LT((edge_tensor(PairKind::Singlet) - singlet).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((edge_tensor(PairKind::Identity) - identity).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((edge_tensor(PairKind::Complement) - (identity - singlet)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ExpectLayout, TwoCopyClosedForms) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TwoQubitState s = random_state(seed, 1 + static_cast<int>(seed % 4));
    const BlochForm b = decompose(s);
    const double x2 = b.x.squaredNorm();
    const double y2 = b.y.squaredNorm();
    EXPECT_NEAR(expect_layout(standard_layout(1), s), (1 - x2 - y2 + b.t.squaredNorm()) / 16.0, 1e-14);
    EXPECT_NEAR(expect_layout(standard_layout(2), s), (1 - x2) / 4.0, 1e-14);
    EXPECT_NEAR(expect_layout(standard_layout(3), s), (1 - y2) / 4.0, 1e-14);
  }
  for (double p : {0.0, 0.5, 1.0})
    EXPECT_NEAR(expect_layout(standard_layout(1), make_family("werner", {p})), (1 + 3 * p * p) / 16.0, 1e-15);
}

TEST(ExpectLayout, MatchesBruteForceUpToFourCopies) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const TwoQubitState s = random_state(seed * 13, 1 + static_cast<int>(seed % 4));
    for (const auto &l : standard_layouts()) {
      if (l.n_copies() > 4) continue;
      const double ref = brute_force(l, s.matrix());
      EXPECT_NEAR(expect_layout(l, s), ref, 1e-12) << l.label();
      EXPECT_NEAR(expect_layout_dense_oracle(l, s), ref, 1e-12) << l.label();
    }
  }
}

TEST(ExpectLayout, ComplementAndIdentityLayouts) {
  const TwoQubitState s = random_state(3, 4);
  const PairingLayout ones(2, {{Side::A, {1, 2}, PairKind::Identity}, {Side::B, {1, 2}, PairKind::Identity}});
  EXPECT_NEAR(expect_layout(ones, s), 1.0, 1e-14);
  const PairingLayout mixed(4, {{Side::A, {1, 2}, PairKind::Complement},
                                {Side::A, {3, 4}, PairKind::Singlet},
                                {Side::B, {2, 3}, PairKind::Complement},
                                {Side::B, {4, 1}, PairKind::Identity}});
  EXPECT_NEAR(expect_layout(mixed, s), brute_force(mixed, s.matrix()), 1e-12);
}

TEST(ExpectLayout, IndependentOfPairOrderAndOrientation) {
  const TwoQubitState s = random_state(9, 3);
  const PairingLayout p = standard_layout(11);
  std::vector<PairOp> rev(p.pairs().rbegin(), p.pairs().rend());
  for (auto &op : rev) std::swap(op.copies[0], op.copies[1]);
  EXPECT_NEAR(expect_layout(PairingLayout(6, rev), s), expect_layout(p, s), 1e-15);
}

TEST(ExpectLayout, WernerSixCopyTrace) {
  // P8 is a single alternating cycle through all six copies.
  for (double p : {0.2, 0.7}) {
    const TwoQubitState s = make_family("werner", {p});
    const double v = expect_layout(standard_layout(8), s);
    // R = diag(1, -p, -p, -p), W = diag(1, -1, -1, -1)/4; the cycle trace is
    // tr((R W R^t W)^3) = (1 + 3 p^6) / 4^6.
    EXPECT_NEAR(v, (1 + 3 * std::pow(p, 6)) / 4096.0, 1e-15);
  }
}

TEST(JointDistribution, NormalizedAndMarginalsMatchLayouts) {
  const TwoQubitState s = random_state(21, 2);
  for (const auto &setting : settings()) {
    const auto d = joint_distribution(setting, s);
    double total = 0.0;
    for (double p : d.probs) {
      EXPECT_GE(p, 0.0);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (const auto &name : setting.covered) {
      const auto l = find_layout(name);
      ASSERT_TRUE(l.has_value());
      EXPECT_NEAR(d.marginal(*l), expect_layout(*l, s), 1e-13) << name;
    }
  }
}
