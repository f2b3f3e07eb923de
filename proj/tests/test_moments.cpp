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
#include <random>

#include <gtest/gtest.h>

#include "gqd/estimator.hpp"
#include "gqd/moment_audit.hpp"

using namespace gqd;

namespace {

// tr(K^k) straight from the Bloch coefficients.
std::array<double, 3> trace_powers_direct(const TwoQubitState &s, Side side) {
  const BlochForm b = decompose(s);
  const Matrix3 k = side == Side::A ? Matrix3(b.x * b.x.transpose() + b.t * b.t.transpose())
                                    : Matrix3(b.y * b.y.transpose() + b.t.transpose() * b.t);
  return {k.trace(), (k * k).trace(), (k * k * k).trace()};
}

}  // namespace

TEST(MomentTable, DerivedPolynomialsReproduceTracePowers) {
  const MomentTable &t = moment_table();
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const TwoQubitState s = random_state(seed + 900, 1 + static_cast<int>(seed % 4));
    const OutcomeVector c = outcomes_exact(s);
    const auto ref = trace_powers_direct(s, Side::A);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(t[k](c), ref[k], 1e-12) << "k=" << k + 1;
  }
}

TEST(MomentTable, WernerFirstMomentByHand) {
  // c1 = (1 + 3p^2)/16, c2 = c3 = 1/4.
  for (double p : {0.0, 0.4, 1.0}) {
    OutcomeVector c;
    c(1) = (1 + 3 * p * p) / 16.0;
    c(2) = c(3) = 0.25;
    EXPECT_NEAR(moment_table()[0](c), 3 * p * p, 1e-15);
  }
}

TEST(MomentTable, PrintedTableDiffersOnlyInOneThirdMomentSign) {
  const MomentTable &printed = printed_moment_table();
  const MomentTable &derived = moment_table();
  EXPECT_EQ(printed[0].terms, derived[0].terms);
  EXPECT_EQ(printed[1].terms, derived[1].terms);
  auto p3 = printed[2].terms;
  auto d3 = derived[2].terms;
  EXPECT_EQ(p3.at({3}), 48.0);
  EXPECT_EQ(d3.at({3}), -48.0);
  p3.erase({3});
  d3.erase({3});
  EXPECT_EQ(p3, d3);
}

TEST(MomentTable, SideBTableIsThePermutation) {
  const MomentTable b = derive_moment_table(Side::B);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TwoQubitState s = random_state(seed + 300, 4);
    const OutcomeVector c = outcomes_exact(s);
    const auto ref = trace_powers_direct(s, Side::B);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_NEAR(b[k](c), ref[k], 1e-12);
      EXPECT_NEAR(moment_table()[k](permute_outcomes(c)), ref[k], 1e-12);
    }
  }
}

TEST(PermuteOutcomes, IsAnInvolution) {
  OutcomeVector c;
  for (int i = 1; i <= 11; ++i) c(i) = i;
  const OutcomeVector p = permute_outcomes(c);
  EXPECT_EQ(p(2), 3);
  EXPECT_EQ(p(6), 5);
  EXPECT_EQ(p(10), 9);
  EXPECT_EQ(p(11), 11);
  EXPECT_EQ(permute_outcomes(p).c, c.c);
}

TEST(MomentBounds, ExactVectorOutsideBoundsThrows) {
  OutcomeVector c;  // all zeros: M1 = 2, M2 = 4, inside; push M2 out.
  c(4) = 0.1;
  EXPECT_THROW(moments_from_outcomes(c), NumericalContractError);
  c.provenance = OutcomeVector::Provenance::Sampled;
  EXPECT_NO_THROW(moments_from_outcomes(c));
}

TEST(Spectrum, RoundTripsRandomTriples) {
  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    std::array<double, 3> l{u(eng), u(eng), u(eng)};
    std::sort(l.begin(), l.end(), std::greater<>());
    const Spectrum s = eigenvalues_from_moments(power_sums(l), true);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(s.values[k], l[k], 1e-7);
  }
}

TEST(Spectrum, RepeatedRoots) {
  const Spectrum triple = eigenvalues_from_moments(power_sums({0.36, 0.36, 0.36}), true);
  for (double v : triple.values) EXPECT_NEAR(v, 0.36, 1e-12);
  EXPECT_TRUE(triple.repeated);

  const Spectrum dbl = eigenvalues_from_moments(power_sums({0.9, 0.2, 0.2}), true);
  EXPECT_NEAR(dbl.values[0], 0.9, 1e-10);
  EXPECT_NEAR(dbl.values[1], 0.2, 1e-8);
  EXPECT_NEAR(dbl.values[2], 0.2, 1e-8);

  const Spectrum zero = eigenvalues_from_moments({0.0, 0.0, 0.0}, true);
  for (double v : zero.values) EXPECT_EQ(v, 0.0);
}

TEST(Spectrum, ComplexRootsFromInconsistentMomentsAreFlagged) {
  // Power sums that no real triple can produce.
  const MomentTriple bad{1.0, 0.5, 0.05};
  EXPECT_THROW(eigenvalues_from_moments(bad, true), NumericalContractError);
  const Spectrum s = eigenvalues_from_moments(bad, false);
  EXPECT_TRUE(s.noisy);
  EXPECT_GT(s.imag_residue, 1e-7);
}

TEST(Audit, DetectsAndCorrectsTheSignError) {
  const MomentAudit a = verify_moment_formulas(60, 5);
  EXPECT_TRUE(a.printed_ok[0]);
  EXPECT_TRUE(a.printed_ok[1]);
  EXPECT_FALSE(a.printed_ok[2]);
  EXPECT_TRUE(a.corrected);
  ASSERT_EQ(a.diff.size(), 1u);
  EXPECT_EQ(a.diff[0].k, 3);
  EXPECT_EQ(a.diff[0].monomial, (Monomial{3}));
  for (double d : a.derived_max_deviation) EXPECT_LE(d, kMomentAuditTolerance);
  for (double e : a.fit_max_coefficient_error) EXPECT_LE(e, 1e-8);
  EXPECT_TRUE(a.passed());
  EXPECT_THROW(verify_moment_formulas(10, 1), InvalidInput);
}

TEST(MomentTable, ReferenceStates) {
  const MomentTriple mixed = moments_from_outcomes(outcomes_exact(TwoQubitState(Matrix4c::Identity() / 4.0)));
  EXPECT_NEAR(mixed.m1, 0.0, 1e-14);
  EXPECT_NEAR(mixed.m2, 0.0, 1e-14);
  EXPECT_NEAR(mixed.m3, 0.0, 1e-14);

  Matrix4c zero_zero = Matrix4c::Zero();
  zero_zero(0, 0) = 1.0;
  EXPECT_NEAR(moments_from_outcomes(outcomes_exact(TwoQubitState(zero_zero))).m1, 2.0, 1e-14);

  for (double p : {0.0, 0.3, 0.8, 1.0}) {
    const MomentTriple m = moments_from_outcomes(outcomes_exact(make_family("werner", {p})));
    EXPECT_NEAR(m.m1, 3 * std::pow(p, 2), 1e-9);
    EXPECT_NEAR(m.m2, 3 * std::pow(p, 4), 1e-9);
    EXPECT_NEAR(m.m3, 3 * std::pow(p, 6), 1e-9);
  }
}

TEST(MomentTable, PermutedMomentsMatchPrimedMatrixOnManyStates) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const TwoQubitState s = random_state(seed + 5000, 1 + static_cast<int>(seed % 4));
    const MomentTriple m = moments_from_outcomes(permute_outcomes(outcomes_exact(s)));
    const auto ref = trace_powers_direct(s, Side::B);
    EXPECT_NEAR(m.m1, ref[0], 1e-9);
    EXPECT_NEAR(m.m2, ref[1], 1e-9);
    EXPECT_NEAR(m.m3, ref[2], 1e-9);
  }
}

TEST(Spectrum, ReferenceTriples) {
  const Spectrum rank_one = eigenvalues_from_moments({2.0, 4.0, 8.0}, true);
  EXPECT_NEAR(rank_one.values[0], 2.0, 1e-12);
  EXPECT_NEAR(rank_one.values[1], 0.0, 1e-12);
  EXPECT_NEAR(rank_one.values[2], 0.0, 1e-12);
  for (double p : {0.1, 0.5, 0.9}) {
    const double q = p * p;
    const Spectrum s = eigenvalues_from_moments({3 * q, 3 * q * q, 3 * q * q * q}, true);
    for (double v : s.values) EXPECT_NEAR(v, q, 1e-12);
  }
}

TEST(Audit, DeterministicPerSeedAndFirstMomentExact) {
  const MomentAudit a = verify_moment_formulas(40, 9);
  const MomentAudit b = verify_moment_formulas(40, 9);
  EXPECT_EQ(a.printed_max_deviation, b.printed_max_deviation);
  EXPECT_EQ(a.derived_max_deviation, b.derived_max_deviation);
  EXPECT_LE(a.printed_max_deviation[0], 1e-9);
  for (double d : a.derived_max_deviation) EXPECT_LE(d, 1e-9);
}
