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
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "gqd/pairing.hpp"

using namespace gqd;

namespace {

constexpr PairKind S = PairKind::Singlet;
constexpr PairKind I = PairKind::Identity;

PairOp a(int m, int n, PairKind k = S) { return {Side::A, {m, n}, k}; }
PairOp b(int m, int n, PairKind k = S) { return {Side::B, {m, n}, k}; }

}  // namespace

TEST(Layout, ElevenStandardLayoutsWithExpectedCopyCounts) {
  const auto &all = standard_layouts();
  ASSERT_EQ(all.size(), 11u);
  const int copies[] = {2, 2, 2, 4, 4, 4, 4, 6, 6, 6, 6};
  for (int i = 0; i < 11; ++i) {
    EXPECT_EQ(all[static_cast<std::size_t>(i)].n_copies(), copies[i]);
    EXPECT_EQ(all[static_cast<std::size_t>(i)].label(), "P" + std::to_string(i + 1));
  }
}

TEST(Layout, P11MatchesCaption) {
  // I(a1a6) P-(a2a3) P-(a4a5) P-(b1b2) P-(b3b4) I(b5b6)
  const PairingLayout expected(6, {a(1, 6, I), a(2, 3), a(4, 5), b(1, 2), b(3, 4), b(5, 6, I)});
  EXPECT_EQ(standard_layout(11), expected);
  EXPECT_EQ(standard_layout(11).count(I), 2u);
  EXPECT_EQ(standard_layout(11).formula(), "I(a1,a6) P-(a2,a3) P-(a4,a5) P-(b1,b2) P-(b3,b4) I(b5,b6)");
}

TEST(Layout, EqualityIgnoresOrderOrientationAndLabel) {
  const PairingLayout x(4, {a(1, 4), a(2, 3), b(1, 2), b(3, 4)}, "mine");
  const PairingLayout y(4, {b(4, 3), a(3, 2), b(2, 1), a(4, 1)});
  EXPECT_EQ(x, y);
  EXPECT_EQ(x, standard_layout(4));
  const PairingLayout z(4, {a(1, 4, I), a(2, 3), b(1, 2), b(3, 4)});
  EXPECT_TRUE(z.same_matching(x));
  EXPECT_FALSE(z == x);
}

TEST(Layout, RejectsBrokenCoverings) {
  EXPECT_THROW(PairingLayout(3, {a(1, 2), b(1, 2)}), InvalidInput);         // odd
  EXPECT_THROW(PairingLayout(2, {a(1, 2)}), InvalidInput);                  // b uncovered
  EXPECT_THROW(PairingLayout(2, {a(1, 2), b(1, 2), a(1, 2)}), InvalidInput);  // reuse
  EXPECT_THROW(PairingLayout(2, {a(1, 1), b(1, 2)}), InvalidInput);         // self pair
  EXPECT_THROW(PairingLayout(2, {a(1, 3), b(1, 2)}), InvalidInput);         // out of range
  EXPECT_THROW(PairingLayout(18, {}), InvalidInput);
}

TEST(Settings, ThreeSettingsCoverAllLayoutsOnce) {
  const auto &ss = settings();
  ASSERT_EQ(ss.size(), 3u);
  std::multiset<std::string> covered;
  for (const auto &s : ss)
    for (const auto &l : s.covered) covered.insert(l);
  EXPECT_EQ(covered.size(), 11u);
  for (int i = 1; i <= 11; ++i) EXPECT_EQ(covered.count("P" + std::to_string(i)), 1u);
  EXPECT_EQ(ss[0].covered, (std::vector<std::string>{"P1", "P2", "P3"}));
  EXPECT_EQ(ss[1].covered, (std::vector<std::string>{"P4", "P5", "P6", "P7"}));
  EXPECT_EQ(ss[2].covered, (std::vector<std::string>{"P8", "P9", "P10", "P11"}));
  for (const auto &l : standard_layouts()) ASSERT_NE(setting_for(l), nullptr) << l.label();
}

TEST(Settings, MasksAndPatterns) {
  const Setting &s6 = settings()[2];
  EXPECT_EQ(s6.pattern_count(), 64u);
  EXPECT_EQ(s6.singlet_mask(standard_layout(8)), 0b111111u);
  EXPECT_EQ(s6.singlet_mask(standard_layout(11)), 0b011110u);
  EXPECT_EQ(s6.pattern_string(0b011110u), "011110");
  const PairingLayout l = s6.layout_for(0b100001u);
  EXPECT_EQ(l.count(S), 2u);
  EXPECT_EQ(l.count(PairKind::Complement), 4u);
  EXPECT_THROW(settings()[0].singlet_mask(standard_layout(4)), InvalidInput);
}

TEST(Render, P11DiagramShowsIdentityArcs) {
  const std::string d = render_layout(standard_layout(11));
  EXPECT_NE(d.find("P11"), std::string::npos);
  EXPECT_NE(d.find("I(a1,a6)"), std::string::npos);
  EXPECT_NE(d.find("I(b5,b6)"), std::string::npos);
  // Six copy rows.
  for (int c = 1; c <= 6; ++c) EXPECT_NE(d.find(" " + std::to_string(c) + " "), std::string::npos);
  EXPECT_NE(d.find(':'), std::string::npos);
}

TEST(Render, EveryLayoutRenders) {
  for (const auto &l : standard_layouts()) {
    const std::string d = render_layout(l);
    const auto lines = static_cast<int>(std::count(d.begin(), d.end(), '\n'));
    EXPECT_GE(lines, l.n_copies() + 1) << l.label();
  }
}
