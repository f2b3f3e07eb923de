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

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "gqd/common.hpp"

namespace gqd {

/// Operator placed on a pair of same-side qubits from two copies.
///   Singlet:    P- = |Psi-><Psi-|
///   Identity:   I (x) I
///   Complement: I (x) I - P-, the other outcome of a {P-, I - P-} measurement
enum class PairKind { Singlet, Identity, Complement };

inline const char *to_string(PairKind k) {
  switch (k) {
    case PairKind::Singlet: return "singlet";
    case PairKind::Identity: return "identity";
    case PairKind::Complement: return "complement";
  }
  return "?";
}

inline char side_letter(Side s) { return s == Side::A ? 'a' : 'b'; }

/// One qubit of one copy: copy index is 1-based.
struct QubitSlot {
  int copy = 1;
  Side side = Side::A;
  auto operator<=>(const QubitSlot &) const = default;
};

struct PairOp {
  Side side = Side::A;
  /// 1-based copy indices, in the order given by the user.
  std::array<int, 2> copies{1, 2};
  PairKind kind = PairKind::Singlet;

  QubitSlot first() const { return {copies[0], side}; }
  QubitSlot second() const { return {copies[1], side}; }
  int lo() const { return std::min(copies[0], copies[1]); }
  int hi() const { return std::max(copies[0], copies[1]); }

  /// Orientation-free key (side, lo, hi).
  std::tuple<int, int, int> key() const { return {side == Side::A ? 0 : 1, lo(), hi()}; }
};

/// Pair operators on n identical copies such that every qubit slot is covered
/// exactly once. Identity is the (matching, kinds) pair; the label is a name
/// only and does not take part in comparisons.
class PairingLayout {
 public:
  PairingLayout(int n_copies, std::vector<PairOp> pairs, std::string label = {})
      : n_copies_(n_copies), pairs_(std::move(pairs)), label_(std::move(label)) {
    validate();
  }

  int n_copies() const noexcept { return n_copies_; }
  const std::vector<PairOp> &pairs() const noexcept { return pairs_; }
  const std::string &label() const noexcept { return label_; }

  /// Pairs in canonical order with each pair stored as (lo, hi).
  std::vector<PairOp> canonical_pairs() const {
    std::vector<PairOp> out = pairs_;
    for (auto &p : out) p.copies = {p.lo(), p.hi()};
    std::sort(out.begin(), out.end(), [](const PairOp &l, const PairOp &r) { return l.key() < r.key(); });
    return out;
  }

  std::size_t count(PairKind k) const {
    return static_cast<std::size_t>(
        std::count_if(pairs_.begin(), pairs_.end(), [k](const PairOp &p) { return p.kind == k; }));
  }

  bool same_matching(const PairingLayout &o) const {
    if (n_copies_ != o.n_copies_ || pairs_.size() != o.pairs_.size()) return false;
    const auto l = canonical_pairs();
    const auto r = o.canonical_pairs();
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i].key() != r[i].key()) return false;
    return true;
  }

  friend bool operator==(const PairingLayout &l, const PairingLayout &r) {
    if (!l.same_matching(r)) return false;
    const auto a = l.canonical_pairs();
    const auto b = r.canonical_pairs();
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].kind != b[i].kind) return false;
    return true;
  }

  /// Compact form such as "I(a1,a6) P-(a2,a3) ... P-(b5,b6)" in stored order.
  std::string formula() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const PairOp &p = pairs_[i];
      if (i) os << ' ';
      os << (p.kind == PairKind::Singlet ? "P-" : p.kind == PairKind::Identity ? "I" : "(I-P-)")
         << '(' << side_letter(p.side) << p.copies[0] << ',' << side_letter(p.side) << p.copies[1]
         << ')';
    }
    return os.str();
  }

 private:
  void validate() const {
    if (n_copies_ < 2 || n_copies_ % 2 != 0 || n_copies_ > 16)
      throw InvalidInput("layout: n_copies must be an even number in 2..16");
    std::vector<int> seen_a(static_cast<std::size_t>(n_copies_ + 1), 0);
    std::vector<int> seen_b(static_cast<std::size_t>(n_copies_ + 1), 0);
    for (const PairOp &p : pairs_) {
      for (int c : p.copies)
        if (c < 1 || c > n_copies_)
          throw InvalidInput("layout: copy index " + std::to_string(c) + " outside 1.." +
                             std::to_string(n_copies_));
      if (p.copies[0] == p.copies[1]) throw InvalidInput("layout: pair joins a slot to itself");
      auto &seen = p.side == Side::A ? seen_a : seen_b;
      for (int c : p.copies) ++seen[static_cast<std::size_t>(c)];
    }
    for (int c = 1; c <= n_copies_; ++c) {
      if (seen_a[static_cast<std::size_t>(c)] != 1 || seen_b[static_cast<std::size_t>(c)] != 1)
        throw InvalidInput("layout: slot of copy " + std::to_string(c) +
                           " is not covered exactly once");
    }
  }

  int n_copies_;
  std::vector<PairOp> pairs_;
  std::string label_;
};

/// A measurement setting: every pair of the matching is measured in the
/// two-outcome basis {P-, I - P-}. The covered layouts are read off the
/// joint outcomes by ignoring (marginalizing) the IDENTITY pairs.
struct Setting {
  std::string name;
  int n_copies = 2;
  /// Matching in a fixed order; the bit order of outcome patterns follows it.
  std::vector<PairOp> matching;
  std::vector<std::string> covered;

  std::size_t pair_count() const { return matching.size(); }
  std::size_t pattern_count() const { return std::size_t{1} << matching.size(); }

  /// Index of the matching pair equal to `p` (orientation-free).
  std::optional<std::size_t> pair_index(const PairOp &p) const {
    for (std::size_t i = 0; i < matching.size(); ++i)
      if (matching[i].key() == p.key()) return i;
    return std::nullopt;
  }

  /// Bit mask (bit (pair_count-1-i) for matching pair i) of the SINGLET pairs
  /// of a covered layout.
  std::uint32_t singlet_mask(const PairingLayout &layout) const {
    if (layout.n_copies() != n_copies) throw InvalidInput("setting/layout copy count mismatch");
    std::uint32_t mask = 0;
    for (const PairOp &p : layout.pairs()) {
      const auto idx = pair_index(p);
      if (!idx) throw InvalidInput("layout is not measurable in setting " + name);
      if (p.kind == PairKind::Singlet) mask |= bit(*idx);
    }
    return mask;
  }

  std::uint32_t bit(std::size_t pair) const {
    return std::uint32_t{1} << (matching.size() - 1 - pair);
  }

  /// Outcome pattern as a string of '1' (singlet) / '0' (complement) in
  /// matching order.
  std::string pattern_string(std::uint32_t pattern) const {
    std::string s(matching.size(), '0');
    for (std::size_t i = 0; i < matching.size(); ++i)
      if (pattern & bit(i)) s[i] = '1';
    return s;
  }

  PairingLayout layout_for(std::uint32_t pattern, std::string label = {}) const {
    std::vector<PairOp> pairs = matching;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      pairs[i].kind = (pattern & bit(i)) ? PairKind::Singlet : PairKind::Complement;
    return PairingLayout(n_copies, std::move(pairs), std::move(label));
  }
};

namespace detail {

inline PairOp pa(int m, int n, PairKind k) { return {Side::A, {m, n}, k}; }
inline PairOp pb(int m, int n, PairKind k) { return {Side::B, {m, n}, k}; }

}  // namespace detail

/// The eleven projectors P1..P11 with their pairings in the printed order:
///   2 copies: {a1a2, b1b2}
///   4 copies: {a1a4, a2a3, b1b2, b3b4}
///   6 copies: {a1a6, a2a3, a4a5, b1b2, b3b4, b5b6}
inline const std::vector<PairingLayout> &standard_layouts() {
  using detail::pa;
  using detail::pb;
  constexpr PairKind S = PairKind::Singlet;
  constexpr PairKind I = PairKind::Identity;
  static const std::vector<PairingLayout> layouts = [] {
    auto two = [](PairKind a12, PairKind b12, const char *label) {
      return PairingLayout(2, {pa(1, 2, a12), pb(1, 2, b12)}, label);
    };
    auto four = [](PairKind a14, PairKind a23, PairKind b12, PairKind b34, const char *label) {
      return PairingLayout(4, {pa(1, 4, a14), pa(2, 3, a23), pb(1, 2, b12), pb(3, 4, b34)}, label);
    };
    auto six = [](PairKind a16, PairKind a23, PairKind a45, PairKind b12, PairKind b34,
                  PairKind b56, const char *label) {
      return PairingLayout(6,
                           {pa(1, 6, a16), pa(2, 3, a23), pa(4, 5, a45), pb(1, 2, b12),
                            pb(3, 4, b34), pb(5, 6, b56)},
                           label);
    };
    return std::vector<PairingLayout>{
        two(S, S, "P1"),
        two(S, I, "P2"),
        two(I, S, "P3"),
        four(S, S, S, S, "P4"),
        four(S, I, S, S, "P5"),
        four(S, S, S, I, "P6"),
        four(I, S, S, I, "P7"),
        six(S, S, S, S, S, S, "P8"),
        six(S, S, I, S, S, S, "P9"),
        six(S, S, S, S, S, I, "P10"),
        six(I, S, S, S, S, I, "P11"),
    };
  }();
  return layouts;
}

inline const PairingLayout &standard_layout(int index) {
  if (index < 1 || index > 11) throw InvalidInput("standard layout index must be 1..11");
  return standard_layouts()[static_cast<std::size_t>(index - 1)];
}

/// Layout by label ("P1".."P11"); nullopt when unknown.
inline std::optional<PairingLayout> find_layout(std::string_view label) {
  for (const auto &l : standard_layouts())
    if (l.label() == label) return l;
  return std::nullopt;
}

/// The three measurement settings S2, S4, S6; each is the matching of its
/// fully-singlet member (P1, P4, P8) and covers the layouts sharing it.
inline const std::vector<Setting> &settings() {
  static const std::vector<Setting> all = [] {
    std::vector<Setting> out;
    const std::array<std::pair<int, const char *>, 3> bases = {
        {{1, "S2"}, {4, "S4"}, {8, "S6"}}};
    for (const auto &[full, name] : bases) {
      const PairingLayout &base = standard_layout(full);
      Setting s;
      s.name = name;
      s.n_copies = base.n_copies();
      s.matching = base.pairs();
      for (const auto &l : standard_layouts())
        if (l.same_matching(base)) s.covered.push_back(l.label());
      out.push_back(std::move(s));
    }
    return out;
  }();
  return all;
}

/// Setting that measures `layout`, if any.
inline const Setting *setting_for(const PairingLayout &layout) {
  for (const auto &s : settings())
    if (s.n_copies == layout.n_copies() &&
        std::all_of(layout.pairs().begin(), layout.pairs().end(),
                    [&](const PairOp &p) { return s.pair_index(p).has_value(); }))
      return &s;
  return nullptr;
}

/// ASCII diagram of a layout, one row per copy. Each row shows the a qubit
/// and the b qubit of that copy joined by a dotted line; pair operators are
/// drawn as brackets to the left (side a) and right (side b):
///   '|' and '-' for a singlet projector, ':' and '.' for the identity,
///   '!' and '~' for the complement I - P-.
inline std::string render_layout(const PairingLayout &layout) {
  const int n = layout.n_copies();

  // Interval lane assignment per side: outer pairs get lanes farther from
  // the qubits.
  struct Arc {
    PairOp op;
    int lane = 0;
  };
  auto assign = [&](Side side) {
    std::vector<Arc> arcs;
    for (const auto &p : layout.canonical_pairs())
      if (p.side == side) arcs.push_back({p, 0});
    // Wider spans first so that nesting gets consistent lanes.
    std::sort(arcs.begin(), arcs.end(), [](const Arc &l, const Arc &r) {
      const int wl = l.op.hi() - l.op.lo();
      const int wr = r.op.hi() - r.op.lo();
      return wl != wr ? wl > wr : l.op.lo() < r.op.lo();
    });
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      int lane = 0;
      bool clash = true;
      while (clash) {
        clash = false;
        for (std::size_t j = 0; j < i; ++j)
          if (arcs[j].lane == lane && !(arcs[j].op.hi() < arcs[i].op.lo() ||
                                        arcs[i].op.hi() < arcs[j].op.lo())) {
            clash = true;
            ++lane;
            break;
          }
      }
      arcs[i].lane = lane;
    }
    return arcs;
  };
  const auto arcs_a = assign(Side::A);
  const auto arcs_b = assign(Side::B);
  auto lanes = [](const std::vector<Arc> &arcs) {
    int m = 0;
    for (const auto &a : arcs) m = std::max(m, a.lane + 1);
    return m;
  };
  const int la = lanes(arcs_a);
  const int lb = lanes(arcs_b);

  auto vchar = [](PairKind k) { return k == PairKind::Singlet ? '|' : k == PairKind::Identity ? ':' : '!'; };
  auto hchar = [](PairKind k) { return k == PairKind::Singlet ? '-' : k == PairKind::Identity ? '.' : '~'; };

  // Columns: 2 chars per lane, then the qubit; lane 0 is outermost.
  const int wa = 2 * la;
  const int wb = 2 * lb;

  std::ostringstream os;
  os << (layout.label().empty() ? std::string("layout") : layout.label()) << " (" << n
     << " copies): " << layout.formula() << '\n';
  os << std::string(static_cast<std::size_t>(wa + 4), ' ') << "a       b\n";
  for (int row = 1; row <= n; ++row) {
    std::string left(static_cast<std::size_t>(wa), ' ');
    for (const auto &arc : arcs_a) {
      const auto col = static_cast<std::size_t>(2 * arc.lane);
      if (row == arc.op.lo() || row == arc.op.hi()) {
        left[col] = '+';
        for (std::size_t c = col + 1; c < left.size(); ++c) left[c] = hchar(arc.op.kind);
      } else if (row > arc.op.lo() && row < arc.op.hi() && left[col] == ' ') {
        left[col] = vchar(arc.op.kind);
      }
    }
    std::string right(static_cast<std::size_t>(wb), ' ');
    for (const auto &arc : arcs_b) {
      const auto col = static_cast<std::size_t>(wb - 1 - 2 * arc.lane);
      if (row == arc.op.lo() || row == arc.op.hi()) {
        right[col] = '+';
        for (std::size_t c = 0; c < col; ++c) right[c] = hchar(arc.op.kind);
      } else if (row > arc.op.lo() && row < arc.op.hi() && right[col] == ' ') {
        right[col] = vchar(arc.op.kind);
      }
    }
    auto kind_at = [row](const std::vector<Arc> &arcs) {
      for (const auto &arc : arcs)
        if (arc.op.lo() == row || arc.op.hi() == row) return arc.op.kind;
      return PairKind::Identity;
    };
    os << (row < 10 ? " " : "") << row << ' ' << left << hchar(kind_at(arcs_a)) << "o.......o"
       << hchar(kind_at(arcs_b)) << right << '\n';
  }
  return os.str();
}

}  // namespace gqd
