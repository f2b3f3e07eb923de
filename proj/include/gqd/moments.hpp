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
#include <cmath>
#include <map>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gqd/common.hpp"
#include "gqd/pairing.hpp"

namespace gqd {

/// The eleven measured values c1..c11 (probabilities of P1..P11, or
/// empirical frequencies).
struct OutcomeVector {
  enum class Provenance { Exact, Sampled };

  std::array<double, 11> c{};
  Provenance provenance = Provenance::Exact;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;

  /// 1-based access, matching the projector numbering.
  double operator()(int i) const { return c.at(static_cast<std::size_t>(i - 1)); }
  double &operator()(int i) { return c.at(static_cast<std::size_t>(i - 1)); }
};

/// Power sums M_k = tr(K^k), k = 1, 2, 3.
struct MomentTriple {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;

  double operator[](int k) const { return k == 1 ? m1 : k == 2 ? m2 : m3; }
};

/// Product of outcome values, as a sorted list of 1-based indices; the empty
/// monomial is the constant 1.
using Monomial = std::vector<int>;

inline std::string to_string(const Monomial &m) {
  if (m.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "*" : "") << 'c' << m[i];
  return os.str();
}

/// Polynomial in c1..c11 with real coefficients.
struct MomentPolynomial {
  std::map<Monomial, double> terms;

  void add(Monomial m, double coeff) {
    std::sort(m.begin(), m.end());
    terms[m] += coeff;
    if (terms[m] == 0.0) terms.erase(m);
  }

  double coefficient(const Monomial &m) const {
    const auto it = terms.find(m);
    return it == terms.end() ? 0.0 : it->second;
  }

  double operator()(const OutcomeVector &c) const {
    double s = 0.0;
    for (const auto &[mono, coeff] : terms) {
      double v = coeff;
      for (int i : mono) v *= c(i);
      s += v;
    }
    return s;
  }
};

/// Polynomials for M1, M2, M3 (index 0, 1, 2).
using MomentTable = std::array<MomentPolynomial, 3>;

/// The outcome-to-moment polynomials exactly as published, expanded into
/// monomials.
inline const MomentTable &printed_moment_table() {
  static const MomentTable t = [] {
    MomentTable m;
    // M1 = 16c1 - 8c2 - 4c3 + 2
    m[0].add({1}, 16);
    m[0].add({2}, -8);
    m[0].add({3}, -4);
    m[0].add({}, 2);
    // M2 = 256c4 + 128c7 - 128(c5 + 2c6) - 16(c3 + 2c2) + 16(c3^2 + 4c2^2) + 4
    m[1].add({4}, 256);
    m[1].add({7}, 128);
    m[1].add({5}, -128);
    m[1].add({6}, -256);
    m[1].add({3}, -16);
    m[1].add({2}, -32);
    m[1].add({3, 3}, 16);
    m[1].add({2, 2}, 64);
    m[1].add({}, 4);
    // M3 = 4096c8 - 16(32c2^3 + 4c3^3 - 24c2^2 - 6c3^2 + 6c2 - 3c3)
    //      + 192(8c7^2 + 16c2c6 + 4c3c5 - 8c2c7 - 4c3c7 + c2c3)
    //      + 384(c7 + 8c11 - c5 - 2c6 - 8c9 - 16c10) + 8
    m[2].add({8}, 4096);
    m[2].add({2, 2, 2}, -16 * 32);
    m[2].add({3, 3, 3}, -16 * 4);
    m[2].add({2, 2}, 16 * 24);
    m[2].add({3, 3}, 16 * 6);
    m[2].add({2}, -16 * 6);
    m[2].add({3}, 16 * 3);
    m[2].add({7, 7}, 192 * 8);
    m[2].add({2, 6}, 192 * 16);
    m[2].add({3, 5}, 192 * 4);
    m[2].add({2, 7}, -192 * 8);
    m[2].add({3, 7}, -192 * 4);
    m[2].add({2, 3}, 192);
    m[2].add({7}, 384);
    m[2].add({11}, 384 * 8);
    m[2].add({5}, -384);
    m[2].add({6}, -384 * 2);
    m[2].add({9}, -384 * 8);
    m[2].add({10}, -384 * 16);
    m[2].add({}, 8);
    return m;
  }();
  return t;
}

namespace detail {

/// Isomorphism class of one connected group of singlet pairs on identical
/// copies: "cycle<n>" for a closed alternating loop over n copies, otherwise
/// the side letters along the open path, read from whichever end gives the
/// lexicographically smaller word.
inline std::vector<std::string> component_signatures(int n_copies, const std::vector<PairOp> &edges) {
  const auto n = static_cast<std::size_t>(n_copies + 1);
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (int c : edges[e].copies) incident[static_cast<std::size_t>(c)].push_back(e);

  std::vector<char> used(edges.size(), 0);
  std::vector<std::string> sigs;
  auto walk = [&](int from, std::size_t first_edge) {
    std::string word;
    int cur = from;
    std::size_t e = first_edge;
    std::size_t steps = 0;
    for (;;) {
      used[e] = 1;
      word.push_back(side_letter(edges[e].side));
      ++steps;
      const int next = edges[e].copies[0] == cur ? edges[e].copies[1] : edges[e].copies[0];
      cur = next;
      std::size_t nxt = edges.size();
      for (std::size_t f : incident[static_cast<std::size_t>(cur)])
        if (!used[f]) nxt = f;
      if (nxt == edges.size()) break;
      e = nxt;
    }
    return std::make_pair(word, cur == from && steps > 1);
  };

  // Open paths start at copies touched by exactly one edge.
  for (int c = 1; c <= n_copies; ++c) {
    const auto &inc = incident[static_cast<std::size_t>(c)];
    if (inc.size() != 1 || used[inc.front()]) continue;
    auto [word, closed] = walk(c, inc.front());
    std::string rev(word.rbegin(), word.rend());
    sigs.push_back(std::min(word, rev));
  }
  // Whatever remains is a cycle.
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (used[e]) continue;
    auto [word, closed] = walk(edges[e].copies[0], e);
    sigs.push_back("cycle" + std::to_string(word.size()));
  }
  std::sort(sigs.begin(), sigs.end());
  return sigs;
}

inline std::vector<PairOp> singlet_pairs(const PairingLayout &l) {
  std::vector<PairOp> out;
  for (const auto &p : l.pairs())
    if (p.kind == PairKind::Singlet) out.push_back(p);
  return out;
}

/// Signature of each standard layout whose singlet pairs are connected.
inline const std::map<std::string, int> &signature_index() {
  static const std::map<std::string, int> idx = [] {
    std::map<std::string, int> m;
    for (int i = 1; i <= 11; ++i) {
      const auto &l = standard_layout(i);
      const auto sig = component_signatures(l.n_copies(), singlet_pairs(l));
      if (sig.size() == 1) m.emplace(sig.front(), i);
    }
    return m;
  }();
  return idx;
}

}  // namespace detail

/// Moment polynomials obtained by expanding, on each setting's matching,
///   U = I - 4P- on every a-pair  and  V = 2I - 4P- on every b-pair
/// (for Side::B the roles swap) and replacing the expectation of every
/// resulting term by a product of outcome values. The expectation of a term
/// factorizes over the connected groups of its singlet pairs because the
/// copies are identical and independent; each group is isomorphic to exactly
/// one of P1..P11.
inline MomentTable derive_moment_table(Side which = Side::A) {
  MomentTable table;
  const auto &idx = detail::signature_index();
  for (int k = 1; k <= 3; ++k) {
    const Setting &s = settings()[static_cast<std::size_t>(k - 1)];
    const std::size_t m = s.matching.size();
    for (std::uint32_t subset = 0; subset < (1u << m); ++subset) {
      double weight = 1.0;
      std::vector<PairOp> chosen;
      for (std::size_t e = 0; e < m; ++e) {
        const bool sel = (subset >> e) & 1u;
        const bool u_side = (s.matching[e].side == Side::A) == (which == Side::A);
        weight *= sel ? -4.0 : (u_side ? 1.0 : 2.0);
        if (sel) chosen.push_back(s.matching[e]);
      }
      Monomial mono;
      for (const auto &sig : detail::component_signatures(s.n_copies, chosen)) {
        const auto it = idx.find(sig);
        if (it == idx.end())
          throw NumericalContractError("no standard layout measures a group of shape " + sig);
        mono.push_back(it->second);
      }
      table[static_cast<std::size_t>(k - 1)].add(std::move(mono), weight);
    }
  }
  return table;
}

/// The table used for estimation: the derived expansion. It is audited
/// against the published coefficients by verify_moment_formulas.
inline const MomentTable &moment_table() {
  static const MomentTable t = derive_moment_table(Side::A);
  return t;
}

/// Swap c2<->c3, c5<->c6, c9<->c10: the outcome vector for the subsystem-b
/// measured discord. An involution.
inline OutcomeVector permute_outcomes(OutcomeVector v) {
  std::swap(v(2), v(3));
  std::swap(v(5), v(6));
  std::swap(v(9), v(10));
  return v;
}

/// Evaluates the verified moment polynomials. For exact outcome vectors the
/// power-mean bounds M1^2/3 <= M2 <= M1^2 of three nonnegative numbers are
/// enforced (within 1e-9).
inline MomentTriple moments_from_outcomes(const OutcomeVector &c, const MomentTable &table = moment_table()) {
  MomentTriple m{table[0](c), table[1](c), table[2](c)};
  if (c.provenance == OutcomeVector::Provenance::Exact) {
    constexpr double tol = 1e-9;
    if (m.m1 < -tol || m.m2 < -tol || m.m2 < m.m1 * m.m1 / 3.0 - tol || m.m2 > m.m1 * m.m1 + tol) {
      std::ostringstream os;
      os << "exact moments violate power-mean bounds: M1=" << m.m1 << " M2=" << m.m2;
      throw NumericalContractError(os.str());
    }
  }
  return m;
}

/// Roots of the characteristic cubic, recovered from power sums.
struct Spectrum {
  /// Real parts, negatives clamped to 0, sorted descending.
  std::array<double, 3> values{};
  /// Largest |imaginary part| among the raw roots.
  double imag_residue = 0.0;
  /// Some root had a nonzero imaginary part or was clamped.
  bool noisy = false;
  /// Discriminant was within tolerance of zero and roots were merged.
  bool repeated = false;
};

/// Newton's identities
///   e1 = M1, e2 = (M1^2 - M2)/2, e3 = (M1^3 - 3 M1 M2 + 2 M3)/6
/// followed by the roots of l^3 - e1 l^2 + e2 l - e3.
///
/// The cubic is rescaled (never up) so its roots are at most O(1), then
/// depressed to t^3 + p t + q. Both p and q at rounding level (1e-13) is a
/// triple root. Otherwise a discriminant that is nonnegative, or negative
/// by no more than its rounding slack, gives three real roots by the
/// trigonometric form (a double root lands on the clamp), and a clearly
/// negative one gives one real root by Cardano's formula, keeping the real
/// parts of the complex pair. With `exact` set, an imaginary residue of 1e-7
/// or more throws NumericalContractError.
inline Spectrum eigenvalues_from_moments(const MomentTriple &m, bool exact) {
  Spectrum out;
  const double e1 = m.m1;
  const double e2 = (m.m1 * m.m1 - m.m2) / 2.0;
  const double e3 = (m.m1 * m.m1 * m.m1 - 3.0 * m.m1 * m.m2 + 2.0 * m.m3) / 6.0;
  // Unit floor: thresholds below act on absolute root separations for
  // spectra up to 1 and relative ones above. Rescaling tiny spectra would
  // blow rounding noise up to O(1).
  const double s = std::max({1.0, std::abs(m.m1), std::sqrt(std::abs(m.m2)), std::cbrt(std::abs(m.m3))});
  if (!std::isfinite(s)) throw NumericalContractError("non-finite moments");

  const double a = e1 / s;
  const double b = e2 / (s * s);
  const double c = e3 / (s * s * s);
  const double p = b - a * a / 3.0;
  const double q = -2.0 * a * a * a / 27.0 + a * b / 3.0 - c;
  const double p3 = 4.0 * p * p * p;
  const double q2 = 27.0 * q * q;
  const double disc = -(p3 + q2);
  // Slack for rounding in the moments (about 1e-12 in p and q after the
  // polynomial evaluation) propagated through disc, plus relative slack.
  const double disc_slack = 1e-10 * (std::abs(p3) + q2) + 1e-12 * (12.0 * p * p + 54.0 * std::abs(q));

  std::array<double, 3> t{};
  if (std::abs(p) <= 1e-13 && std::abs(q) <= 1e-13) {
    out.repeated = true;
  } else if (p < 0.0 && disc >= -disc_slack) {
    out.repeated = disc <= disc_slack;
    const double rad = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(1.5 * q / p * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) t[static_cast<std::size_t>(k)] = rad * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
  } else {
    const double sq = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    t = {u + v, -(u + v) / 2.0, -(u + v) / 2.0};
    out.imag_residue = std::sqrt(3.0) / 2.0 * std::abs(u - v) * s;
    out.noisy = true;
  }
  if (exact && out.imag_residue >= 1e-7) {
    std::ostringstream os;
    os << "exact moments give complex eigenvalues (imaginary part " << out.imag_residue << ")";
    throw NumericalContractError(os.str());
  }
  for (std::size_t k = 0; k < 3; ++k) {
    double l = s * (t[k] + a / 3.0);
    if (l < 0.0) {
      if (l < -1e-9) out.noisy = true;
      l = 0.0;
    }
    out.values[k] = l;
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

/// Power sums of three numbers; inverse of eigenvalues_from_moments on
/// nonnegative triples.
inline MomentTriple power_sums(const std::array<double, 3> &l) {
  MomentTriple m;
  for (double v : l) {
    m.m1 += v;
    m.m2 += v * v;
    m.m3 += v * v * v;
  }
  return m;
}

}  // namespace gqd
