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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gqd/common.hpp"
#include "gqd/contraction.hpp"
#include "gqd/gqd_core.hpp"
#include "gqd/moments.hpp"
#include "gqd/pairing.hpp"
#include "gqd/rng.hpp"
#include "gqd/statekit.hpp"

namespace gqd {

/// c_i = tr[P_i rho^(x)n] for the eleven standard layouts.
inline OutcomeVector outcomes_exact(const TwoQubitState &state) {
  const Matrix4 r = pauli_transfer(state);
  OutcomeVector v;
  v.provenance = OutcomeVector::Provenance::Exact;
  for (int i = 1; i <= 11; ++i) {
    double c = expect_layout(standard_layout(i), r);
    if (c < -1e-12 || c > 1.0 + 1e-12)
      throw NumericalContractError("layout expectation outside [0, 1]");
    v(i) = std::clamp(c, 0.0, 1.0);
  }
  return v;
}

/// Multinomial counts via a chain of conditional binomial draws.
inline std::vector<std::int64_t> sample_multinomial(const std::vector<double> &probs, std::int64_t shots,
                                                    Engine &eng) {
  std::vector<std::int64_t> counts(probs.size(), 0);
  std::int64_t left = shots;
  double mass = 1.0;
  for (std::size_t k = 0; k < probs.size() && left > 0; ++k) {
    if (k + 1 == probs.size()) {
      counts[k] = left;
      break;
    }
    const double p = mass > 0.0 ? std::clamp(probs[k] / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::int64_t> bin(left, p);
    counts[k] = bin(eng);
    left -= counts[k];
    mass -= probs[k];
  }
  return counts;
}

/// Joint distributions of the three settings for one state.
inline std::vector<OutcomeDistribution> setting_distributions(const TwoQubitState &state) {
  std::vector<OutcomeDistribution> out;
  for (const auto &s : settings()) out.push_back(joint_distribution(s, state));
  return out;
}

/// Finite-shot outcome vector: `shots` rounds of each setting, and c_i is
/// the fraction of rounds of P_i's setting in which every SINGLET pair of P_i
/// came out singlet. Setting k draws from substream (seed, k).
inline OutcomeVector outcomes_sampled(const std::vector<OutcomeDistribution> &dists, std::int64_t shots,
                                      std::uint64_t seed) {
  if (shots < 1) throw InvalidInput("shots must be >= 1");
  OutcomeVector v;
  v.provenance = OutcomeVector::Provenance::Sampled;
  v.shots = shots;
  v.seed = seed;
  for (std::size_t k = 0; k < dists.size(); ++k) {
    Engine eng = make_engine(seed, k);
    const auto counts = sample_multinomial(dists[k].probs, shots, eng);
    for (const auto &label : dists[k].setting.covered) {
      const int idx = std::stoi(label.substr(1));
      const std::uint32_t mask = dists[k].setting.singlet_mask(standard_layout(idx));
      std::int64_t hits = 0;
      for (std::uint32_t pat = 0; pat < counts.size(); ++pat)
        if ((pat & mask) == mask) hits += counts[pat];
      v(idx) = static_cast<double>(hits) / static_cast<double>(shots);
    }
  }
  return v;
}

inline OutcomeVector outcomes_sampled(const TwoQubitState &state, std::int64_t shots, std::uint64_t seed) {
  return outcomes_sampled(setting_distributions(state), shots, seed);
}

/// How a discord value was obtained.
enum class Route { BlochExact, SchemeExact, SchemeSampled, QstExact, QstSampled };

inline const char *to_string(Route r) {
  switch (r) {
    case Route::BlochExact: return "bloch-exact";
    case Route::SchemeExact: return "scheme-exact";
    case Route::SchemeSampled: return "scheme-sampled";
    case Route::QstExact: return "qst-exact";
    case Route::QstSampled: return "qst-sampled";
  }
  return "?";
}

struct GqdEstimate {
  Route route = Route::BlochExact;
  Side which = Side::A;
  /// Discord; for sampled routes the mean over repeats.
  double value = 0.0;
  /// Sample standard deviation over repeats (single-experiment spread); 0
  /// for the exact routes.
  double std_err = 0.0;
  std::array<double, 3> eigenvalues{};
  /// Mean outcome vector and moments (scheme routes only).
  OutcomeVector outcomes{};
  MomentTriple moments{};
  int repeats = 1;
  /// Some repeat produced complex or negative roots.
  bool noisy = false;
};

inline GqdEstimate bloch_exact_estimate(const TwoQubitState &state, Side which = Side::A) {
  const GqdValue g = gqd_exact(state, which);
  GqdEstimate e;
  e.route = Route::BlochExact;
  e.which = which;
  e.value = g.value;
  e.eigenvalues = g.eigenvalues;
  e.moments = power_sums(g.eigenvalues);
  return e;
}

struct SchemeOptions {
  Side which = Side::A;
  /// Sampled when set; exact probabilities otherwise.
  bool sampled = false;
  std::int64_t shots = 1'000'000;
  int repeats = 20;
  std::uint64_t seed = 0;
};

namespace detail {

struct SchemeRun {
  OutcomeVector outcomes;
  MomentTriple moments;
  Spectrum spectrum;
  double value = 0.0;
};

inline SchemeRun run_scheme(const OutcomeVector &raw, Side which) {
  SchemeRun r;
  r.outcomes = which == Side::A ? raw : permute_outcomes(raw);
  r.moments = moments_from_outcomes(r.outcomes);
  r.spectrum = eigenvalues_from_moments(r.moments, r.outcomes.provenance == OutcomeVector::Provenance::Exact);
  r.value = (r.spectrum.values[1] + r.spectrum.values[2]) / 4.0;
  return r;
}

}  // namespace detail

/// Measurement-scheme estimate: outcomes -> (swap rule for Side::B) ->
/// moments -> spectrum -> D = (sum - max)/4.
///
/// Sampled mode repeats the full pipeline `repeats` times, repeat k seeded
/// from substream (seed, k), and reports mean and sample standard deviation.
inline GqdEstimate estimate_gqd(const TwoQubitState &state, const SchemeOptions &opt = {}) {
  GqdEstimate e;
  e.which = opt.which;
  if (!opt.sampled) {
    const auto run = detail::run_scheme(outcomes_exact(state), opt.which);
    e.route = Route::SchemeExact;
    e.value = run.value;
    e.eigenvalues = run.spectrum.values;
    e.outcomes = run.outcomes;
    e.moments = run.moments;
    return e;
  }
  if (opt.repeats < 2) throw InvalidInput("sampled estimates need repeats >= 2");
  if (opt.shots < 1) throw InvalidInput("shots must be >= 1");
  const auto dists = setting_distributions(state);
  e.route = Route::SchemeSampled;
  e.repeats = opt.repeats;
  std::vector<double> values;
  OutcomeVector mean_c;
  mean_c.provenance = OutcomeVector::Provenance::Sampled;
  mean_c.shots = opt.shots;
  mean_c.seed = opt.seed;
  for (int k = 0; k < opt.repeats; ++k) {
    const auto raw = outcomes_sampled(dists, opt.shots, substream_seed(opt.seed, static_cast<std::uint64_t>(k)));
    const auto run = detail::run_scheme(raw, opt.which);
    values.push_back(run.value);
    e.noisy = e.noisy || run.spectrum.noisy;
    for (int i = 1; i <= 11; ++i) mean_c(i) += run.outcomes(i) / opt.repeats;
    e.moments.m1 += run.moments.m1 / opt.repeats;
    e.moments.m2 += run.moments.m2 / opt.repeats;
    e.moments.m3 += run.moments.m3 / opt.repeats;
    for (std::size_t j = 0; j < 3; ++j) e.eigenvalues[j] += run.spectrum.values[j] / opt.repeats;
  }
  e.outcomes = mean_c;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  e.value = mean;
  e.std_err = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return e;
}

}  // namespace gqd
