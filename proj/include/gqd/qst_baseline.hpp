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

#include <array>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gqd/common.hpp"
#include "gqd/estimator.hpp"
#include "gqd/gqd_core.hpp"
#include "gqd/pairing.hpp"
#include "gqd/rng.hpp"
#include "gqd/statekit.hpp"

namespace gqd {

/// Outcome probabilities of the local Pauli setting s^i (x) s^j (i, j in
/// 1..3), indexed by (outcome_a, outcome_b) as 2*oa + ob with 0 = +1 and
/// 1 = -1.
inline std::array<double, 4> pauli_setting_probabilities(const TwoQubitState &state, int i, int j) {
  std::array<double, 4> p{};
  for (int oa = 0; oa < 2; ++oa)
    for (int ob = 0; ob < 2; ++ob) {
      const double sa = oa == 0 ? 1.0 : -1.0;
      const double sb = ob == 0 ? 1.0 : -1.0;
      const Matrix2c pa = 0.5 * (pauli::sigma(0) + sa * pauli::sigma(i));
      const Matrix2c pb = 0.5 * (pauli::sigma(0) + sb * pauli::sigma(j));
      const double v = (pauli::kron(pa, pb) * state.matrix()).trace().real();
      p[static_cast<std::size_t>(2 * oa + ob)] = std::max(v, 0.0);
    }
  const double s = p[0] + p[1] + p[2] + p[3];
  for (double &v : p) v /= s;
  return p;
}

/// Nearest density matrix by eigenvalue clipping: negative eigenvalues are
/// set to zero and the trace renormalized to one.
inline TwoQubitState project_to_density_matrix(const Matrix4c &m) {
  const Matrix4c h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
  const double tr = ev.sum();
  if (!(tr > 0.0)) throw NumericalContractError("reconstruction has no positive part");
  ev /= tr;
  Matrix4c out = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return TwoQubitState(out);
}

struct QstResult {
  /// Linear-inversion Bloch data before projection.
  BlochForm raw;
  TwoQubitState reconstructed{Matrix4c::Identity() / 4.0};
  GqdEstimate estimate;
};

/// Linear-inversion tomography from the nine settings s^i (x) s^j.
///
/// t_ij is the mean of the product of outcomes in setting (i, j); x_i and
/// y_j are single-side means averaged over the three settings containing
/// them. Without `shots` the analytic probabilities are used. The
/// reconstruction is projected to a density matrix and its discord computed
/// in closed form. Setting (i, j) draws from substream (seed, 3(i-1)+(j-1)).
inline QstResult qst_estimate(const TwoQubitState &state, std::optional<std::int64_t> shots, std::uint64_t seed,
                              Side which = Side::A) {
  if (shots && *shots < 1) throw InvalidInput("shots must be >= 1");
  BlochForm b;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const auto probs = pauli_setting_probabilities(state, i, j);
      std::array<double, 4> freq = probs;
      if (shots) {
        Engine eng = make_engine(seed, static_cast<std::uint64_t>(3 * (i - 1) + (j - 1)));
        const auto counts = sample_multinomial({probs.begin(), probs.end()}, *shots, eng);
        for (std::size_t k = 0; k < 4; ++k) freq[k] = static_cast<double>(counts[k]) / static_cast<double>(*shots);
      }
      const double ea = freq[0] + freq[1] - freq[2] - freq[3];
      const double eb = freq[0] - freq[1] + freq[2] - freq[3];
      const double eab = freq[0] - freq[1] - freq[2] + freq[3];
      b.t(i - 1, j - 1) = eab;
      b.x(i - 1) += ea / 3.0;
      b.y(j - 1) += eb / 3.0;
    }
  QstResult r;
  r.raw = b;
  Matrix4c rho = Matrix4c::Zero();
  const Matrix4 coeff = b.coefficients();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) rho += coeff(mu, nu) * pauli::product(mu, nu);
  rho *= 0.25;
  r.reconstructed = project_to_density_matrix(rho);
  const GqdValue g = gqd_exact(r.reconstructed, which);
  r.estimate.route = shots ? Route::QstSampled : Route::QstExact;
  r.estimate.which = which;
  r.estimate.value = g.value;
  r.estimate.eigenvalues = g.eigenvalues;
  r.estimate.moments = power_sums(g.eigenvalues);
  return r;
}

/// Mean and sample standard deviation of `repeats` independent tomography
/// runs; run k uses substream (seed, k).
inline GqdEstimate qst_estimate_repeated(const TwoQubitState &state, std::int64_t shots, int repeats,
                                         std::uint64_t seed, Side which = Side::A) {
  if (repeats < 2) throw InvalidInput("repeated tomography needs repeats >= 2");
  std::vector<double> vals;
  GqdEstimate e;
  e.route = Route::QstSampled;
  e.which = which;
  e.repeats = repeats;
  for (int k = 0; k < repeats; ++k) {
    const auto r = qst_estimate(state, shots, substream_seed(seed, static_cast<std::uint64_t>(k)), which);
    vals.push_back(r.estimate.value);
    for (std::size_t j = 0; j < 3; ++j) e.eigenvalues[j] += r.estimate.eigenvalues[j] / repeats;
  }
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= repeats;
  double ss = 0.0;
  for (double v : vals) ss += (v - mean) * (v - mean);
  e.value = mean;
  e.std_err = std::sqrt(ss / (repeats - 1));
  e.moments = power_sums(e.eigenvalues);
  return e;
}

/// Resource comparison between the multi-copy scheme and tomography.
struct ResourceReport {
  // Published figures.
  int r_p_scheme = 3;
  int r_p_qst = 15;
  int r_c_scheme = 44;
  int r_c_qst = 15;
  int r_scheme = 132;
  int r_qst = 225;
  int projector_count_scheme = 11;
  int settings_scheme = 3;
  // Independent tallies from the layouts; not asserted equal to r_c_scheme.
  int copies_per_round_by_measurement = 0;
  int copies_per_round_by_setting = 0;
  int settings_qst = 9;
};

inline ResourceReport resource_report() {
  ResourceReport r;
  for (const auto &l : standard_layouts()) r.copies_per_round_by_measurement += l.n_copies();
  for (const auto &s : settings()) r.copies_per_round_by_setting += s.n_copies;
  r.projector_count_scheme = static_cast<int>(standard_layouts().size());
  r.settings_scheme = static_cast<int>(settings().size());
  return r;
}

/// Aligned text table of a resource report.
inline std::string format_resource_table(const ResourceReport &r) {
  std::ostringstream os;
  auto row = [&](const std::string &name, const std::string &scheme, const std::string &qst) {
    os << std::left << std::setw(36) << name << std::right << std::setw(8) << scheme << std::setw(8) << qst << '\n';
  };
  row("quantity", "scheme", "QST");
  row("parameters estimated (r_p)", std::to_string(r.r_p_scheme), std::to_string(r.r_p_qst));
  row("copies per round (r_c, published)", std::to_string(r.r_c_scheme), std::to_string(r.r_c_qst));
  row("r = r_p * r_c", std::to_string(r.r_scheme), std::to_string(r.r_qst));
  row("projective measurements", std::to_string(r.projector_count_scheme), "-");
  row("measurement settings", std::to_string(r.settings_scheme), std::to_string(r.settings_qst));
  row("copies, summed over measurements", std::to_string(r.copies_per_round_by_measurement), "-");
  row("copies, summed over settings", std::to_string(r.copies_per_round_by_setting), "-");
  return os.str();
}

}  // namespace gqd
