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
#include <numbers>
#include <random>

#include "gqd/common.hpp"
#include "gqd/nelder_mead.hpp"
#include "gqd/rng.hpp"
#include "gqd/statekit.hpp"

namespace gqd {

/// K = x x^t + T T^t (Side::A) or K' = y y^t + T^t T (Side::B).
struct KMatrix {
  Matrix3 entries = Matrix3::Zero();
  Side which = Side::A;
};

inline KMatrix k_matrix(const BlochForm &b, Side which) {
  KMatrix k;
  k.which = which;
  if (which == Side::A)
    k.entries = b.x * b.x.transpose() + b.t * b.t.transpose();
  else
    k.entries = b.y * b.y.transpose() + b.t.transpose() * b.t;
  k.entries = 0.5 * (k.entries + k.entries.transpose()).eval();
  return k;
}

namespace detail {

/// Cyclic Jacobi rotations; used where the closed form loses accuracy.
inline std::array<double, 3> jacobi_eigenvalues(Matrix3 a) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off <= 1e-300 || off <= 1e-34 * a.squaredNorm()) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Matrix3 j = Matrix3::Identity();
        j(p, p) = c;
        j(q, q) = c;
        j(p, q) = s;
        j(q, p) = -s;
        a = (j.transpose() * a * j).eval();
        a(p, q) = a(q, p) = 0.0;
      }
  }
  std::array<double, 3> ev{a(0, 0), a(1, 1), a(2, 2)};
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

}  // namespace detail

/// Eigenvalues of a real symmetric 3x3 matrix, sorted descending.
///
/// Closed-form trigonometric solution; near-degenerate spectra (normalized
/// discriminant below 1e-14) fall back to Jacobi iteration.
inline std::array<double, 3> symmetric_eigenvalues(const Matrix3 &a) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return {0.0, 0.0, 0.0};
  const double q = a.trace() / 3.0;
  const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double diag = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q);
  const double p = std::sqrt((diag + 2.0 * off) / 6.0);
  if (p <= 1e-300) return {q, q, q};
  const Matrix3 b = (a - q * Matrix3::Identity()) / p;
  const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);

  // Discriminant of the characteristic cubic relative to scale^6.
  const double pn = p / scale;
  const double disc = std::pow(pn, 6) * (1.0 - r * r);
  if (disc < 1e-14) return detail::jacobi_eigenvalues(a);

  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::array<double, 3> ev{e1, e2, e3};
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

/// Closed-form geometric discord value with the spectrum it came from.
struct GqdValue {
  double value = 0.0;
  /// Spectrum of K (or K'), descending.
  std::array<double, 3> eigenvalues{};
};

/// D = (sum of eigenvalues - largest eigenvalue) / 4 for the K (Side::A) or
/// K' (Side::B) matrix of the state.
inline GqdValue gqd_exact(const BlochForm &bloch, Side which = Side::A) {
  const KMatrix k = k_matrix(bloch, which);
  auto ev = symmetric_eigenvalues(k.entries);
  for (double &l : ev) {
    if (l < -kStateTolerance) throw NumericalContractError("K matrix has a negative eigenvalue");
    l = std::max(l, 0.0);
  }
  GqdValue out;
  out.eigenvalues = ev;
  out.value = (ev[1] + ev[2]) / 4.0;
  return out;
}

inline GqdValue gqd_exact(const TwoQubitState &state, Side which = Side::A) {
  return gqd_exact(decompose(state), which);
}

/// Structural zero-discord test, independent of K: the state is
/// classical on the measured side iff the operators
/// A_mu = tr_other[(1 (x) s^mu) rho] pairwise commute (they then share an
/// eigenbasis, which is the measurement basis).
inline bool is_zero_discord(const TwoQubitState &state, Side which = Side::A,
                            double tol = 1e-9) {
  const Matrix4c rho = which == Side::A ? state.matrix() : swap_subsystems(state).matrix();
  std::array<Matrix2c, 4> ops;
  for (int mu = 0; mu < 4; ++mu) {
    const Matrix4c m = pauli::kron(pauli::sigma(0), pauli::sigma(mu)) * rho;
    Matrix2c red;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) red(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    ops[static_cast<std::size_t>(mu)] = red;
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if ((ops[i] * ops[j] - ops[j] * ops[i]).cwiseAbs().maxCoeff() > tol) return false;
  return true;
}

struct MinimizationOptions {
  int restarts = 200;
  std::uint64_t seed = 0;
  NelderMeadOptions simplex{};
};

namespace detail {

/// Classical-quantum state from search coordinates
///   (theta, phi, p1, r1[3], r2[3]);
/// p1 is clamped to [0, 1] and the Bloch vectors are radially projected into
/// the unit ball so every coordinate vector maps to a member of the set.
inline Matrix4c classical_state_from(const Eigen::VectorXd &v) {
  const double theta = v(0);
  const double phi = v(1);
  const double p1 = std::clamp(v(2), 0.0, 1.0);
  const Vector3 n(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                  std::cos(theta));
  Vector3 r1 = v.segment<3>(3);
  Vector3 r2 = v.segment<3>(6);
  if (r1.norm() > 1.0) r1.normalize();
  if (r2.norm() > 1.0) r2.normalize();
  return p1 * pauli::kron(qubit_density(n), qubit_density(r1)) +
         (1.0 - p1) * pauli::kron(qubit_density(-n), qubit_density(r2));
}

}  // namespace detail

/// Squared Hilbert-Schmidt distance tr((rho - chi)^2).
inline double hilbert_schmidt_distance2(const Matrix4c &rho, const Matrix4c &chi) {
  return (rho - chi).squaredNorm();
}

/// Brute-force minimum of tr((rho - chi)^2) over classical-quantum states
/// chi = p1 |psi1><psi1| (x) rho1 + p2 |psi2><psi2| (x) rho2, with
/// <psi1|psi2> = 0. Always an upper bound on the true minimum.
///
/// Restart k draws its start point from substream (seed, k), so the result
/// is independent of evaluation order.
inline double gqd_by_minimization(const TwoQubitState &state, const MinimizationOptions &opt = {}) {
  if (opt.restarts < 1) throw InvalidInput("gqd_by_minimization: restarts must be >= 1");
  const Matrix4c rho = state.matrix();
  auto cost = [&rho](const Eigen::VectorXd &v) {
    return hilbert_schmidt_distance2(rho, detail::classical_state_from(v));
  };

  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opt.restarts; ++k) {
    Engine eng = make_engine(opt.seed, static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto ball = [&] {
      Vector3 r;
      do {
        r = Vector3(2 * unit(eng) - 1, 2 * unit(eng) - 1, 2 * unit(eng) - 1);
      } while (r.squaredNorm() > 1.0);
      return r;
    };
    Eigen::VectorXd x0(9);
    x0(0) = std::acos(2 * unit(eng) - 1);
    x0(1) = 2 * std::numbers::pi * unit(eng);
    x0(2) = unit(eng);
    x0.segment<3>(3) = ball();
    x0.segment<3>(6) = ball();
    const auto res = nelder_mead(cost, x0, opt.simplex);
    best = std::min(best, res.value);
  }
  return best;
}

}  // namespace gqd
