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
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gqd/common.hpp"
#include "gqd/rng.hpp"

namespace gqd {

/// Tolerances separating construction noise from genuine invalidity.
inline constexpr double kStateTolerance = 1e-10;

/// A two-qubit density matrix in the basis |00>, |01>, |10>, |11>; the first
/// qubit is subsystem a, the second subsystem b.
///
/// Instances always satisfy Hermiticity, unit trace and positive
/// semidefiniteness within kStateTolerance; the constructor rejects anything
/// else with InvalidState naming the failed invariant.
class TwoQubitState {
 public:
  explicit TwoQubitState(const Matrix4c &m) : rho_(m) { validate(rho_); }

  const Matrix4c &matrix() const noexcept { return rho_; }
  Complex operator()(int r, int c) const { return rho_(r, c); }

  double purity() const { return (rho_ * rho_).trace().real(); }

  /// Throws InvalidState if `m` is not a density matrix.
  static void validate(const Matrix4c &m) {
    if (!m.allFinite())
      throw InvalidState("finite", "matrix has non-finite entries");
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kStateTolerance) {
      std::ostringstream os;
      os << "max |rho - rho^dagger| = " << herm;
      throw InvalidState("Hermitian", os.str());
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex{1.0, 0.0}) > kStateTolerance) {
      std::ostringstream os;
      os << "trace = " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag()) << "i";
      throw InvalidState("unit trace", os.str());
    }
    const Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -kStateTolerance) {
      std::ostringstream os;
      os << "smallest eigenvalue = " << lo;
      throw InvalidState("positive semidefinite", os.str());
    }
  }

 private:
  Matrix4c rho_;
};

/// Local Bloch vectors and correlation matrix:
///   rho = 1/4 (I(x)I + sum x_i s^i(x)I + sum y_i I(x)s^i + sum t_ij s^i(x)s^j).
struct BlochForm {
  Vector3 x = Vector3::Zero();
  Vector3 y = Vector3::Zero();
  Matrix3 t = Matrix3::Zero();

  /// All sixteen coefficients as R(mu, nu) = tr((s^mu (x) s^nu) rho), with
  /// R(0,0) = 1, R(i,0) = x_i, R(0,j) = y_j, R(i,j) = t_ij.
  Matrix4 coefficients() const {
    Matrix4 r;
    r(0, 0) = 1.0;
    r.block<3, 1>(1, 0) = x;
    r.block<1, 3>(0, 1) = y.transpose();
    r.block<3, 3>(1, 1) = t;
    return r;
  }

  /// ||x||^2 + ||y||^2 + ||T||^2, so that tr(rho^2) = (1 + norm2()) / 4.
  double norm2() const { return x.squaredNorm() + y.squaredNorm() + t.squaredNorm(); }
};

/// Bloch coefficients of a state. Imaginary parts of the traces are at most
/// rounding noise for a valid state and are discarded.
inline BlochForm decompose(const TwoQubitState &state) {
  const Matrix4c &rho = state.matrix();
  Matrix4 r;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Complex v = (pauli::product(mu, nu) * rho).trace();
      if (std::abs(v.imag()) > kStateTolerance)
        throw NumericalContractError("Bloch coefficient has imaginary residue");
      r(mu, nu) = v.real();
    }
  BlochForm b;
  b.x = r.block<3, 1>(1, 0);
  b.y = r.block<1, 3>(0, 1).transpose();
  b.t = r.block<3, 3>(1, 1);
  return b;
}

/// Inverse of decompose. Throws InvalidState when the Bloch data is outside
/// [-1, 1] or describes a non-positive operator.
inline TwoQubitState reconstruct(const BlochForm &bloch) {
  const Matrix4 r = bloch.coefficients();
  if (r.cwiseAbs().maxCoeff() > 1.0 + kStateTolerance)
    throw InvalidState("Bloch entries in [-1, 1]", "coefficient magnitude exceeds 1");
  Matrix4c rho = Matrix4c::Zero();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      if (r(mu, nu) != 0.0) rho += r(mu, nu) * pauli::product(mu, nu);
  rho *= 0.25;
  return TwoQubitState(rho);
}

/// Exchange subsystems a and b.
inline TwoQubitState swap_subsystems(const TwoQubitState &state) {
  Eigen::PermutationMatrix<4> swap;
  swap.indices() << 0, 2, 1, 3;
  const Matrix4c m = swap * state.matrix() * swap.transpose();
  return TwoQubitState(m);
}

/// (U_a (x) U_b) rho (U_a (x) U_b)^dagger.
inline TwoQubitState apply_local_unitary(const TwoQubitState &state, const Matrix2c &ua,
                                         const Matrix2c &ub) {
  const Matrix4c u = pauli::kron(ua, ub);
  Matrix4c m = u * state.matrix() * u.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return TwoQubitState(m);
}

/// Single-qubit density matrix (I + r.sigma)/2.
inline Matrix2c qubit_density(const Vector3 &r) {
  Matrix2c m = pauli::sigma(0);
  for (int i = 0; i < 3; ++i) m += r(i) * pauli::sigma(i + 1);
  return 0.5 * m;
}

/// Singlet |Psi-> = (|01> - |10>)/sqrt(2).
inline Eigen::Vector4cd singlet_vector() {
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

inline Matrix4c singlet_projector() {
  const Eigen::Vector4cd v = singlet_vector();
  return v * v.adjoint();
}

namespace detail {

inline void require(bool ok, std::string_view family, const std::string &what) {
  if (!ok) throw InvalidInput(std::string(family) + ": " + what);
}

inline void require_count(std::span<const double> params, std::size_t n, std::string_view family) {
  if (params.size() != n) {
    std::ostringstream os;
    os << "expected " << n << " parameter(s), got " << params.size();
    throw InvalidInput(std::string(family) + ": " + os.str());
  }
}

inline void require_ball(const Vector3 &r, std::string_view family) {
  require(r.norm() <= 1.0 + kStateTolerance, family, "Bloch vector outside the unit ball");
}

}  // namespace detail

/// Names accepted by make_family.
inline const std::vector<std::string> &family_names() {
  static const std::vector<std::string> names = {"werner", "bell_diagonal", "pure", "product",
                                                 "classical_AB"};
  return names;
}

/// Named state families:
///   werner(p)                   p |Psi-><Psi-| + (1-p) I/4, p in [0, 1]
///   bell_diagonal(c1, c2, c3)   (I + sum c_i s^i(x)s^i)/4, inside the tetrahedron
///   pure(re0, im0, ..., re3, im3)  normalized amplitudes
///   product(xa, ya, za, xb, yb, zb)  rho_a (x) rho_b from two Bloch vectors
///   classical_AB(p1, theta, phi, r1(3), r2(3))
///       p1 |psi1><psi1| (x) rho1 + (1-p1) |psi2><psi2| (x) rho2, where
///       |psi1> has Bloch direction (theta, phi) and |psi2> is orthogonal.
inline TwoQubitState make_family(std::string_view name, std::span<const double> params) {
  for (double v : params)
    detail::require(std::isfinite(v), name, "parameters must be finite");

  if (name == "werner") {
    detail::require_count(params, 1, name);
    const double p = params[0];
    detail::require(p >= 0.0 && p <= 1.0, name, "p must lie in [0, 1]");
    const Matrix4c m = p * singlet_projector() + (1.0 - p) * 0.25 * Matrix4c::Identity();
    return TwoQubitState(m);
  }
  if (name == "bell_diagonal") {
    detail::require_count(params, 3, name);
    BlochForm b;
    b.t.diagonal() << params[0], params[1], params[2];
    try {
      return reconstruct(b);
    } catch (const InvalidState &) {
      throw InvalidInput("bell_diagonal: (c1, c2, c3) outside the physical tetrahedron");
    }
  }
  if (name == "pure") {
    detail::require_count(params, 8, name);
    Eigen::Vector4cd psi;
    for (int k = 0; k < 4; ++k) psi(k) = Complex{params[2 * k], params[2 * k + 1]};
    const double n = psi.norm();
    detail::require(n > 1e-12, name, "amplitude vector is zero");
    psi /= n;
    return TwoQubitState(psi * psi.adjoint());
  }
  if (name == "product") {
    detail::require_count(params, 6, name);
    const Vector3 ra(params[0], params[1], params[2]);
    const Vector3 rb(params[3], params[4], params[5]);
    detail::require_ball(ra, name);
    detail::require_ball(rb, name);
    return TwoQubitState(pauli::kron(qubit_density(ra), qubit_density(rb)));
  }
  if (name == "classical_AB") {
    detail::require_count(params, 9, name);
    const double p1 = params[0];
    detail::require(p1 >= 0.0 && p1 <= 1.0, name, "p1 must lie in [0, 1]");
    const double theta = params[1];
    const double phi = params[2];
    const Vector3 n(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                    std::cos(theta));
    const Vector3 r1(params[3], params[4], params[5]);
    const Vector3 r2(params[6], params[7], params[8]);
    detail::require_ball(r1, name);
    detail::require_ball(r2, name);
    const Matrix4c m = p1 * pauli::kron(qubit_density(n), qubit_density(r1)) +
                       (1.0 - p1) * pauli::kron(qubit_density(-n), qubit_density(r2));
    return TwoQubitState(m);
  }
  throw InvalidInput("unknown state family '" + std::string(name) + "'");
}

inline TwoQubitState make_family(std::string_view name, std::initializer_list<double> params) {
  return make_family(name, std::span<const double>(params.begin(), params.size()));
}

/// Random state rho = G G^dagger / tr(G G^dagger), G a 4 x rank matrix of
/// i.i.d. standard complex Gaussians (induced Ginibre ensemble).
/// Deterministic per seed.
inline TwoQubitState random_state(std::uint64_t seed, int rank) {
  if (rank < 1 || rank > 4) throw InvalidInput("random_state: rank must be in 1..4");
  Engine eng = make_engine(seed, 0x5eed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(4, rank);
  for (int c = 0; c < rank; ++c)
    for (int r = 0; r < 4; ++r) {
      const double re = normal(eng);
      const double im = normal(eng);
      g(r, c) = Complex{re, im};
    }
  Matrix4c m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint()).eval();
  return TwoQubitState(m);
}

/// Haar-random single-qubit unitary, deterministic per seed.
inline Matrix2c random_unitary(std::uint64_t seed) {
  Engine eng = make_engine(seed, 0x0417);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix2c z;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) z(r, c) = Complex{normal(eng), normal(eng)};
  Eigen::HouseholderQR<Matrix2c> qr(z);
  Matrix2c q = qr.householderQ();
  const Matrix2c rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 2; ++k) {
    const Complex d = rr(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

}  // namespace gqd
