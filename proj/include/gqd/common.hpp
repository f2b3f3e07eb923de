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
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gqd {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Matrix3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;
using Vector3 = Eigen::Vector3d;

/// Input that does not describe a valid object (bad state, bad layout,
/// out-of-range family parameter). The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A density matrix that violates one of the physical invariants. The
/// message names the invariant.
class InvalidState : public InvalidInput {
 public:
  InvalidState(std::string invariant, const std::string &detail)
      : InvalidInput(invariant + ": " + detail), invariant_(std::move(invariant)) {}

  const std::string &invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// An internal numerical contract was broken (complex residue where a real
/// number is required, probabilities far below zero, ...). Signals a bug
/// upstream rather than bad input. The CLI maps this to exit code 3.
class NumericalContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which reduced correlation matrix a discord value refers to.
///   SideA: K  = x x^t + T T^t  (measurement on subsystem a)
///   SideB: K' = y y^t + T^t T  (measurement on subsystem b)
enum class Side { A, B };

inline const char *to_string(Side s) { return s == Side::A ? "A" : "B"; }

namespace pauli {

/// sigma^0 = identity, sigma^1 = X, sigma^2 = Y, sigma^3 = Z.
inline const std::array<Matrix2c, 4> &matrices() {
  static const std::array<Matrix2c, 4> m = [] {
    std::array<Matrix2c, 4> s;
    const Complex i{0.0, 1.0};
    s[0] << 1, 0, 0, 1;
    s[1] << 0, 1, 1, 0;
    s[2] << 0, -i, i, 0;
    s[3] << 1, 0, 0, -1;
    return s;
  }();
  return m;
}

inline const Matrix2c &sigma(int mu) { return matrices().at(static_cast<std::size_t>(mu)); }

/// Kronecker product of two 2x2 matrices; first factor is the more
/// significant qubit.
inline Matrix4c kron(const Matrix2c &a, const Matrix2c &b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// sigma^mu (x) sigma^nu on a qubit pair.
inline Matrix4c product(int mu, int nu) { return kron(sigma(mu), sigma(nu)); }

}  // namespace pauli

}  // namespace gqd
