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
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace gqd {

struct NelderMeadOptions {
  double initial_step = 0.25;
  /// Converged once every vertex lies within this distance of the best one.
  double diameter_tolerance = 1e-9;
  std::size_t max_evaluations = 40000;
  /// Re-seed the simplex around the optimum until a pass no longer improves
  /// the value by more than this.
  double restart_improvement = 1e-13;
  int max_simplex_restarts = 4;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Derivative-free simplex minimization of `f` (callable VectorXd -> double)
/// with the standard coefficients (reflect 1, expand 2, contract 1/2,
/// shrink 1/2).
template <typename F>
NelderMeadResult nelder_mead(F &&f, Eigen::VectorXd x0, const NelderMeadOptions &opt = {}) {
  const Eigen::Index n = x0.size();
  NelderMeadResult res;
  res.x = x0;
  res.value = f(x0);
  res.evaluations = 1;

  auto one_pass = [&](const Eigen::VectorXd &start, double start_value) {
    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), start);
    std::vector<double> vals(static_cast<std::size_t>(n + 1), start_value);
    for (Eigen::Index i = 0; i < n; ++i) {
      auto &p = pts[static_cast<std::size_t>(i + 1)];
      p(i) += opt.initial_step;
      vals[static_cast<std::size_t>(i + 1)] = f(p);
      ++res.evaluations;
    }
    std::vector<std::size_t> order(pts.size());
    bool converged = false;
    while (res.evaluations < opt.max_evaluations) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[order.size() - 2];

      double diameter = 0.0;
      for (std::size_t k = 0; k < pts.size(); ++k)
        diameter = std::max(diameter, (pts[k] - pts[best]).norm());
      if (diameter < opt.diameter_tolerance) {
        converged = true;
        break;
      }

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
      for (std::size_t k = 0; k < pts.size(); ++k)
        if (k != worst) centroid += pts[k];
      centroid /= static_cast<double>(n);

      const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
      const double fr = f(reflected);
      ++res.evaluations;
      if (fr < vals[best]) {
        const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
        const double fe = f(expanded);
        ++res.evaluations;
        if (fe < fr) {
          pts[worst] = expanded;
          vals[worst] = fe;
        } else {
          pts[worst] = reflected;
          vals[worst] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[worst] = reflected;
        vals[worst] = fr;
        continue;
      }
      const bool outside = fr < vals[worst];
      const Eigen::VectorXd contracted =
          outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                  : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
      const double fc = f(contracted);
      ++res.evaluations;
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = contracted;
        vals[worst] = fc;
        continue;
      }
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k == best) continue;
        pts[k] = pts[best] + 0.5 * (pts[k] - pts[best]);
        vals[k] = f(pts[k]);
        ++res.evaluations;
      }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    return std::make_tuple(pts[idx], *it, converged);
  };

  for (int pass = 0; pass <= opt.max_simplex_restarts; ++pass) {
    auto [x, v, conv] = one_pass(res.x, res.value);
    const double gain = res.value - v;
    if (v < res.value) {
      res.x = x;
      res.value = v;
    }
    res.converged = conv;
    if (gain <= opt.restart_improvement || res.evaluations >= opt.max_evaluations) break;
  }
  return res;
}

}  // namespace gqd
