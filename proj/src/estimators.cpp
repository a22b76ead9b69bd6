// Copyright 2026 The mixcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "estimators.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace mixcert {

Matrix EmpiricalTransitionOperator(const PathStatistics& stats) {
  const Vector inv_root = stats.pi_hat_emp.array().sqrt().inverse();
  return inv_root.asDiagonal() * stats.m_hat * inv_root.asDiagonal();
}

PluginEstimate EstimatePlugin(const PathStatistics& stats) {
  PluginEstimate out;
  out.pimin_hat = stats.pi_hat_emp.minCoeff();
  if (!(out.pimin_hat > 0.0)) {
    out.degenerate = true;
    out.gamma_hat = 0.0;
    return out;
  }
  const Matrix l = EmpiricalTransitionOperator(stats);
  out.eigenvalues_hat = SymEigenvalues(0.5 * (l + l.transpose()));
  const double slem = std::max(out.eigenvalues_hat[1],
                               std::abs(out.eigenvalues_hat.back()));
  out.gamma_hat = 1.0 - std::min(1.0, slem);
  return out;
}

PluginEstimate EstimatePlugin(const SamplePath& path) {
  return EstimatePlugin(CollectStatistics(path));
}

BootstrapEstimate EstimateBootstrap(const SamplePath& path) {
  const long long n = path.size();
  if (n < 2) {
    throw Error(ErrorCode::kPathTooShort, "bootstrap needs a path of length >= 2");
  }
  long long a_max = 1;
  while (n / (2 * a_max) >= 2) a_max *= 2;

  BootstrapEstimate out;
  for (long long a = 1;; a *= 2) {
    const double g = EstimatePlugin(SkipPath(path, a)).gamma_hat;
    out.per_level.push_back({a, g});
    if (g > kBootstrapThreshold || a >= a_max) {
      out.a_selected = a;
      const double clamped = std::clamp(g, 0.0, 1.0);
      out.gamma_tilde =
          1.0 - std::pow(1.0 - clamped, 1.0 / static_cast<double>(a));
      return out;
    }
  }
}

TheoryBounds ComputeTheoryBounds(const TheoryBoundsInput& in) {
  const auto open_unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (in.n < 1 || in.d < 1 || !open_unit(in.delta) || !open_unit(in.gap) ||
      !open_unit(in.pimin) || !(in.c > 0.0) || !open_unit(in.epsilon)) {
    throw Error(ErrorCode::kDomainError, "theory bounds: argument out of range");
  }
  const double n = static_cast<double>(in.n);
  const double d = static_cast<double>(in.d);

  TheoryBounds out;
  out.c = in.c;

  const double lp = std::log(1.0 / (in.pimin * in.delta));
  out.pimin_dev = in.c * (std::sqrt(in.pimin * lp / (in.gap * n)) +
                          lp / (in.gap * n));
  out.gap_dev = in.c * std::sqrt(std::log(d / in.delta) *
                                 std::log(n / (in.pimin * in.delta)) /
                                 (in.pimin * in.gap * n));

  out.k_gamma = static_cast<int>(std::floor(std::log2(1.0 / in.gap)));
  const double levels = out.k_gamma + 1.0;
  out.delta_gamma = in.delta / levels;
  const double base = 3.0 * std::pow(16.0 * std::sqrt(2.0), 2);
  out.l_const =
      base * std::log(d * levels / in.delta) *
      std::log(base * in.c * in.c * levels /
               (in.epsilon * in.epsilon * in.pimin * in.pimin * in.gap *
                in.delta));
  out.n0 = out.l_const / (in.pimin * in.gap * in.epsilon * in.epsilon);
  return out;
}

}  // namespace mixcert
