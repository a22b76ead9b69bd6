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

// Point estimators of the spectral gap and the minimum stationary
// probability from a single path: the plug-in estimator, the skipped-chain
// doubling estimator, and the a-priori deviation formulas they come with.

#pragma once

#include <utility>
#include <vector>

#include "path_stats.hpp"

namespace mixcert {

struct PluginEstimate {
  double gamma_hat = 0.0;
  double pimin_hat = 0.0;
  std::vector<double> eigenvalues_hat;  // descending; empty when degenerate
  bool degenerate = false;
};

// Diag(pi)^{-1/2} M Diag(pi)^{-1/2} from the empirical doublet matrix and
// occupancy. Requires every state to be visited.
Matrix EmpiricalTransitionOperator(const PathStatistics& stats);

PluginEstimate EstimatePlugin(const PathStatistics& stats);
PluginEstimate EstimatePlugin(const SamplePath& path);

inline constexpr double kBootstrapThreshold = 0.31;

struct BootstrapLevel {
  long long a = 0;
  double gamma_hat = 0.0;
};

struct BootstrapEstimate {
  double gamma_tilde = 0.0;
  long long a_selected = 1;
  std::vector<BootstrapLevel> per_level;
};

// Doubles a = 1, 2, 4, ... until the plug-in gap of the a-skipped path
// exceeds 0.31 or a reaches the largest power of two leaving two samples.
// Throws PathTooShort.
BootstrapEstimate EstimateBootstrap(const SamplePath& path);

struct TheoryBoundsInput {
  long long n = 0;
  int d = 0;
  double delta = 0.0;
  double gap = 0.0;    // assumed spectral gap
  double pimin = 0.0;  // assumed minimum stationary probability
  double c = 1.0;      // unspecified absolute constant, supplied by caller
  double epsilon = 0.1;
};

struct TheoryBounds {
  double c = 0.0;
  double pimin_dev = 0.0;
  double gap_dev = 0.0;
  int k_gamma = 0;
  double delta_gamma = 0.0;
  double l_const = 0.0;
  double n0 = 0.0;
};

// Closed-form deviation bounds for the plug-in estimators and the sample
// size at which the doubling estimator reaches relative accuracy epsilon.
// These carry the caller's constant C and are not certificates. Throws
// DomainError.
TheoryBounds ComputeTheoryBounds(const TheoryBoundsInput& in);

}  // namespace mixcert
