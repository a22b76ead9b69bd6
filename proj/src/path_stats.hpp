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

// Counting statistics of a sample path and the Laplace-smoothed transition
// matrix built from them.

#pragma once

#include <cstdint>
#include <vector>

#include "markov_core.hpp"

namespace mixcert {

using CountMatrix =
    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

struct PathStatistics {
  long long n = 0;
  int d = 0;
  CountVector n_first;  // visits over t = 1..n-1 (origins of transitions)
  CountVector n_full;   // visits over t = 1..n
  CountMatrix n_pair;   // transition counts
  Matrix m_hat;         // n_pair / (n - 1)
  Vector pi_hat_emp;    // n_full / n
};

// Single pass over the path. Throws PathTooShort when n < 2.
PathStatistics CollectStatistics(const SamplePath& path);

struct SmoothedTransitionEstimate {
  Matrix p_hat;
  double alpha = 0.0;
};

// P_ij = (N_ij + 1/d) / (N_i + 1).
SmoothedTransitionEstimate SmoothedTransitions(const PathStatistics& stats);

// (X_a, X_2a, ...) of length floor(n/a). Throws InvalidArgument for a < 1
// and EmptyResult when fewer than two states remain.
SamplePath SkipPath(const SamplePath& path, long long a);

}  // namespace mixcert
