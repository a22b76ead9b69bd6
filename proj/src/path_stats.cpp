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

#include "path_stats.hpp"

#include <string>

#include "error.hpp"

namespace mixcert {

PathStatistics CollectStatistics(const SamplePath& path) {
  const long long n = path.size();
  if (n < 2) {
    throw Error(ErrorCode::kPathTooShort,
                "path of length " + std::to_string(n) + " is too short");
  }
  const int d = path.d();
  PathStatistics s;
  s.n = n;
  s.d = d;
  s.n_first = CountVector::Zero(d);
  s.n_full = CountVector::Zero(d);
  s.n_pair = CountMatrix::Zero(d, d);

  const auto& x = path.states();
  for (long long t = 0; t + 1 < n; ++t) {
    const int from = x[static_cast<size_t>(t)];
    ++s.n_first[from];
    ++s.n_pair(from, x[static_cast<size_t>(t + 1)]);
  }
  s.n_full = s.n_first;
  ++s.n_full[x.back()];

  s.m_hat = s.n_pair.cast<double>() / static_cast<double>(n - 1);
  s.pi_hat_emp = s.n_full.cast<double>() / static_cast<double>(n);
  return s;
}

SmoothedTransitionEstimate SmoothedTransitions(const PathStatistics& stats) {
  const int d = stats.d;
  const double alpha = 1.0 / d;
  SmoothedTransitionEstimate out;
  out.alpha = alpha;
  out.p_hat.resize(d, d);
  for (int i = 0; i < d; ++i) {
    const double denom = static_cast<double>(stats.n_first[i]) + d * alpha;
    for (int j = 0; j < d; ++j) {
      out.p_hat(i, j) = (static_cast<double>(stats.n_pair(i, j)) + alpha) / denom;
    }
  }
  return out;
}

SamplePath SkipPath(const SamplePath& path, long long a) {
  if (a < 1) throw Error(ErrorCode::kInvalidArgument, "skip must be >= 1");
  if (a == 1) return path;
  const long long m = path.size() / a;
  if (m < 2) {
    throw Error(ErrorCode::kEmptyResult,
                "skipping by " + std::to_string(a) + " leaves " +
                    std::to_string(m) + " states");
  }
  std::vector<int> out(static_cast<size_t>(m));
  for (long long s = 0; s < m; ++s) {
    out[static_cast<size_t>(s)] = path[(s + 1) * a - 1];
  }
  return SamplePath(path.d(), std::move(out));
}

}  // namespace mixcert
