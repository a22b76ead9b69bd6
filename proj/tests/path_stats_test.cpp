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

#include <gtest/gtest.h>

#include "error.hpp"
#include "test_util.hpp"

namespace mixcert {
namespace {

TEST(CollectStatistics, HandCountedAlternatingPath) {
  const PathStatistics s = CollectStatistics(SamplePath(2, {0, 1, 0, 1, 0}));
  EXPECT_EQ(s.n, 5);
  EXPECT_EQ(s.n_pair(0, 0), 0);
  EXPECT_EQ(s.n_pair(0, 1), 2);
  EXPECT_EQ(s.n_pair(1, 0), 2);
  EXPECT_EQ(s.n_pair(1, 1), 0);
  EXPECT_EQ(s.n_first[0], 2);
  EXPECT_EQ(s.n_first[1], 2);
  EXPECT_EQ(s.n_full[0], 3);
  EXPECT_DOUBLE_EQ(s.pi_hat_emp[0], 0.6);
  EXPECT_DOUBLE_EQ(s.pi_hat_emp[1], 0.4);
  EXPECT_DOUBLE_EQ(s.m_hat(0, 1), 0.5);
}

TEST(CollectStatistics, ConstantPath) {
  const PathStatistics s = CollectStatistics(SamplePath(2, std::vector<int>(10, 0)));
  EXPECT_DOUBLE_EQ(s.m_hat(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(s.m_hat(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(s.m_hat(1, 1), 0.0);
  EXPECT_EQ(s.n_first[1], 0);
}

TEST(CollectStatistics, TooShort) {
  try {
    CollectStatistics(SamplePath(2, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPathTooShort);
  }
}

TEST(CollectStatistics, FuzzedInvariants) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const int d = 2 + static_cast<int>(seed % 6);
    const ChainSpec chain = testing::RandomReversibleChain(d, seed);
    const SamplePath path = SimulatePath(chain, 500 + 37 * seed, InitUniform{}, seed);
    const PathStatistics s = CollectStatistics(path);
    EXPECT_EQ(s.n_pair.sum(), s.n - 1);
    EXPECT_EQ(s.n_first.sum(), s.n - 1);
    EXPECT_EQ(s.n_full.sum(), s.n);
    EXPECT_NEAR(s.m_hat.sum(), 1.0, 1e-12);
    EXPECT_NEAR(s.pi_hat_emp.sum(), 1.0, 1e-12);
    for (int i = 0; i < d; ++i) {
      EXPECT_EQ(s.n_pair.row(i).sum(), s.n_first[i]);
      // Column sums count arrivals: visits over t = 2..n.
      const long long arrivals = s.n_full[i] - (path[0] == i ? 1 : 0);
      EXPECT_EQ(s.n_pair.col(i).sum(), arrivals);
    }
  }
}

TEST(SmoothedTransitions, UnvisitedRowIsUniform) {
  const PathStatistics s = CollectStatistics(SamplePath(2, {0, 0, 0}));
  const auto est = SmoothedTransitions(s);
  EXPECT_DOUBLE_EQ(est.alpha, 0.5);
  EXPECT_DOUBLE_EQ(est.p_hat(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(est.p_hat(1, 1), 0.5);
}

TEST(SmoothedTransitions, HandCounts) {
  // Row 0 sees three 0->0 and one 0->1 transition.
  const PathStatistics s = CollectStatistics(SamplePath(2, {0, 0, 0, 0, 1}));
  const auto est = SmoothedTransitions(s);
  EXPECT_NEAR(est.p_hat(0, 0), 0.7, 1e-15);
  EXPECT_NEAR(est.p_hat(0, 1), 0.3, 1e-15);
}

TEST(SmoothedTransitions, RowsAreStochasticAndBiasIsSmall) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int d = 2 + static_cast<int>(seed % 5);
    const ChainSpec chain = testing::RandomReversibleChain(d, seed);
    const PathStatistics s =
        CollectStatistics(SimulatePath(chain, 300, InitUniform{}, seed));
    const Matrix p = SmoothedTransitions(s).p_hat;
    for (int i = 0; i < d; ++i) {
      EXPECT_NEAR(p.row(i).sum(), 1.0, 1e-14);
      const double ni = static_cast<double>(s.n_first[i]);
      for (int j = 0; j < d; ++j) {
        EXPECT_GT(p(i, j), 0.0);
        if (ni > 0) {
          const double raw = static_cast<double>(s.n_pair(i, j)) / ni;
          EXPECT_LE(std::abs(p(i, j) - raw), 1.0 / (ni + 1.0) + 1e-15);
        }
      }
    }
  }
}

TEST(SkipPath, PicksEveryAthState) {
  std::vector<int> states;
  for (int t = 0; t < 10; ++t) states.push_back(t);
  const SamplePath skipped = SkipPath(SamplePath(10, states), 3);
  EXPECT_EQ(skipped.states(), (std::vector<int>{2, 5, 8}));
  EXPECT_EQ(SkipPath(SamplePath(10, states), 1), SamplePath(10, states));
}

TEST(SkipPath, Composes) {
  const ChainSpec chain = testing::RandomReversibleChain(4, 3);
  const SamplePath path = SimulatePath(chain, 1003, InitUniform{}, 3);
  for (long long a : {2LL, 3LL}) {
    for (long long b : {2LL, 5LL}) {
      EXPECT_EQ(SkipPath(SkipPath(path, a), b), SkipPath(path, a * b));
    }
  }
}

TEST(SkipPath, Errors) {
  const SamplePath path(2, {0, 1, 0, 1, 0});
  try {
    SkipPath(path, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyResult);
  }
  EXPECT_THROW(SkipPath(path, 0), Error);
}

}  // namespace
}  // namespace mixcert
