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

#include <gtest/gtest.h>

#include <cmath>

#include "error.hpp"
#include "test_util.hpp"

namespace mixcert {
namespace {

double SpectralNorm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues()[0];
}

TEST(EstimatePlugin, UnvisitedStateIsDegenerate) {
  const PluginEstimate e = EstimatePlugin(SamplePath(3, {0, 1, 0, 1}));
  EXPECT_TRUE(e.degenerate);
  EXPECT_EQ(e.gamma_hat, 0.0);
  EXPECT_EQ(e.pimin_hat, 0.0);
}

TEST(EstimatePlugin, AlternatingPathHasZeroGap) {
  std::vector<int> states(1000);
  for (size_t t = 0; t < states.size(); ++t) states[t] = static_cast<int>(t % 2);
  const PluginEstimate e = EstimatePlugin(SamplePath(2, states));
  EXPECT_FALSE(e.degenerate);
  EXPECT_NEAR(e.eigenvalues_hat[0], 1.0, 1e-12);
  EXPECT_NEAR(e.eigenvalues_hat[1], -1.0, 1e-12);
  EXPECT_NEAR(e.gamma_hat, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(e.pimin_hat, 0.5);
}

TEST(EstimatePlugin, ConsistentOnTwoStateChain) {
  FamilyParams fp;
  fp.pibar = 0.1;
  const ChainSpec chain = ChainFamily("two-state-B", fp);
  const PluginEstimate e =
      EstimatePlugin(SimulatePath(chain, 1000000, InitStationary{}, 42));
  EXPECT_NEAR(e.gamma_hat, 0.6, 0.05);
  EXPECT_NEAR(e.pimin_hat, 1.0 / 6.0, 0.01);
}

TEST(EstimatePlugin, EigenvaluePerturbationIsBoundedBySpectralNorm) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int d = 2 + static_cast<int>(seed % 5);
    const ChainSpec chain = testing::RandomReversibleChain(d, seed);
    const Vector pi = ComputeStationary(chain).pi;
    const Matrix l = SymmetrizedTransitionOperator(chain, pi);
    const PathStatistics s =
        CollectStatistics(SimulatePath(chain, 5000, InitStationary{}, seed));
    const PluginEstimate e = EstimatePlugin(s);
    ASSERT_FALSE(e.degenerate);
    const Matrix lhat = EmpiricalTransitionOperator(s);
    const double norm = SpectralNorm(0.5 * (lhat + lhat.transpose()) - l);
    const auto truth = SymEigenvalues(l);
    for (int k = 0; k < d; ++k) {
      EXPECT_LE(std::abs(e.eigenvalues_hat[k] - truth[k]), norm + 1e-12);
    }
  }
}

TEST(EstimatePlugin, Deterministic) {
  const ChainSpec chain = testing::RandomReversibleChain(4, 11);
  const SamplePath path = SimulatePath(chain, 20000, InitUniform{}, 11);
  const PluginEstimate a = EstimatePlugin(path);
  const PluginEstimate b = EstimatePlugin(path);
  EXPECT_EQ(a.gamma_hat, b.gamma_hat);
  EXPECT_EQ(a.eigenvalues_hat, b.eigenvalues_hat);
}

TEST(EstimateBootstrap, ConstantPathVisitsAllLevels) {
  const BootstrapEstimate e = EstimateBootstrap(SamplePath(2, std::vector<int>(10, 1)));
  ASSERT_EQ(e.per_level.size(), 3u);
  EXPECT_EQ(e.per_level[0].a, 1);
  EXPECT_EQ(e.per_level[1].a, 2);
  EXPECT_EQ(e.per_level[2].a, 4);
  EXPECT_EQ(e.a_selected, 4);
  EXPECT_EQ(e.gamma_tilde, 0.0);
}

TEST(EstimateBootstrap, SelectsFirstLevelAboveThreshold) {
  // Lazy chain with gap 0.2; the 2-skipped chain has gap 1 - 0.8^2 = 0.36.
  FamilyParams fp;
  fp.d = 3;
  fp.beta = 0.2;
  const ChainSpec chain = ChainFamily("lazy-uniform", fp);
  const BootstrapEstimate e =
      EstimateBootstrap(SimulatePath(chain, 200000, InitStationary{}, 8));
  EXPECT_EQ(e.a_selected, 2);
  ASSERT_EQ(e.per_level.size(), 2u);
  EXPECT_NEAR(e.per_level[1].gamma_hat, 0.36, 0.03);
  EXPECT_NEAR(e.gamma_tilde, 1.0 - std::sqrt(1.0 - e.per_level[1].gamma_hat),
              1e-15);
  EXPECT_NEAR(e.gamma_tilde, 0.2, 0.03);
}

TEST(EstimateBootstrap, FastChainStopsAtFirstLevel) {
  FamilyParams fp;
  fp.pibar = 0.2;
  const BootstrapEstimate e = EstimateBootstrap(
      SimulatePath(ChainFamily("two-state-A", fp), 10000, InitStationary{}, 3));
  EXPECT_EQ(e.a_selected, 1);
  EXPECT_EQ(e.gamma_tilde, e.per_level[0].gamma_hat);
}

TheoryBoundsInput ExampleInput() {
  TheoryBoundsInput in;
  in.n = 1000000;
  in.d = 10;
  in.delta = 0.05;
  in.gap = 0.1;
  in.pimin = 0.05;
  in.c = 1.0;
  return in;
}

TEST(TheoryBounds, FrozenDeviations) {
  const TheoryBounds t = ComputeTheoryBounds(ExampleInput());
  EXPECT_NEAR(t.pimin_dev, 0.0017907330280733651, 1e-15);
  EXPECT_NEAR(t.gap_dev, 0.14487487026947699, 1e-14);
}

TEST(TheoryBounds, FrozenSampleSizeConstant) {
  TheoryBoundsInput in;
  in.n = 1000;
  in.d = 2;
  in.delta = 0.1;
  in.gap = 0.5;
  in.pimin = 0.25;
  in.epsilon = 0.1;
  const TheoryBounds t = ComputeTheoryBounds(in);
  EXPECT_EQ(t.k_gamma, 1);
  EXPECT_DOUBLE_EQ(t.delta_gamma, 0.05);
  EXPECT_NEAR(t.l_const, 104276.84462293705, 1e-7);
  EXPECT_NEAR(t.n0, 83421475.698349625, 1e-4);
}

TEST(TheoryBounds, DecreaseWithSampleSize) {
  TheoryBoundsInput in = ExampleInput();
  TheoryBounds prev = ComputeTheoryBounds(in);
  for (int k = 0; k < 5; ++k) {
    in.n *= 2;
    const TheoryBounds next = ComputeTheoryBounds(in);
    EXPECT_LT(next.pimin_dev, prev.pimin_dev);
    EXPECT_LT(next.gap_dev, prev.gap_dev);
    EXPECT_EQ(next.n0, prev.n0);
    prev = next;
  }
}

TEST(TheoryBounds, DomainErrors) {
  TheoryBoundsInput in = ExampleInput();
  in.delta = 1.0;
  EXPECT_THROW(ComputeTheoryBounds(in), Error);
  in = ExampleInput();
  in.gap = 0.0;
  EXPECT_THROW(ComputeTheoryBounds(in), Error);
  in = ExampleInput();
  in.c = -1.0;
  EXPECT_THROW(ComputeTheoryBounds(in), Error);
}

}  // namespace
}  // namespace mixcert
