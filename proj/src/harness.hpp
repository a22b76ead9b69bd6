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

// Monte Carlo validation of the estimators and intervals against chains
// whose spectrum is known exactly, plus the brute-force total-variation
// mixing time used to check the relaxation-time sandwich.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "empirical_ci.hpp"
#include "io.hpp"
#include "markov_core.hpp"

namespace mixcert {

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t z);

// Seed of trial i: Mix64(master ^ Mix64(i)). Recorded in every report.
std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t trial);
inline constexpr const char* kTrialSeedRule =
    "splitmix64(master_seed ^ splitmix64(trial_index))";

// Runs fn(0..count-1) on up to `jobs` threads. fn must only write to
// per-index state.
void ParallelFor(int count, int jobs, const std::function<void(int)>& fn);

// Resolves the worker count: MIXCERT_JOBS overrides the requested value.
int ResolveJobs(int requested);

// min{t >= 0 : max over point-mass starts of TV(e_i P^t, pi) <= threshold}.
// Throws Diverged after 10^6 steps and InvalidArgument for d > 64.
long long TvMixingTime(const ChainSpec& chain, double threshold = 0.25);

enum class ValidateKind { kCoverage, kWidth, kAccuracy };

struct ExperimentConfig {
  ValidateKind kind = ValidateKind::kCoverage;
  std::vector<long long> steps;  // strictly increasing, each >= 2
  int trials = 1;
  double delta = 0.1;
  std::uint64_t master_seed = 0;
  int jobs = 1;
  std::string init = "stationary";
};

struct TrialOutcome {
  std::uint64_t seed = 0;
  long long n = 0;
  // empirical intervals (coverage, width)
  double gamma_hat = 0.0;
  double w_hat = 0.0;
  double b_hat = 0.0;
  bool gap_covered = false;
  bool pi_covered = false;
  bool pimin_covered = false;
  bool tmix_covered = false;
  // plug-in and bootstrap (accuracy)
  double plugin_gamma = 0.0;
  double plugin_pimin = 0.0;
  double plugin_abs_error = 0.0;
  double bootstrap_gamma = 0.0;
  long long bootstrap_a = 0;
  double bootstrap_rel_error = 0.0;
};

struct LevelSummary {
  long long n = 0;
  int trials = 0;
  double coverage_gap = 0.0;
  double coverage_pi = 0.0;
  double coverage_pimin = 0.0;
  double coverage_joint = 0.0;
  double coverage_tmix = 0.0;
  double mean_w_hat = 0.0;
  double median_w_hat = 0.0;
  double mean_b_hat = 0.0;
  double median_b_hat = 0.0;
  double mean_plugin_abs_error = 0.0;
  double median_plugin_abs_error = 0.0;
  double median_bootstrap_rel_error = 0.0;
  double fraction_bootstrap_rel_error_le_half = 0.0;
  std::vector<TrialOutcome> outcomes;  // sorted by trial index
};

struct CoverageReport {
  ExperimentConfig config;
  SpectralSummary truth;
  Vector pi_true;
  std::vector<LevelSummary> levels;
  // mean w_hat at the last grid point over mean w_hat at the first.
  double width_ratio = 0.0;
  double wall_seconds = 0.0;  // not serialized
};

// Throws BadParams for an invalid config, NotErgodic/NotReversible for a
// chain without an exact spectral oracle.
CoverageReport RunValidation(const ChainSpec& chain, const ExperimentConfig& config);

double BinomialStdError(double p, int trials);

Json ToJson(const CoverageReport& r);

}  // namespace mixcert
