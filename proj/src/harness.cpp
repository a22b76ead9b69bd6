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

#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "error.hpp"
#include "estimators.hpp"
#include "report_json.hpp"

namespace mixcert {

std::uint64_t Mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t TrialSeed(std::uint64_t master_seed, std::uint64_t trial) {
  return Mix64(master_seed ^ Mix64(trial));
}

void ParallelFor(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::clamp(jobs, 1, std::max(count, 1));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      (void)w;
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

int ResolveJobs(int requested) {
  if (const char* env = std::getenv("MIXCERT_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(requested, 1);
}

long long TvMixingTime(const ChainSpec& chain, double threshold) {
  const int d = chain.d();
  if (d > 64) {
    throw Error(ErrorCode::kInvalidArgument, "TV oracle limited to d <= 64");
  }
  const Vector pi = ComputeStationary(chain).pi;
  const Matrix& p = chain.p();
  Matrix dist = Matrix::Identity(d, d);  // row i: law of X_t from state i
  constexpr long long kMaxSteps = 1000000;
  for (long long t = 0; t <= kMaxSteps; ++t) {
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
      double tv = 0.0;
      for (int j = 0; j < d; ++j) tv += std::max(0.0, dist(i, j) - pi[j]);
      worst = std::max(worst, tv);
    }
    if (worst <= threshold) return t;
    dist = dist * p;
  }
  throw Error(ErrorCode::kDiverged, "TV mixing time exceeds 10^6 steps");
}

double BinomialStdError(double p, int trials) {
  return trials > 0 ? std::sqrt(p * (1.0 - p) / trials) : 0.0;
}

namespace {

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double Median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void ValidateConfig(const ExperimentConfig& c) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kBadParams, what);
  };
  if (c.trials < 1) fail("trials must be >= 1");
  if (c.steps.empty()) fail("at least one step count is required");
  for (size_t i = 0; i < c.steps.size(); ++i) {
    if (c.steps[i] < 2) fail("step counts must be >= 2");
    if (i > 0 && c.steps[i] <= c.steps[i - 1]) {
      fail("step grid must be strictly increasing");
    }
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) fail("delta must lie in (0,1)");
  if (c.kind == ValidateKind::kWidth && c.steps.size() < 2) {
    fail("width validation needs at least two step counts");
  }
}

TrialOutcome RunTrial(const SamplePath& path, const ExperimentConfig& config,
                      const SpectralSummary& truth, const Vector& pi_true) {
  TrialOutcome out;
  out.n = path.size();
  if (config.kind == ValidateKind::kAccuracy) {
    const PluginEstimate plugin = EstimatePlugin(path);
    out.plugin_gamma = plugin.gamma_hat;
    out.plugin_pimin = plugin.pimin_hat;
    out.plugin_abs_error = std::abs(plugin.gamma_hat - truth.gap);
    const BootstrapEstimate boot = EstimateBootstrap(path);
    out.bootstrap_gamma = boot.gamma_tilde;
    out.bootstrap_a = boot.a_selected;
    out.bootstrap_rel_error = std::abs(boot.gamma_tilde / truth.gap - 1.0);
    return out;
  }
  const IntervalResult res = RunEmpiricalIntervals(path, config.delta);
  const IntervalReport& r = res.report;
  out.gamma_hat = res.certificate.gamma_hat;
  out.w_hat = res.certificate.gap_deviation;
  out.b_hat = res.certificate.pi_deviation;
  out.gap_covered = r.gap_interval.contains(truth.gap);
  out.pi_covered = true;
  for (Eigen::Index i = 0; i < pi_true.size(); ++i) {
    out.pi_covered = out.pi_covered &&
                     r.pi_intervals[static_cast<size_t>(i)].contains(pi_true[i]);
  }
  out.pimin_covered = r.pimin_interval.contains(truth.pi_min);
  out.tmix_covered = r.tmix_interval.lo <= truth.tmix_lower &&
                     truth.tmix_upper <= r.tmix_interval.hi;
  return out;
}

}  // namespace

CoverageReport RunValidation(const ChainSpec& chain,
                             const ExperimentConfig& config) {
  ValidateConfig(config);
  const auto start = std::chrono::steady_clock::now();

  CoverageReport report;
  report.config = config;
  report.truth = ExactSpectralSummary(chain);
  report.pi_true = ComputeStationary(chain).pi;
  const InitialCondition init = ParseInitialCondition(config.init);

  const size_t levels = config.steps.size();
  const auto trials = static_cast<size_t>(config.trials);
  std::vector<std::vector<TrialOutcome>> grid(
      levels, std::vector<TrialOutcome>(trials));
  const long long n_max = config.steps.back();

  ParallelFor(config.trials, config.jobs, [&](int trial) {
    const std::uint64_t seed =
        TrialSeed(config.master_seed, static_cast<std::uint64_t>(trial));
    const SamplePath full = SimulatePath(chain, n_max, init, seed);
    for (size_t l = 0; l < levels; ++l) {
      TrialOutcome o = RunTrial(full.Prefix(config.steps[l]), config,
                                report.truth, report.pi_true);
      o.seed = seed;
      grid[l][static_cast<size_t>(trial)] = o;
    }
  });

  for (size_t l = 0; l < levels; ++l) {
    LevelSummary s;
    s.n = config.steps[l];
    s.trials = config.trials;
    s.outcomes = std::move(grid[l]);
    std::vector<double> w, b, err, rel;
    int gap = 0, pi = 0, pimin = 0, joint = 0, tmix = 0, rel_ok = 0;
    for (const auto& o : s.outcomes) {
      gap += o.gap_covered;
      pi += o.pi_covered;
      pimin += o.pimin_covered;
      joint += o.gap_covered && o.pi_covered;
      tmix += o.tmix_covered;
      w.push_back(o.w_hat);
      b.push_back(o.b_hat);
      err.push_back(o.plugin_abs_error);
      rel.push_back(o.bootstrap_rel_error);
      rel_ok += o.bootstrap_rel_error <= 0.5;
    }
    const double t = config.trials;
    s.coverage_gap = gap / t;
    s.coverage_pi = pi / t;
    s.coverage_pimin = pimin / t;
    s.coverage_joint = joint / t;
    s.coverage_tmix = tmix / t;
    s.mean_w_hat = Mean(w);
    s.median_w_hat = Median(w);
    s.mean_b_hat = Mean(b);
    s.median_b_hat = Median(b);
    s.mean_plugin_abs_error = Mean(err);
    s.median_plugin_abs_error = Median(err);
    s.median_bootstrap_rel_error = Median(rel);
    s.fraction_bootstrap_rel_error_le_half = rel_ok / t;
    report.levels.push_back(std::move(s));
  }
  if (levels >= 2) {
    report.width_ratio =
        report.levels.back().mean_w_hat / report.levels.front().mean_w_hat;
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

namespace {

const char* KindName(ValidateKind k) {
  switch (k) {
    case ValidateKind::kCoverage: return "coverage";
    case ValidateKind::kWidth: return "width";
    case ValidateKind::kAccuracy: return "accuracy";
  }
  return "unknown";
}

Json Coverage(double p, int trials) {
  Json j;
  j["coverage"] = p;
  j["std_error"] = BinomialStdError(p, trials);
  return j;
}

}  // namespace

Json ToJson(const CoverageReport& r) {
  const ExperimentConfig& c = r.config;
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = std::string("validate_") + KindName(c.kind);
  Json cfg;
  cfg["trials"] = c.trials;
  cfg["steps"] = c.steps;
  cfg["delta"] = c.delta;
  cfg["master_seed"] = c.master_seed;
  cfg["seed_rule"] = kTrialSeedRule;
  cfg["init"] = c.init;
  j["config"] = std::move(cfg);
  Json truth = ToJson(r.truth);
  Json pi = Json::array();
  for (Eigen::Index i = 0; i < r.pi_true.size(); ++i) pi.push_back(r.pi_true[i]);
  truth["pi"] = std::move(pi);
  j["truth"] = std::move(truth);

  Json levels = Json::array();
  for (const auto& s : r.levels) {
    Json lj;
    lj["n"] = s.n;
    lj["trials"] = s.trials;
    Json trials = Json::array();
    if (c.kind == ValidateKind::kAccuracy) {
      lj["mean_plugin_abs_error"] = s.mean_plugin_abs_error;
      lj["median_plugin_abs_error"] = s.median_plugin_abs_error;
      lj["median_bootstrap_rel_error"] = s.median_bootstrap_rel_error;
      lj["fraction_bootstrap_rel_error_le_half"] =
          s.fraction_bootstrap_rel_error_le_half;
      for (const auto& o : s.outcomes) {
        Json t;
        t["seed"] = o.seed;
        t["gamma_hat"] = o.plugin_gamma;
        t["pimin_hat"] = o.plugin_pimin;
        t["abs_error"] = o.plugin_abs_error;
        t["gamma_tilde"] = o.bootstrap_gamma;
        t["A"] = o.bootstrap_a;
        t["rel_error"] = o.bootstrap_rel_error;
        trials.push_back(std::move(t));
      }
    } else {
      lj["gap"] = Coverage(s.coverage_gap, s.trials);
      lj["pi_all"] = Coverage(s.coverage_pi, s.trials);
      lj["pimin"] = Coverage(s.coverage_pimin, s.trials);
      lj["joint"] = Coverage(s.coverage_joint, s.trials);
      lj["tmix"] = Coverage(s.coverage_tmix, s.trials);
      lj["mean_w_hat"] = s.mean_w_hat;
      lj["median_w_hat"] = s.median_w_hat;
      lj["mean_b_hat"] = s.mean_b_hat;
      lj["median_b_hat"] = s.median_b_hat;
      for (const auto& o : s.outcomes) {
        Json t;
        t["seed"] = o.seed;
        t["gamma_hat"] = o.gamma_hat;
        t["w_hat"] = o.w_hat;
        t["b_hat"] = o.b_hat;
        t["gap_covered"] = o.gap_covered;
        t["pi_covered"] = o.pi_covered;
        trials.push_back(std::move(t));
      }
    }
    lj["per_trial"] = std::move(trials);
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  if (c.kind == ValidateKind::kWidth) j["width_ratio"] = r.width_ratio;
  return j;
}

}  // namespace mixcert
