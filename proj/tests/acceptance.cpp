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

// Acceptance suite. Each criterion prints one line:
//   PASS|FAIL  <id>  <name>  (<seconds> s, budget <seconds> s)  <detail>
// The process exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "empirical_ci.hpp"
#include "error.hpp"
#include "estimators.hpp"
#include "harness.hpp"
#include "markov_core.hpp"
#include "numerics.hpp"
#include "path_stats.hpp"
#include "test_util.hpp"

namespace mixcert {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

int Jobs() {
  return ResolveJobs(static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
}

double SpectralNorm(const Matrix& m) {
  return Eigen::JacobiSVD<Matrix>(m).singularValues()[0];
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// 1. Exact spectra of the two-state and perturbed-uniform families.
Outcome ExactSpectrum() {
  double worst = 0.0;
  for (double pb : {0.01, 0.05, 0.1, 0.2, 0.24}) {
    FamilyParams fp;
    fp.pibar = pb;
    worst = std::max(worst, std::abs(ExactSpectralSummary(ChainFamily("two-state-A", fp)).gap - 1.0));
    worst = std::max(worst, std::abs(ExactSpectralSummary(ChainFamily("two-state-B", fp)).gap -
                                     (0.5 + pb)));
  }
  for (int d : {3, 4, 5, 8, 16, 30}) {
    for (double g : {0.01, 0.1, 0.25, 0.49}) {
      const double eps = (d - 1) / (d / 2.0) * g;
      const double eps_prime = (d / 2.0 - 1.0) / (d - 1) * eps;
      FamilyParams fp;
      fp.d = d;
      fp.gammabar = g;
      const auto s0 = ExactSpectralSummary(ChainFamily("perturbed-uniform-0", fp));
      const double l0 = 1.0 - static_cast<double>(d) / (d - 1) * eps;
      worst = std::max({worst, std::abs(s0.eigenvalues[1] - l0),
                        std::abs(s0.eigenvalues.back() - l0)});
      for (int i = 0; i < d; ++i) {
        fp.index = i;
        const auto si = ExactSpectralSummary(ChainFamily("perturbed-uniform-i", fp));
        const double l2 = 1.0 - eps_prime - eps / (d - 1);
        worst = std::max({worst, std::abs(si.eigenvalues[1] - l2),
                          std::abs(si.eigenvalues.back() - l0)});
      }
    }
  }
  return {worst <= 1e-12, Fmt("max abs error %.3g", worst)};
}

// 2. Group-inverse axioms on smoothed estimates built from random counts.
Outcome GroupInverseAxioms() {
  std::mt19937_64 gen(20260101);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 19;
    std::uniform_int_distribution<int> scale_pick(0, 3);
    const int scale = std::array<int, 4>{1, 5, 50, 1000}[static_cast<size_t>(scale_pick(gen))];
    std::uniform_int_distribution<int> count(0, scale);
    std::bernoulli_distribution zero(0.3);
    PathStatistics s;
    s.d = d;
    s.n_pair = CountMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) s.n_pair(i, j) = zero(gen) ? 0 : count(gen);
    }
    s.n_first = s.n_pair.rowwise().sum();
    const Matrix p = SmoothedTransitions(s).p_hat;
    const Vector pi = ComputeStationary(p).pi;
    const GroupInverse g = ComputeGroupInverse(p, pi);
    worst = std::max({worst, g.residual_aaa, g.residual_sas, g.residual_commute});
  }
  double two_state = 0.0;
  for (double p : {0.01, 0.3, 0.9}) {
    for (double q : {0.02, 0.5, 0.99}) {
      Matrix m(2, 2);
      m << 1 - p, p, q, 1 - q;
      Vector pi(2);
      pi << q / (p + q), p / (p + q);
      Matrix expect(2, 2);
      expect << p, -p, -q, q;
      expect /= (p + q) * (p + q);
      two_state = std::max(two_state, MaxAbs(ComputeGroupInverse(m, pi).a_sharp - expect));
    }
  }
  return {worst <= 1e-8 && two_state <= 1e-10,
          Fmt("max axiom residual %.3g, two-state error %.3g", worst, two_state)};
}

// 3. Weyl containment for the plug-in estimate.
Outcome WeylContainment() {
  int checked = 0;
  int violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto seed = TrialSeed(3, static_cast<std::uint64_t>(trial));
    const int d = 2 + trial % 9;
    const ChainSpec chain = testing::RandomReversibleChain(d, seed, 0.01);
    const Vector pi = ComputeStationary(chain).pi;
    const Matrix l = SymmetrizedTransitionOperator(chain, pi);
    const double gap = ExactSpectralSummary(chain).gap;
    const PathStatistics s = CollectStatistics(SimulatePath(chain, 10000, InitStationary{}, seed));
    const PluginEstimate e = EstimatePlugin(s);
    if (e.degenerate) continue;
    ++checked;
    const Matrix lhat = EmpiricalTransitionOperator(s);
    const double sym = SpectralNorm(0.5 * (lhat + lhat.transpose()) - l);
    const double raw = SpectralNorm(lhat - l);
    const double tol = 1e-12;
    if (!(std::abs(e.gamma_hat - gap) <= sym + tol && sym <= raw + tol)) ++violations;
  }
  return {checked > 0 && violations == 0,
          Fmt("%.0f non-degenerate trials, %.0f violations", checked, violations)};
}

ChainSpec TwoStateB(double pibar) {
  FamilyParams fp;
  fp.pibar = pibar;
  return ChainFamily("two-state-B", fp);
}

// 4 and 5 share one paired run over n = 1e5 and 4e5.
const CoverageReport& CoverageRun() {
  static const CoverageReport report = [] {
    ExperimentConfig c;
    c.kind = ValidateKind::kWidth;
    c.steps = {100000, 400000};
    c.trials = 200;
    c.delta = 0.1;
    c.master_seed = 4;
    c.jobs = Jobs();
    return RunValidation(TwoStateB(0.2), c);
  }();
  return report;
}

Outcome Coverage() {
  const LevelSummary& lv = CoverageRun().levels.front();
  return {lv.coverage_joint >= 0.836,
          Fmt("joint coverage %.3f (gap %.3f, pi %.3f) over 200 trials", lv.coverage_joint,
              lv.coverage_gap, lv.coverage_pi)};
}

Outcome WidthDecay() {
  const CoverageReport& r = CoverageRun();
  return {r.width_ratio <= 0.7,
          Fmt("mean w_hat %.4g -> %.4g, ratio %.4f", r.levels[0].mean_w_hat,
              r.levels[1].mean_w_hat, r.width_ratio)};
}

// 6. Plug-in accuracy on the two-state chain with gap 0.6.
Outcome PluginConsistency() {
  ExperimentConfig c;
  c.kind = ValidateKind::kAccuracy;
  c.steps = {10000, 100000, 1000000};
  c.trials = 20;
  c.master_seed = 6;
  c.jobs = Jobs();
  const CoverageReport r = RunValidation(TwoStateB(0.1), c);
  const double m0 = r.levels[0].median_plugin_abs_error;
  const double m1 = r.levels[1].median_plugin_abs_error;
  const double m2 = r.levels[2].median_plugin_abs_error;
  return {m2 <= 0.05 && m1 <= m0 && m2 <= m1,
          Fmt("median |gamma_hat - 0.6|: %.4g, %.4g, %.4g", m0, m1, m2)};
}

// 7. Bootstrap skip selection and accuracy.
Outcome BootstrapBehavior() {
  FamilyParams fp;
  fp.d = 4;
  fp.beta = 0.02;
  ExperimentConfig c;
  c.kind = ValidateKind::kAccuracy;
  c.steps = {1000000};
  c.trials = 50;
  c.master_seed = 7;
  c.jobs = Jobs();
  const CoverageReport slow = RunValidation(ChainFamily("lazy-uniform", fp), c);
  int big_a = 0;
  for (const auto& o : slow.levels[0].outcomes) big_a += o.bootstrap_a >= 8;
  const double frac_a = big_a / 50.0;
  const double frac_rel = slow.levels[0].fraction_bootstrap_rel_error_le_half;

  FamilyParams fa;
  fa.pibar = 0.2;
  c.steps = {100000};
  const CoverageReport fast = RunValidation(ChainFamily("two-state-A", fa), c);
  int a_one = 0;
  for (const auto& o : fast.levels[0].outcomes) a_one += o.bootstrap_a == 1;
  const double frac_one = a_one / 50.0;
  return {frac_a >= 0.8 && frac_rel >= 0.8 && frac_one >= 0.95,
          Fmt("A>=8 in %.2f, rel err<=0.5 in %.2f, A=1 on fast chain in %.2f", frac_a,
              frac_rel, frac_one)};
}

// 8. TV-oracle mixing times against the relaxation-time sandwich.
Outcome MixingSandwich() {
  std::vector<ChainSpec> chains;
  for (double pb : {0.01, 0.05, 0.1, 0.2, 0.24}) {
    FamilyParams fp;
    fp.pibar = pb;
    chains.push_back(ChainFamily("two-state-A", fp));
    chains.push_back(ChainFamily("two-state-B", fp));
  }
  for (int d : {3, 4, 8, 16}) {
    for (double g : {0.01, 0.1, 0.3, 0.49}) {
      FamilyParams fp;
      fp.d = d;
      fp.gammabar = g;
      chains.push_back(ChainFamily("perturbed-uniform-0", fp));
      for (int i : {0, d - 1}) {
        fp.index = i;
        chains.push_back(ChainFamily("perturbed-uniform-i", fp));
      }
    }
  }
  for (int d : {2, 4, 8, 16}) {
    for (double beta : {0.01, 0.1, 0.5, 1.0}) {
      FamilyParams fp;
      fp.d = d;
      fp.beta = beta;
      chains.push_back(ChainFamily("lazy-uniform", fp));
    }
  }
  int bad = 0;
  for (const ChainSpec& chain : chains) {
    const SpectralSummary s = ExactSpectralSummary(chain);
    const auto t = static_cast<double>(TvMixingTime(chain));
    if (!(s.tmix_lower <= t && t <= s.tmix_upper)) ++bad;
  }
  return {bad == 0, Fmt("%.0f instances, %.0f outside the sandwich",
                        static_cast<double>(chains.size()), bad)};
}

// 9. Tail threshold against an independent grid scan.
double GridTailThreshold(long long n, int d, double delta, double c) {
  auto lhs = [&](double t) {
    const double k = std::max(0.0, std::ceil(std::log(2.0 * n / t) / std::log(c)));
    return 2.0 * d * d * (1.0 + k) * std::exp(-t);
  };
  double t = 0.0;
  while (!(lhs(t + 1e-3) <= delta)) t += 1e-3;
  while (!(lhs(t) <= delta)) t += 1e-6;
  return t;
}

Outcome TailThresholdGrid() {
  double worst = 0.0;
  for (long long n : {100LL, 10000LL, 1000000LL}) {
    for (int d : {2, 10, 100}) {
      for (double delta : {0.01, 0.05, 0.2}) {
        worst = std::max(worst, std::abs(TailThreshold(n, d, delta, kTailConstant) -
                                         GridTailThreshold(n, d, delta, kTailConstant)));
      }
    }
  }
  return {worst <= 1e-5, Fmt("max |bisection - grid| %.3g over 27 points", worst)};
}

// 10. Stopping rule on the two-state chain with gap 1.
Outcome StoppingRule() {
  FamilyParams fp;
  fp.pibar = 0.2;
  const ChainSpec chain = ChainFamily("two-state-A", fp);
  const SpectralSummary truth = ExactSpectralSummary(chain);
  std::vector<StopTrace> traces(20);
  ParallelFor(20, Jobs(), [&](int i) {
    SimulatedPathSource source(chain, InitStationary{},
                               TrialSeed(10, static_cast<std::uint64_t>(i)));
    traces[static_cast<size_t>(i)] =
        RunStoppingRule(source, 0.5, 0.2, kDefaultCombinedConstant, 1LL << 24);
  });
  int stopped = 0;
  int covered = 0;
  long long max_n = 0;
  for (const StopTrace& t : traces) {
    if (!t.stopped) continue;
    ++stopped;
    const StopStep& last = t.steps.back();
    max_n = std::max(max_n, last.n);
    covered += last.gap_interval.contains(truth.gap) &&
               last.pimin_interval.contains(truth.pi_min);
  }
  return {stopped == 20 && covered >= 16,
          Fmt("%.0f/20 stopped (max n %.0f), %.0f covered", stopped,
              static_cast<double>(max_n), covered)};
}

// 11. Byte-identical CLI output across repeated runs and worker counts.
Outcome CliDeterminism() {
  const std::string cli = std::string("env -u MIXCERT_JOBS ") + MIXCERT_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("mixcert_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string a = (dir / "a.json").string();
  const std::string b = (dir / "b.json").string();
  const std::string path = (dir / "b.path").string();
  auto run = [](const std::string& cmd) {
    const auto r = testing::RunCommand(cmd);
    return std::to_string(r.exit_code) + "\n" + r.out;
  };
  auto read = [](const std::string& file) {
    try {
      return ReadFileToString(file);
    } catch (const Error&) {
      return std::string("<missing>");
    }
  };

  std::vector<std::string> mismatches;
  auto twice = [&](const std::string& name, const std::string& cmd,
                   const std::string& out_file = "") {
    // Run before reading the output file; operands of + are unsequenced.
    auto once = [&] {
      std::string r = run(cmd);
      if (!out_file.empty()) r += read(out_file);
      return r;
    };
    const std::string first = once();
    const std::string second = once();
    if (first != second || first.rfind("0\n", 0) != 0) mismatches.push_back(name);
  };
  twice("chains make A", cli + " chains make --family two-state-A --pibar 0.2 --out " + a, a);
  twice("chains make B", cli + " chains make --family two-state-B --pibar 0.2 --out " + b, b);
  twice("chains spectrum", cli + " chains spectrum --chain " + b);
  twice("chains tvmix", cli + " chains tvmix --chain " + b);
  twice("simulate", cli + " simulate --chain " + b + " --steps 50000 --seed 3 --out " + path,
        path);
  twice("estimate plugin", cli + " estimate --path " + path);
  twice("estimate bootstrap", cli + " estimate --path " + path + " --method bootstrap");
  twice("ci", cli + " ci --path " + path + " --delta 0.1");
  twice("ci combined", cli + " ci --path " + path + " --delta 0.1 --combined");
  twice("stoprule", cli + " stoprule --chain " + a + " --epsilon 0.5 --delta 0.2 --seed 9");
  for (const char* kind : {"coverage", "width", "accuracy"}) {
    const std::string base = cli + " validate " + kind + " --chain " + b +
                             " --trials 16 --steps 1e4,4e4 --delta 0.1 --seed 12 --jobs ";
    twice(std::string("validate ") + kind, base + "1");
    if (run(base + "1") != run(base + "4")) {
      mismatches.push_back(std::string("validate ") + kind + " jobs 1 vs 4");
    }
  }
  std::filesystem::remove_all(dir);
  std::string detail = "14 commands compared";
  for (const auto& m : mismatches) detail += "; differs: " + m;
  return {mismatches.empty(), detail};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace mixcert

int main() {
  using namespace mixcert;
  const std::vector<Criterion> criteria = {
      {1, "exact-spectrum oracle", 1, ExactSpectrum},
      {2, "group-inverse axioms", 30, GroupInverseAxioms},
      {3, "weyl containment", 120, WeylContainment},
      {4, "interval coverage", 600, Coverage},
      {5, "width decay", 900, WidthDecay},
      {6, "plug-in consistency", 600, PluginConsistency},
      {7, "bootstrap behavior", 900, BootstrapBehavior},
      {8, "mixing-time sandwich", 60, MixingSandwich},
      {9, "tail threshold vs grid", 5, TailThresholdGrid},
      {10, "stopping rule soundness", 1200, StoppingRule},
      {11, "cli determinism", 120, CliDeterminism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.pass && secs <= c.budget_seconds;
    if (!pass) ++failures;
    std::printf("%s  %2d  %-26s (%.2f s, budget %.0f s)  %s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, secs, c.budget_seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
