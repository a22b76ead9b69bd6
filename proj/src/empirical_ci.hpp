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

// Fully observable confidence intervals for the stationary probabilities,
// the spectral gap and the mixing time of a reversible chain, computed from
// one sample path.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "estimators.hpp"
#include "numerics.hpp"

namespace mixcert {

inline constexpr double kTailConstant = 1.1;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct EmpiricalCertificate {
  double delta = 0.0;
  double c = kTailConstant;
  Matrix p_hat;               // smoothed transitions
  GroupInverse group_inverse; // of I - p_hat
  Vector pi_hat;              // stationary distribution of p_hat
  double pi_cross_check = 0.0;  // max |pi_hat A#|, zero in exact arithmetic
  std::vector<double> eigenvalues;  // of Sym(L_hat), descending
  double gamma_hat = 0.0;
  double t_hat = 0.0;
  Matrix entry_bounds;        // |P_hat_ij - P_ij| <= entry_bounds(i, j)
  double kappa_hat = 0.0;
  double pi_deviation = 0.0;  // max_i |pi_hat_i - pi_i|
  double ratio_bound = 0.0;   // may be +inf
  double gap_deviation = 0.0; // may be +inf
};

struct CombinedIntervals {
  bool applied = false;   // false: lower bounds were zero, intervals unchanged
  bool disjoint = false;  // plug-in interval missed the empirical interval
  double c = 1.0;
  double c_prime = 3.0;
  double level = 0.0;     // 1 - 2 delta
  double gamma_plugin = 0.0;
  double pimin_plugin = 0.0;
  double pimin_deviation = 0.0;  // b'
  double gap_deviation = 0.0;    // w'
  Interval pimin_interval;       // U
  Interval gap_interval;         // V
  Interval tmix_interval;
};

struct IntervalReport {
  double delta = 0.0;
  std::vector<Interval> pi_intervals;
  Interval pimin_interval;
  Interval gap_interval;
  double pimin_lb = 0.0;
  double gap_lb = 0.0;
  Interval tmix_interval;
  std::optional<CombinedIntervals> combined;
};

struct IntervalResult {
  EmpiricalCertificate certificate;
  IntervalReport report;
};

// Half-width of the confidence band for one transition probability, given
// its smoothed estimate, the visit count of the origin state and the tail
// threshold. Returns 1 for unvisited origins. Throws DomainError.
double EntrywiseBound(double p_hat_ij, long long n_i, int d, double t_hat,
                      double c);

// (1/2) max_j (A#_jj - min_i A#_ij).
double SensitivityKappa(const Matrix& a_sharp);

// Mixing-time interval from interval endpoints, conservative corners:
// [(1/gap_hi - 1) ln 2, (1/gap_lo) ln(4/pimin_lo)], +inf where undefined.
Interval MixingTimeInterval(double gap_lo, double gap_hi, double pimin_lo);

// Throws PathTooShort, DomainError, or numeric errors.
IntervalResult RunEmpiricalIntervals(const SamplePath& path, double delta);

inline constexpr double kDefaultCombinedConstant = 1.0;

// The empirical intervals plus the intervals obtained by plugging their lower
// bounds into the a-priori deviation formulas (scaled by the supplied
// constant), then intersecting. c_prime defaults to 3 c.
IntervalResult RunCombinedIntervals(const SamplePath& path, double delta,
                                    double c,
                                    std::optional<double> c_prime = std::nullopt);

// Supplies prefixes of one path. Prefix(n) returns nullopt when fewer than
// n states exist.
class PathSource {
 public:
  virtual ~PathSource() = default;
  virtual std::optional<SamplePath> Prefix(long long n) = 0;
};

class FixedPathSource : public PathSource {
 public:
  explicit FixedPathSource(SamplePath path) : path_(std::move(path)) {}
  std::optional<SamplePath> Prefix(long long n) override;

 private:
  SamplePath path_;
};

// Simulates lazily; prefixes are identical to SimulatePath with the same
// seed. Never runs out.
class SimulatedPathSource : public PathSource {
 public:
  SimulatedPathSource(const ChainSpec& chain, const InitialCondition& init,
                      std::uint64_t seed);
  std::optional<SamplePath> Prefix(long long n) override;

 private:
  PathSimulator sim_;
  std::vector<int> states_;
};

struct StopStep {
  int k = 0;
  long long n = 0;
  double delta_k = 0.0;
  bool combined_applied = false;
  Interval pimin_interval;
  Interval gap_interval;
  double pimin_ratio = 0.0;  // width / lower end, +inf when lower end is 0
  double gap_ratio = 0.0;
  bool stop = false;
};

struct StopTrace {
  double epsilon = 0.0;
  double delta = 0.0;
  double c = 0.0;
  long long max_steps = 0;
  bool stopped = false;
  bool source_exhausted = false;
  std::vector<StopStep> steps;
  std::optional<IntervalResult> final_result;
};

// Evaluates the combined intervals at n = 2^k, k = 1, 2, ..., with
// confidence delta / (k (k + 1)), and stops once both the minimum
// stationary probability and the gap are known to relative width epsilon.
StopTrace RunStoppingRule(PathSource& source, double epsilon, double delta,
                          double c, long long max_steps);

}  // namespace mixcert
