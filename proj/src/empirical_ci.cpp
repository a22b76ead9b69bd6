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

#include "empirical_ci.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace mixcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double PositivePart(double x) { return x > 0.0 ? x : 0.0; }

double SafeRatio(double num, double den) { return den > 0.0 ? num / den : kInf; }

Interval ClipUnit(double lo, double hi) {
  lo = std::clamp(std::isnan(lo) ? 0.0 : lo, 0.0, 1.0);
  hi = std::clamp(std::isnan(hi) ? 1.0 : hi, 0.0, 1.0);
  return {lo, std::max(lo, hi)};
}

std::optional<Interval> Intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

}  // namespace

double EntrywiseBound(double p_hat_ij, long long n_i, int d, double t_hat,
                      double c) {
  if (n_i < 0 || d < 1 || !(p_hat_ij > 0.0 && p_hat_ij < 1.0) ||
      !(t_hat > 0.0) || !(c > 1.0)) {
    throw Error(ErrorCode::kDomainError, "EntrywiseBound: argument out of range");
  }
  if (n_i == 0) return 1.0;
  const double n = static_cast<double>(n_i);
  const double half_slope = c * t_hat / (2.0 * n);
  const double variance_term =
      std::sqrt(2.0 * c * p_hat_ij * (1.0 - p_hat_ij) * t_hat / n);
  const double bias_term =
      ((4.0 / 3.0) * t_hat + std::abs(p_hat_ij - 1.0 / d)) / n;
  const double root = std::sqrt(half_slope) +
                      std::sqrt(half_slope + variance_term + bias_term);
  return root * root;
}

double SensitivityKappa(const Matrix& a_sharp) {
  double worst = -kInf;
  for (Eigen::Index j = 0; j < a_sharp.cols(); ++j) {
    worst = std::max(worst, a_sharp(j, j) - a_sharp.col(j).minCoeff());
  }
  return 0.5 * worst;
}

Interval MixingTimeInterval(double gap_lo, double gap_hi, double pimin_lo) {
  Interval out;
  out.lo = gap_hi > 0.0 ? (1.0 / gap_hi - 1.0) * std::log(2.0) : kInf;
  out.hi = (gap_lo > 0.0 && pimin_lo > 0.0)
               ? std::log(4.0 / pimin_lo) / gap_lo
               : kInf;
  out.lo = std::max(out.lo, 0.0);
  return out;
}

IntervalResult RunEmpiricalIntervals(const SamplePath& path, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kDomainError, "delta must lie in (0,1)");
  }
  const PathStatistics stats = CollectStatistics(path);
  const int d = stats.d;

  IntervalResult result;
  EmpiricalCertificate& cert = result.certificate;
  cert.delta = delta;
  cert.c = kTailConstant;

  // Smoothed estimate, its stationary law and group inverse.
  cert.p_hat = SmoothedTransitions(stats).p_hat;
  cert.pi_hat = ComputeStationary(cert.p_hat).pi;
  cert.group_inverse = ComputeGroupInverse(cert.p_hat, cert.pi_hat);
  cert.pi_cross_check =
      (cert.pi_hat.transpose() * cert.group_inverse.a_sharp).cwiseAbs().maxCoeff();

  // Spectrum of the symmetrized estimate.
  const Vector root = cert.pi_hat.array().sqrt();
  const Matrix l_hat =
      root.asDiagonal() * cert.p_hat * root.cwiseInverse().asDiagonal();
  cert.eigenvalues = SymEigenvalues(0.5 * (l_hat + l_hat.transpose()));
  cert.gamma_hat =
      1.0 - std::max(cert.eigenvalues[1], std::abs(cert.eigenvalues.back()));

  // Entrywise transition bounds.
  cert.t_hat = TailThreshold(stats.n, d, delta, cert.c);
  cert.entry_bounds.resize(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cert.entry_bounds(i, j) = EntrywiseBound(
          cert.p_hat(i, j), stats.n_first[i], d, cert.t_hat, cert.c);
    }
  }

  // Perturbation bounds for pi and the gap.
  cert.kappa_hat = SensitivityKappa(cert.group_inverse.a_sharp);
  cert.pi_deviation = cert.kappa_hat * cert.entry_bounds.maxCoeff();
  double ratio = 0.0;
  for (int i = 0; i < d; ++i) {
    const double pi_i = cert.pi_hat[i];
    ratio = std::max({ratio, SafeRatio(cert.pi_deviation, pi_i),
                      SafeRatio(cert.pi_deviation,
                                PositivePart(pi_i - cert.pi_deviation))});
  }
  cert.ratio_bound = 0.5 * ratio;

  double weighted = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double b = cert.entry_bounds(i, j);
      weighted += cert.pi_hat[i] / cert.pi_hat[j] * b * b;
    }
  }
  const double rho = cert.ratio_bound;
  cert.gap_deviation = std::isinf(rho)
                           ? kInf
                           : 2.0 * rho + rho * rho +
                                 (1.0 + 2.0 * rho + rho * rho) * std::sqrt(weighted);

  IntervalReport& report = result.report;
  report.delta = delta;
  report.pi_intervals.reserve(static_cast<size_t>(d));
  double pimin_lo = kInf;
  double pimin_hi = kInf;
  for (int i = 0; i < d; ++i) {
    const double pi_i = cert.pi_hat[i];
    report.pi_intervals.push_back(
        ClipUnit(pi_i - cert.pi_deviation, pi_i + cert.pi_deviation));
    pimin_lo = std::min(pimin_lo, PositivePart(pi_i - cert.pi_deviation));
    pimin_hi = std::min(pimin_hi, pi_i + cert.pi_deviation);
  }
  report.pimin_interval = ClipUnit(pimin_lo, pimin_hi);
  report.gap_interval = ClipUnit(cert.gamma_hat - cert.gap_deviation,
                                 cert.gamma_hat + cert.gap_deviation);
  report.pimin_lb = report.pimin_interval.lo;
  report.gap_lb = report.gap_interval.lo;
  report.tmix_interval = MixingTimeInterval(
      report.gap_interval.lo, report.gap_interval.hi, report.pimin_lb);
  return result;
}

IntervalResult RunCombinedIntervals(const SamplePath& path, double delta,
                                    double c, std::optional<double> c_prime) {
  if (!(c > 0.0) || (c_prime && !(*c_prime > 0.0))) {
    throw Error(ErrorCode::kDomainError, "combined constants must be positive");
  }
  IntervalResult result = RunEmpiricalIntervals(path, delta);
  const IntervalReport& base = result.report;

  CombinedIntervals comb;
  comb.c = c;
  comb.c_prime = c_prime.value_or(3.0 * c);
  comb.level = 1.0 - 2.0 * delta;
  comb.pimin_interval = base.pimin_interval;
  comb.gap_interval = base.gap_interval;

  const double pl = base.pimin_lb;
  const double gl = base.gap_lb;
  const PluginEstimate plugin = EstimatePlugin(path);
  comb.gamma_plugin = plugin.gamma_hat;
  comb.pimin_plugin = plugin.pimin_hat;

  if (pl > 0.0 && gl > 0.0 && !plugin.degenerate) {
    comb.applied = true;
    const double n = static_cast<double>(path.size());
    const double d = static_cast<double>(path.d());

    const double log_d = std::log(d / delta);
    const double log_n = std::log(n / (pl * delta));
    const double q = log_d * log_n / (pl * gl * n);
    comb.gap_deviation =
        c * (std::sqrt(q) + q + std::log(1.0 / gl) / (gl * n));

    const double log_p = std::log(d / (pl * delta));
    comb.pimin_deviation =
        comb.c_prime * (std::sqrt(plugin.pimin_hat * log_p / (gl * n)) +
                        log_p / (gl * n));

    const auto v = Intersect(
        ClipUnit(plugin.gamma_hat - comb.gap_deviation,
                 plugin.gamma_hat + comb.gap_deviation),
        base.gap_interval);
    const auto u = Intersect(
        ClipUnit(plugin.pimin_hat - comb.pimin_deviation,
                 plugin.pimin_hat + comb.pimin_deviation),
        base.pimin_interval);
    comb.disjoint = !u || !v;
    if (v) comb.gap_interval = *v;
    if (u) comb.pimin_interval = *u;
  }
  comb.tmix_interval =
      MixingTimeInterval(comb.gap_interval.lo, comb.gap_interval.hi,
                         comb.pimin_interval.lo);
  result.report.combined = comb;
  return result;
}

std::optional<SamplePath> FixedPathSource::Prefix(long long n) {
  if (n > path_.size()) return std::nullopt;
  return path_.Prefix(n);
}

SimulatedPathSource::SimulatedPathSource(const ChainSpec& chain,
                                         const InitialCondition& init,
                                         std::uint64_t seed)
    : sim_(chain, init, seed) {}

std::optional<SamplePath> SimulatedPathSource::Prefix(long long n) {
  while (static_cast<long long>(states_.size()) < n) {
    states_.push_back(sim_.Next());
  }
  return SamplePath(sim_.d(), std::vector<int>(states_.begin(),
                                               states_.begin() + n));
}

StopTrace RunStoppingRule(PathSource& source, double epsilon, double delta,
                          double c, long long max_steps) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::kDomainError, "stopping rule: epsilon or delta out of range");
  }
  StopTrace trace;
  trace.epsilon = epsilon;
  trace.delta = delta;
  trace.c = c;
  trace.max_steps = max_steps;

  for (int k = 1; k < 62 && (1LL << k) <= max_steps; ++k) {
    const long long n = 1LL << k;
    std::optional<SamplePath> prefix = source.Prefix(n);
    if (!prefix) {
      trace.source_exhausted = true;
      break;
    }
    const double delta_k = delta / (static_cast<double>(k) * (k + 1));
    IntervalResult res = RunCombinedIntervals(*prefix, delta_k, c);
    const CombinedIntervals& comb = *res.report.combined;

    StopStep step;
    step.k = k;
    step.n = n;
    step.delta_k = delta_k;
    step.combined_applied = comb.applied;
    step.pimin_interval = comb.pimin_interval;
    step.gap_interval = comb.gap_interval;
    step.pimin_ratio = SafeRatio(comb.pimin_interval.width(), comb.pimin_interval.lo);
    step.gap_ratio = SafeRatio(comb.gap_interval.width(), comb.gap_interval.lo);
    step.stop = step.pimin_ratio < epsilon && step.gap_ratio < epsilon;
    trace.steps.push_back(step);
    if (step.stop) {
      trace.stopped = true;
      trace.final_result = std::move(res);
      break;
    }
  }
  return trace;
}

}  // namespace mixcert
