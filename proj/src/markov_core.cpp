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

#include "markov_core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

#include "error.hpp"

namespace mixcert {

namespace {

void CheckDistribution(const Vector& v, double tol, ErrorCode code,
                       const char* what) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0) {
      throw Error(code, std::string(what) + ": negative or non-finite entry");
    }
    sum += v[i];
  }
  if (std::abs(sum - 1.0) > tol) {
    throw Error(code, std::string(what) + ": entries sum to " +
                          std::to_string(sum));
  }
}

std::vector<double> CumulativeSums(const double* first, int d) {
  std::vector<double> out(static_cast<size_t>(d));
  double acc = 0.0;
  for (int j = 0; j < d; ++j) {
    acc += first[j];
    out[static_cast<size_t>(j)] = acc;
  }
  return out;
}

}  // namespace

ChainSpec::ChainSpec(Matrix p, std::optional<Vector> pi_known)
    : p_(std::move(p)), pi_known_(std::move(pi_known)) {
  if (p_.rows() != p_.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "transition matrix is not square");
  }
  if (p_.rows() < 2) {
    throw Error(ErrorCode::kTooSmall, "chain needs at least 2 states");
  }
  for (Eigen::Index i = 0; i < p_.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < p_.cols(); ++j) {
      const double v = p_(i, j);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw Error(ErrorCode::kNonStochastic,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") outside [0,1]");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) {
      throw Error(ErrorCode::kNonStochastic,
                  "row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
  }
  if (pi_known_) {
    if (pi_known_->size() != p_.rows()) {
      throw Error(ErrorCode::kInvalidArgument, "pi has wrong length");
    }
    if ((pi_known_->array() <= 0.0).any()) {
      throw Error(ErrorCode::kNonStochastic, "pi must be strictly positive");
    }
    CheckDistribution(*pi_known_, kStochasticTolerance,
                      ErrorCode::kNonStochastic, "pi");
  }
}

ChainSpec ValidateChain(const Matrix& raw) { return ChainSpec(raw); }

StationaryDistribution ComputeStationary(const Matrix& p) {
  const Eigen::Index d = p.rows();
  Matrix system = (Matrix::Identity(d, d) - p).transpose();
  system.row(d - 1).setOnes();
  Vector rhs = Vector::Zero(d);
  rhs[d - 1] = 1.0;

  Vector pi;
  try {
    pi = SolveLinear(system, rhs);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNotErgodic,
                std::string("stationary distribution not unique: ") + e.what());
  }
  if (!(pi.array() > 0.0).all()) {
    throw Error(ErrorCode::kNotErgodic,
                "stationary distribution has non-positive entries");
  }
  pi /= pi.sum();
  return {pi, pi.minCoeff()};
}

StationaryDistribution ComputeStationary(const ChainSpec& chain) {
  return ComputeStationary(chain.p());
}

ChainFlags CheckErgodicReversible(const ChainSpec& chain) {
  ChainFlags flags;
  StationaryDistribution stat;
  try {
    stat = ComputeStationary(chain);
  } catch (const Error&) {
    flags.detailed_balance_residual = std::numeric_limits<double>::infinity();
    return flags;
  }

  const Matrix& p = chain.p();
  const Eigen::Index d = p.rows();
  double residual = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      residual = std::max(residual, std::abs(stat.pi[i] * p(i, j) -
                                             stat.pi[j] * p(j, i)));
    }
  }
  flags.detailed_balance_residual = residual;
  flags.reversible = residual <= 1e-10;

  // Every eigenvalue other than the (simple) unit eigenvalue must lie
  // strictly inside the unit circle.
  Eigen::EigenSolver<Matrix> solver(p, false);
  if (solver.info() != Eigen::Success) return flags;
  std::vector<double> moduli;
  moduli.reserve(static_cast<size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    moduli.push_back(std::abs(solver.eigenvalues()[k]));
  }
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  flags.ergodic = std::abs(moduli[0] - 1.0) <= 1e-8 &&
                  moduli[1] < 1.0 - 1e-12;
  return flags;
}

Matrix SymmetrizedTransitionOperator(const ChainSpec& chain, const Vector& pi) {
  const Vector root = pi.array().sqrt();
  const Vector inv_root = root.cwiseInverse();
  return root.asDiagonal() * chain.p() * inv_root.asDiagonal();
}

SpectralSummary ExactSpectralSummary(const ChainSpec& chain) {
  const StationaryDistribution stat = ComputeStationary(chain);
  Matrix l = SymmetrizedTransitionOperator(chain, stat.pi);
  const double asym = MaxAbs(l - l.transpose());
  if (asym > 1e-8) {
    throw Error(ErrorCode::kNotReversible,
                "L is asymmetric by " + std::to_string(asym));
  }
  l = 0.5 * (l + l.transpose());

  SpectralSummary out;
  out.eigenvalues = SymEigenvalues(l);
  out.lambda_star =
      std::max(out.eigenvalues[1], std::abs(out.eigenvalues.back()));
  out.gap = 1.0 - out.lambda_star;
  if (!(out.gap > 1e-12)) {
    throw Error(ErrorCode::kNotErgodic, "spectral gap is zero");
  }
  out.t_relax = 1.0 / out.gap;
  out.pi_min = stat.pi_min;
  const MixingTimeBounds bounds =
      ComputeMixingTimeBounds(std::min(out.gap, 1.0), stat.pi_min);
  out.tmix_lower = bounds.lower;
  out.tmix_upper = bounds.upper;
  return out;
}

MixingTimeBounds ComputeMixingTimeBounds(double gap, double pi_min) {
  if (!(gap > 0.0 && gap <= 1.0) || !(pi_min > 0.0 && pi_min <= 1.0)) {
    throw Error(ErrorCode::kDomainError,
                "mixing time bounds need gap, pi_min in (0,1]");
  }
  const double t_relax = 1.0 / gap;
  return {(t_relax - 1.0) * std::log(2.0), t_relax * std::log(4.0 / pi_min)};
}

SamplePath::SamplePath(int d, std::vector<int> states)
    : d_(d), states_(std::move(states)) {
  if (d_ < 1) throw Error(ErrorCode::kInvalidArgument, "state count must be >= 1");
  for (size_t t = 0; t < states_.size(); ++t) {
    if (states_[t] < 0 || states_[t] >= d_) {
      throw Error(ErrorCode::kInvalidArgument,
                  "state " + std::to_string(states_[t]) + " at position " +
                      std::to_string(t) + " out of range");
    }
  }
}

SamplePath SamplePath::Prefix(long long n) const {
  n = std::clamp<long long>(n, 0, size());
  return SamplePath(d_, std::vector<int>(states_.begin(), states_.begin() + n));
}

InitialCondition ParseInitialCondition(const std::string& text) {
  if (text == "stationary") return InitStationary{};
  if (text == "uniform") return InitUniform{};
  constexpr std::string_view kPrefix = "state:";
  if (text.rfind(kPrefix, 0) == 0) {
    int state = -1;
    const char* first = text.data() + kPrefix.size();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, state);
    if (ec == std::errc() && ptr == last && first != last) {
      return InitState{state};
    }
  }
  throw Error(ErrorCode::kBadInit, "unrecognized initial condition '" + text +
                                       "' (stationary|uniform|state:<i>)");
}

PathSimulator::PathSimulator(const ChainSpec& chain,
                             const InitialCondition& init, std::uint64_t seed)
    : d_(chain.d()), rng_(seed) {
  const Matrix& p = chain.p();
  cdf_.reserve(static_cast<size_t>(d_) * static_cast<size_t>(d_));
  for (int i = 0; i < d_; ++i) {
    Eigen::RowVectorXd row = p.row(i);
    const auto sums = CumulativeSums(row.data(), d_);
    cdf_.insert(cdf_.end(), sums.begin(), sums.end());
  }

  Vector dist;
  if (std::holds_alternative<InitState>(init)) {
    const int s = std::get<InitState>(init).state;
    if (s < 0 || s >= d_) {
      throw Error(ErrorCode::kBadInit, "initial state out of range");
    }
    init_state_ = s;
    return;
  } else if (std::holds_alternative<InitUniform>(init)) {
    dist = Vector::Constant(d_, 1.0 / d_);
  } else if (std::holds_alternative<InitStationary>(init)) {
    if (chain.pi_known()) {
      dist = *chain.pi_known();
    } else {
      try {
        dist = ComputeStationary(chain).pi;
      } catch (const Error& e) {
        throw Error(ErrorCode::kBadInit,
                    std::string("no stationary start: ") + e.what());
      }
    }
  } else {
    dist = std::get<Vector>(init);
    if (dist.size() != d_) {
      throw Error(ErrorCode::kBadInit, "initial distribution has wrong length");
    }
    CheckDistribution(dist, kStochasticTolerance, ErrorCode::kBadInit,
                      "initial distribution");
  }
  init_cdf_ = CumulativeSums(dist.data(), d_);
}

int PathSimulator::Draw(const double* cdf) {
  const double u = rng_.Uniform();
  int last_positive = 0;
  double prev = 0.0;
  for (int j = 0; j < d_; ++j) {
    if (u < cdf[j]) return j;
    if (cdf[j] > prev) last_positive = j;
    prev = cdf[j];
  }
  // Rounding left the final cumulative sum just below u.
  return last_positive;
}

int PathSimulator::Next() {
  if (current_ < 0) {
    current_ = init_state_ ? *init_state_ : Draw(init_cdf_.data());
  } else {
    current_ = Draw(cdf_.data() + static_cast<size_t>(current_) *
                                      static_cast<size_t>(d_));
  }
  return current_;
}

SamplePath SimulatePath(const ChainSpec& chain, long long n,
                        const InitialCondition& init, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kDomainError, "path length must be >= 2");
  PathSimulator sim(chain, init, seed);
  std::vector<int> states(static_cast<size_t>(n));
  for (auto& s : states) s = sim.Next();
  return SamplePath(chain.d(), std::move(states));
}

namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kBadParams, what);
}

// Chains with P_ii = 1 - eps_i and P_ij = eps_i / (d - 1); pi_i is
// proportional to 1 / eps_i.
ChainSpec StickyUniform(const std::vector<double>& eps) {
  const int d = static_cast<int>(eps.size());
  Matrix p(d, d);
  Vector pi(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      p(i, j) = i == j ? 1.0 - eps[i] : eps[i] / (d - 1);
    }
    pi[i] = 1.0 / eps[i];
  }
  pi /= pi.sum();
  return ChainSpec(std::move(p), std::move(pi));
}

}  // namespace

const std::vector<std::string>& ChainFamilyNames() {
  static const std::vector<std::string> names = {
      "two-state-A", "two-state-B", "perturbed-uniform-0",
      "perturbed-uniform-i", "lazy-uniform"};
  return names;
}

ChainSpec ChainFamily(const std::string& name, const FamilyParams& params) {
  if (name == "two-state-A" || name == "two-state-B") {
    const double pb = params.pibar;
    Require(pb > 0.0 && pb < 0.25, "pibar must lie in (0, 1/4)");
    Matrix p(2, 2);
    Vector pi(2);
    if (name == "two-state-A") {
      p << 1.0 - pb, pb, 1.0 - pb, pb;
      pi << 1.0 - pb, pb;
    } else {
      p << 1.0 - pb, pb, 0.5, 0.5;
      pi << 1.0 / (1.0 + 2.0 * pb), 2.0 * pb / (1.0 + 2.0 * pb);
    }
    return ChainSpec(std::move(p), std::move(pi));
  }
  if (name == "perturbed-uniform-0" || name == "perturbed-uniform-i") {
    const int d = params.d;
    const double g = params.gammabar;
    Require(d >= 3, "perturbed-uniform families need d >= 3");
    Require(g > 0.0 && g < 0.5, "gammabar must lie in (0, 1/2)");
    const double half = d / 2.0;
    const double eps = (d - 1) / half * g;
    std::vector<double> rates(static_cast<size_t>(d), eps);
    if (name == "perturbed-uniform-i") {
      Require(params.index >= 0 && params.index < d,
              "index must lie in [0, d)");
      rates[static_cast<size_t>(params.index)] = (half - 1.0) / (d - 1) * eps;
    }
    return StickyUniform(rates);
  }
  if (name == "lazy-uniform") {
    const int d = params.d;
    const double beta = params.beta;
    Require(d >= 2, "lazy-uniform needs d >= 2");
    Require(beta > 0.0 && beta <= 1.0, "beta must lie in (0, 1]");
    Matrix p = Matrix::Constant(d, d, beta / d);
    p.diagonal().array() += 1.0 - beta;
    return ChainSpec(std::move(p), Vector::Constant(d, 1.0 / d));
  }
  throw Error(ErrorCode::kBadParams, "unknown chain family '" + name + "'");
}

}  // namespace mixcert
