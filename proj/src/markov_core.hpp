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

// Finite Markov chains: validated transition matrices, their exact
// stationary distribution and spectrum, seeded path simulation, and the
// built-in chain families used as test fixtures and lower-bound examples.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "numerics.hpp"

namespace mixcert {

// Row-stochastic transition matrix, validated on construction.
class ChainSpec {
 public:
  // Throws TooSmall (d < 2), InvalidArgument (not square) or NonStochastic.
  explicit ChainSpec(Matrix p, std::optional<Vector> pi_known = std::nullopt);

  int d() const { return static_cast<int>(p_.rows()); }
  const Matrix& p() const { return p_; }
  const std::optional<Vector>& pi_known() const { return pi_known_; }

 private:
  Matrix p_;
  std::optional<Vector> pi_known_;
};

inline constexpr double kStochasticTolerance = 1e-12;

ChainSpec ValidateChain(const Matrix& raw);

struct StationaryDistribution {
  Vector pi;
  double pi_min = 0.0;
};

// Solves pi (I - P) = 0 with one equation replaced by sum(pi) = 1. Throws
// NotErgodic if the system is singular or the solution is not a strictly
// positive probability vector.
StationaryDistribution ComputeStationary(const Matrix& p);
StationaryDistribution ComputeStationary(const ChainSpec& chain);

struct ChainFlags {
  bool ergodic = false;
  bool reversible = false;
  // max |pi_i P_ij - pi_j P_ji|; +inf when no stationary distribution.
  double detailed_balance_residual = 0.0;
};

ChainFlags CheckErgodicReversible(const ChainSpec& chain);

struct SpectralSummary {
  std::vector<double> eigenvalues;  // descending
  double lambda_star = 0.0;
  double gap = 0.0;
  double t_relax = 0.0;
  double tmix_lower = 0.0;
  double tmix_upper = 0.0;
  double pi_min = 0.0;
};

// L = Diag(pi)^{-1/2} Diag(pi) P Diag(pi)^{-1/2} for the exact pi.
Matrix SymmetrizedTransitionOperator(const ChainSpec& chain, const Vector& pi);

// Throws NotErgodic or NotReversible (L asymmetric beyond 1e-8).
SpectralSummary ExactSpectralSummary(const ChainSpec& chain);

struct MixingTimeBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// (1/gap - 1) ln 2 <= t_mix <= (1/gap) ln(4/pi_min). Throws DomainError.
MixingTimeBounds ComputeMixingTimeBounds(double gap, double pi_min);

class SamplePath {
 public:
  SamplePath() = default;
  // Throws InvalidArgument if d < 1 or a state is out of range.
  SamplePath(int d, std::vector<int> states);

  int d() const { return d_; }
  long long size() const { return static_cast<long long>(states_.size()); }
  const std::vector<int>& states() const { return states_; }
  int operator[](long long t) const { return states_[static_cast<size_t>(t)]; }

  SamplePath Prefix(long long n) const;

  friend bool operator==(const SamplePath&, const SamplePath&) = default;

 private:
  int d_ = 0;
  std::vector<int> states_;
};

// Uniform draws in [0, 1) built from the top 53 bits of std::mt19937_64,
// which the standard library specifies bit-exactly on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

struct InitStationary {};
struct InitUniform {};
struct InitState {
  int state = 0;
};
using InitialCondition =
    std::variant<InitStationary, InitUniform, InitState, Vector>;

// Parses "stationary", "uniform" or "state:<i>". Throws BadInit.
InitialCondition ParseInitialCondition(const std::string& text);

// Streaming simulator: each step consumes exactly one uniform draw, so any
// prefix of a longer run equals a shorter run with the same seed.
class PathSimulator {
 public:
  // Throws BadInit.
  PathSimulator(const ChainSpec& chain, const InitialCondition& init,
                std::uint64_t seed);

  int Next();
  int d() const { return d_; }

 private:
  int Draw(const double* cdf);

  int d_;
  std::vector<double> cdf_;  // row-major cumulative sums, one row per state
  std::vector<double> init_cdf_;
  std::optional<int> init_state_;
  Rng rng_;
  int current_ = -1;
};

SamplePath SimulatePath(const ChainSpec& chain, long long n,
                        const InitialCondition& init, std::uint64_t seed);

struct FamilyParams {
  int d = 0;
  double pibar = 0.0;     // two-state families
  double gammabar = 0.0;  // perturbed-uniform families
  int index = 0;          // perturbed state for perturbed-uniform-i (0-based)
  double beta = 0.0;      // lazy-uniform
};

// Names: two-state-A, two-state-B, perturbed-uniform-0, perturbed-uniform-i,
// lazy-uniform. Throws BadParams.
ChainSpec ChainFamily(const std::string& name, const FamilyParams& params);

const std::vector<std::string>& ChainFamilyNames();

}  // namespace mixcert
