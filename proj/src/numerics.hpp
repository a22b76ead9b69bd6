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

// Dense numerical kernels used by the estimators: symmetric eigenvalues,
// pivoted linear solves, the group inverse of I - P and the tail threshold
// used by the entrywise transition bounds.

#pragma once

#include <Eigen/Dense>

#include <vector>

namespace mixcert {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Largest absolute entry.
double MaxAbs(const Matrix& m);

// Eigenvalues of a symmetric matrix in descending order. Throws NotSymmetric
// if max|S - S^T| > 1e-8 and NoConvergence if the solver fails.
std::vector<double> SymEigenvalues(const Matrix& s);

// Solves A x = b with partial pivoting. Throws Singular when a pivot
// vanishes relative to the scale of A or the residual check fails.
Vector SolveLinear(const Matrix& a, const Vector& b);

struct GroupInverse {
  Matrix a_sharp;
  // Max-entry residuals of A A# A - A, A# A A# - A#, A# A - A A#.
  double residual_aaa = 0.0;
  double residual_sas = 0.0;
  double residual_commute = 0.0;
};

inline constexpr double kGroupInverseTolerance = 1e-8;

// Group inverse of A = I - P for an ergodic stochastic P with stationary
// distribution pi, via the fundamental matrix Z = (I - P + 1 pi)^{-1}:
//   A# = Z - 1 pi.
// Throws Singular or AxiomViolation.
GroupInverse ComputeGroupInverse(const Matrix& p, const Vector& pi);

// Left-hand side of the tail condition,
//   2 d^2 (1 + ceil(log_c(2n/t))_+) exp(-t).
double TailConditionLhs(long long n, int d, double t, double c);

// inf{t >= 0 : TailConditionLhs(n, d, t, c) <= delta}, by bisection to an
// absolute tolerance of 1e-9. The returned value satisfies the condition.
double TailThreshold(long long n, int d, double delta, double c);

}  // namespace mixcert
