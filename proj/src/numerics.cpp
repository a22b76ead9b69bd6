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

#include "numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace mixcert {

namespace {

constexpr double kSymmetryTolerance = 1e-8;

// Relative pivot threshold below which an LU factor is treated as singular.
constexpr double kPivotTolerance = 1e-13;

void CheckPivots(const Eigen::PartialPivLU<Matrix>& lu, double scale,
                 const char* what) {
  const Matrix& packed = lu.matrixLU();
  for (Eigen::Index k = 0; k < packed.rows(); ++k) {
    if (!(std::abs(packed(k, k)) > kPivotTolerance * scale)) {
      throw Error(ErrorCode::kSingular,
                  std::string(what) + ": singular system (pivot " +
                      std::to_string(k) + ")");
    }
  }
}

}  // namespace

double MaxAbs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::vector<double> SymEigenvalues(const Matrix& s) {
  if (s.rows() != s.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "SymEigenvalues: matrix not square");
  }
  const double asym = MaxAbs(s - s.transpose());
  if (asym > kSymmetryTolerance) {
    throw Error(ErrorCode::kNotSymmetric,
                "SymEigenvalues: asymmetry " + std::to_string(asym));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNoConvergence, "SymEigenvalues: no convergence");
  }
  const Vector& ev = solver.eigenvalues();  // ascending
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::reverse(out.begin(), out.end());
  return out;
}

Vector SolveLinear(const Matrix& a, const Vector& b) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorCode::kInvalidArgument, "SolveLinear: shape mismatch");
  }
  const double scale = std::max(MaxAbs(a), 1.0);
  Eigen::PartialPivLU<Matrix> lu(a);
  CheckPivots(lu, scale, "SolveLinear");
  Vector x = lu.solve(b);
  const double bnorm = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
  const double resid = (a * x - b).cwiseAbs().maxCoeff();
  if (!std::isfinite(resid) || resid > 1e-9 * (1.0 + bnorm)) {
    throw Error(ErrorCode::kSingular,
                "SolveLinear: residual " + std::to_string(resid));
  }
  return x;
}

GroupInverse ComputeGroupInverse(const Matrix& p, const Vector& pi) {
  const Eigen::Index d = p.rows();
  if (p.cols() != d || pi.size() != d) {
    throw Error(ErrorCode::kInvalidArgument, "ComputeGroupInverse: shape mismatch");
  }
  const Matrix ones_pi = Vector::Ones(d) * pi.transpose();
  const Matrix a = Matrix::Identity(d, d) - p;
  Eigen::PartialPivLU<Matrix> lu(a + ones_pi);
  CheckPivots(lu, std::max(MaxAbs(a + ones_pi), 1.0), "ComputeGroupInverse");
  const Matrix z = lu.inverse();

  GroupInverse out;
  out.a_sharp = z - ones_pi;
  const Matrix& s = out.a_sharp;
  out.residual_aaa = MaxAbs(a * s * a - a);
  out.residual_sas = MaxAbs(s * a * s - s);
  out.residual_commute = MaxAbs(s * a - a * s);
  const double worst = std::max(
      {out.residual_aaa, out.residual_sas, out.residual_commute});
  if (!std::isfinite(worst) || worst > kGroupInverseTolerance) {
    throw Error(ErrorCode::kAxiomViolation,
                "ComputeGroupInverse: axiom residual " + std::to_string(worst));
  }
  return out;
}

double TailConditionLhs(long long n, int d, double t, double c) {
  const double ratio = std::log(2.0 * static_cast<double>(n) / t) / std::log(c);
  const double levels = std::max(0.0, std::ceil(ratio));
  const double dd = static_cast<double>(d);
  return 2.0 * dd * dd * (1.0 + levels) * std::exp(-t);
}

double TailThreshold(long long n, int d, double delta, double c) {
  if (n < 2 || d < 2 || !(delta > 0.0 && delta < 1.0) || !(c > 1.0)) {
    throw Error(ErrorCode::kDomainError, "TailThreshold: invalid arguments");
  }
  auto holds = [&](double t) { return TailConditionLhs(n, d, t, c) <= delta; };

  double lo = 1e-12;
  if (holds(lo)) return lo;
  const double dd = static_cast<double>(d);
  double hi = std::log(2.0 * dd * dd / delta) + 1.0;
  while (!holds(hi)) {
    lo = hi;
    hi *= 4.0;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (holds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace mixcert
