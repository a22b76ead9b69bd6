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

#include "report_json.hpp"

namespace mixcert {

namespace {

Json VectorToJson(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json VectorToJson(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json MatrixToJson(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Json IntervalToJson(const Interval& iv) { return Json::array({iv.lo, iv.hi}); }

Json ToJson(const SpectralSummary& s) {
  Json j;
  j["eigenvalues"] = VectorToJson(s.eigenvalues);
  j["lambda_star"] = s.lambda_star;
  j["gap"] = s.gap;
  j["t_relax"] = s.t_relax;
  j["pi_min"] = s.pi_min;
  j["tmix_lower"] = s.tmix_lower;
  j["tmix_upper"] = s.tmix_upper;
  return j;
}

Json ToJson(const PluginEstimate& e) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["method"] = "plugin";
  j["gamma_hat"] = e.gamma_hat;
  j["pimin_hat"] = e.pimin_hat;
  j["degenerate"] = e.degenerate;
  j["eigenvalues"] = VectorToJson(e.eigenvalues_hat);
  return j;
}

Json ToJson(const BootstrapEstimate& e) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["method"] = "bootstrap";
  j["gamma_tilde"] = e.gamma_tilde;
  j["A"] = e.a_selected;
  Json levels = Json::array();
  for (const auto& l : e.per_level) {
    Json item;
    item["a"] = l.a;
    item["gamma_hat"] = l.gamma_hat;
    levels.push_back(std::move(item));
  }
  j["per_level"] = std::move(levels);
  return j;
}

Json ToJson(const TheoryBounds& t) {
  Json j;
  j["C"] = t.c;
  j["pimin_dev"] = t.pimin_dev;
  j["gap_dev"] = t.gap_dev;
  j["K_gamma"] = t.k_gamma;
  j["delta_gamma"] = t.delta_gamma;
  j["L"] = t.l_const;
  j["n0"] = t.n0;
  return j;
}

Json ToJson(const EmpiricalCertificate& c) {
  Json j;
  j["c"] = c.c;
  j["t_hat"] = c.t_hat;
  j["P_hat"] = MatrixToJson(c.p_hat);
  j["pi_hat"] = VectorToJson(c.pi_hat);
  j["eigenvalues"] = VectorToJson(c.eigenvalues);
  j["gamma_hat"] = c.gamma_hat;
  j["B_hat"] = MatrixToJson(c.entry_bounds);
  j["kappa_hat"] = c.kappa_hat;
  j["b_hat"] = c.pi_deviation;
  j["rho_hat"] = c.ratio_bound;
  j["w_hat"] = c.gap_deviation;
  j["group_inverse_residuals"] =
      Json::array({c.group_inverse.residual_aaa, c.group_inverse.residual_sas,
                   c.group_inverse.residual_commute});
  j["pi_cross_check"] = c.pi_cross_check;
  return j;
}

Json ToJson(const IntervalReport& r) {
  Json j;
  j["delta"] = r.delta;
  Json pis = Json::array();
  for (const auto& iv : r.pi_intervals) pis.push_back(IntervalToJson(iv));
  j["pi_intervals"] = std::move(pis);
  j["pimin_interval"] = IntervalToJson(r.pimin_interval);
  j["gap_interval"] = IntervalToJson(r.gap_interval);
  j["pimin_lb"] = r.pimin_lb;
  j["gap_lb"] = r.gap_lb;
  j["tmix_interval"] = IntervalToJson(r.tmix_interval);
  if (r.combined) {
    const CombinedIntervals& c = *r.combined;
    Json cj;
    cj["applied"] = c.applied;
    cj["fallback"] = !c.applied;
    cj["disjoint"] = c.disjoint;
    cj["C"] = c.c;
    cj["C_prime"] = c.c_prime;
    cj["level"] = c.level;
    cj["gamma_plugin"] = c.gamma_plugin;
    cj["pimin_plugin"] = c.pimin_plugin;
    cj["b_prime"] = c.pimin_deviation;
    cj["w_prime"] = c.gap_deviation;
    cj["U"] = IntervalToJson(c.pimin_interval);
    cj["V"] = IntervalToJson(c.gap_interval);
    cj["tmix_interval"] = IntervalToJson(c.tmix_interval);
    j["combined"] = std::move(cj);
  }
  return j;
}

Json ToJson(const IntervalResult& r, long long n, int d) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "interval_report";
  j["n"] = n;
  j["d"] = d;
  const Json report = ToJson(r.report);
  for (const auto& [key, value] : report.items()) j[key] = value;
  j["certificate"] = ToJson(r.certificate);
  return j;
}

Json ToJson(const StopTrace& t) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "stop_trace";
  j["epsilon"] = t.epsilon;
  j["delta"] = t.delta;
  j["C"] = t.c;
  j["max_steps"] = t.max_steps;
  j["stopped"] = t.stopped;
  j["source_exhausted"] = t.source_exhausted;
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json sj;
    sj["k"] = s.k;
    sj["n"] = s.n;
    sj["delta_k"] = s.delta_k;
    sj["combined_applied"] = s.combined_applied;
    sj["pimin_interval"] = IntervalToJson(s.pimin_interval);
    sj["gap_interval"] = IntervalToJson(s.gap_interval);
    sj["pimin_ratio"] = s.pimin_ratio;
    sj["gap_ratio"] = s.gap_ratio;
    sj["stop"] = s.stop;
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  if (t.final_result && !t.steps.empty()) {
    j["stop_n"] = t.steps.back().n;
    j["final"] = ToJson(t.final_result->report);
  }
  return j;
}

}  // namespace mixcert
