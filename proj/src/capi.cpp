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

#include "mixcert/mixcert.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "empirical_ci.hpp"
#include "error.hpp"
#include "estimators.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "markov_core.hpp"
#include "report_json.hpp"

struct mixcert_chain {
  mixcert::ChainSpec spec;
};

struct mixcert_path {
  mixcert::SamplePath path;
};

namespace {

thread_local std::string g_last_error;

mixcert_status ToStatus(mixcert::ErrorCode code) {
  using mixcert::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return MIXCERT_E_INVALID_ARGUMENT;
    case ErrorCode::kNonStochastic: return MIXCERT_E_NON_STOCHASTIC;
    case ErrorCode::kTooSmall: return MIXCERT_E_TOO_SMALL;
    case ErrorCode::kNotErgodic: return MIXCERT_E_NOT_ERGODIC;
    case ErrorCode::kNotReversible: return MIXCERT_E_NOT_REVERSIBLE;
    case ErrorCode::kDomainError: return MIXCERT_E_DOMAIN;
    case ErrorCode::kBadInit: return MIXCERT_E_BAD_INIT;
    case ErrorCode::kBadParams: return MIXCERT_E_BAD_PARAMS;
    case ErrorCode::kPathTooShort: return MIXCERT_E_PATH_TOO_SHORT;
    case ErrorCode::kEmptyResult: return MIXCERT_E_EMPTY_RESULT;
    case ErrorCode::kSingular: return MIXCERT_E_SINGULAR;
    case ErrorCode::kAxiomViolation: return MIXCERT_E_AXIOM_VIOLATION;
    case ErrorCode::kNotSymmetric: return MIXCERT_E_NOT_SYMMETRIC;
    case ErrorCode::kNoConvergence: return MIXCERT_E_NO_CONVERGENCE;
    case ErrorCode::kDiverged: return MIXCERT_E_DIVERGED;
    case ErrorCode::kIo: return MIXCERT_E_IO;
    case ErrorCode::kParse: return MIXCERT_E_PARSE;
  }
  return MIXCERT_E_INTERNAL;
}

mixcert_status Fail(mixcert_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

template <class F>
mixcert_status Guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return MIXCERT_OK;
  } catch (const mixcert::Error& e) {
    return Fail(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(MIXCERT_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(MIXCERT_E_INTERNAL, e.what());
  } catch (...) {
    return Fail(MIXCERT_E_INTERNAL, "unknown error");
  }
}

#define MIXCERT_REQUIRE(cond, what)                          \
  do {                                                       \
    if (!(cond)) return Fail(MIXCERT_E_INVALID_ARGUMENT, what); \
  } while (0)

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

mixcert::ValidateKind ParseKind(const char* kind) {
  const std::string k = kind ? kind : "";
  if (k == "coverage") return mixcert::ValidateKind::kCoverage;
  if (k == "width") return mixcert::ValidateKind::kWidth;
  if (k == "accuracy") return mixcert::ValidateKind::kAccuracy;
  throw mixcert::Error(mixcert::ErrorCode::kBadParams,
                       "unknown validation kind '" + k + "'");
}

}  // namespace

extern "C" {

const char* mixcert_version(void) { return "1.0.0"; }

const char* mixcert_status_name(mixcert_status status) {
  switch (status) {
    case MIXCERT_OK: return "OK";
    case MIXCERT_E_INTERNAL: return "Internal";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 17) {
    return mixcert::ErrorCodeName(static_cast<mixcert::ErrorCode>(code));
  }
  return "Unknown";
}

const char* mixcert_last_error(void) { return g_last_error.c_str(); }

void mixcert_string_free(char* s) { std::free(s); }

mixcert_status mixcert_chain_create(size_t d, const double* p, const double* pi,
                                    mixcert_chain** out) {
  MIXCERT_REQUIRE(p && out, "null argument");
  return Guard([&] {
    const auto n = static_cast<Eigen::Index>(d);
    mixcert::Matrix m =
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>(p, n, n);
    std::optional<mixcert::Vector> pv;
    if (pi) pv = Eigen::Map<const mixcert::Vector>(pi, n);
    *out = new mixcert_chain{mixcert::ChainSpec(std::move(m), std::move(pv))};
  });
}

mixcert_status mixcert_chain_family(const char* name,
                                    const mixcert_family_params* params,
                                    mixcert_chain** out) {
  MIXCERT_REQUIRE(name && params && out, "null argument");
  return Guard([&] {
    mixcert::FamilyParams fp;
    fp.d = params->d;
    fp.pibar = params->pibar;
    fp.gammabar = params->gammabar;
    fp.index = params->index;
    fp.beta = params->beta;
    *out = new mixcert_chain{mixcert::ChainFamily(name, fp)};
  });
}

mixcert_status mixcert_chain_load(const char* file, mixcert_chain** out) {
  MIXCERT_REQUIRE(file && out, "null argument");
  return Guard([&] { *out = new mixcert_chain{mixcert::ReadChainFile(file)}; });
}

mixcert_status mixcert_chain_save(const mixcert_chain* chain, const char* file) {
  MIXCERT_REQUIRE(chain && file, "null argument");
  return Guard([&] { mixcert::WriteChainFile(chain->spec, file); });
}

mixcert_status mixcert_chain_to_json(const mixcert_chain* chain, char** json) {
  MIXCERT_REQUIRE(chain && json, "null argument");
  return Guard([&] {
    *json = CopyString(mixcert::DumpJson(mixcert::ChainToJson(chain->spec)));
  });
}

size_t mixcert_chain_dim(const mixcert_chain* chain) {
  return chain ? static_cast<size_t>(chain->spec.d()) : 0;
}

mixcert_status mixcert_chain_matrix(const mixcert_chain* chain, double* p,
                                    size_t capacity) {
  MIXCERT_REQUIRE(chain && p, "null argument");
  const int d = chain->spec.d();
  MIXCERT_REQUIRE(capacity >= static_cast<size_t>(d) * d, "buffer too small");
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) p[i * d + j] = chain->spec.p()(i, j);
  }
  return MIXCERT_OK;
}

void mixcert_chain_free(mixcert_chain* chain) { delete chain; }

mixcert_status mixcert_chain_stationary(const mixcert_chain* chain, double* pi,
                                        size_t capacity) {
  MIXCERT_REQUIRE(chain && pi, "null argument");
  MIXCERT_REQUIRE(capacity >= static_cast<size_t>(chain->spec.d()),
                  "buffer too small");
  return Guard([&] {
    const auto stat = mixcert::ComputeStationary(chain->spec);
    for (Eigen::Index i = 0; i < stat.pi.size(); ++i) pi[i] = stat.pi[i];
  });
}

mixcert_status mixcert_chain_check(const mixcert_chain* chain, int* ergodic,
                                   int* reversible) {
  MIXCERT_REQUIRE(chain && ergodic && reversible, "null argument");
  return Guard([&] {
    const auto flags = mixcert::CheckErgodicReversible(chain->spec);
    *ergodic = flags.ergodic;
    *reversible = flags.reversible;
  });
}

mixcert_status mixcert_chain_spectral_summary(const mixcert_chain* chain,
                                              mixcert_spectral_summary* out) {
  MIXCERT_REQUIRE(chain && out, "null argument");
  return Guard([&] {
    const auto s = mixcert::ExactSpectralSummary(chain->spec);
    *out = {s.lambda_star, s.gap,        s.t_relax,
            s.pi_min,      s.tmix_lower, s.tmix_upper};
  });
}

mixcert_status mixcert_chain_spectral_json(const mixcert_chain* chain,
                                           char** json) {
  MIXCERT_REQUIRE(chain && json, "null argument");
  return Guard([&] {
    mixcert::Json j;
    j["schema"] = mixcert::kSchemaVersion;
    j["kind"] = "spectral_summary";
    j["d"] = chain->spec.d();
    const mixcert::Json summary =
        mixcert::ToJson(mixcert::ExactSpectralSummary(chain->spec));
    for (const auto& [k, v] : summary.items()) j[k] = v;
    *json = CopyString(mixcert::DumpJson(j));
  });
}

mixcert_status mixcert_tv_mixing_time(const mixcert_chain* chain,
                                      double threshold, long long* t_mix) {
  MIXCERT_REQUIRE(chain && t_mix, "null argument");
  MIXCERT_REQUIRE(threshold > 0.0 && threshold < 1.0, "threshold must lie in (0,1)");
  return Guard([&] { *t_mix = mixcert::TvMixingTime(chain->spec, threshold); });
}

mixcert_status mixcert_mixing_time_bounds(double gap, double pi_min,
                                          double* lower, double* upper) {
  MIXCERT_REQUIRE(lower && upper, "null argument");
  return Guard([&] {
    const auto b = mixcert::ComputeMixingTimeBounds(gap, pi_min);
    *lower = b.lower;
    *upper = b.upper;
  });
}

mixcert_status mixcert_path_create(int d, const int* states, size_t n,
                                   mixcert_path** out) {
  MIXCERT_REQUIRE(out && (states || n == 0), "null argument");
  return Guard([&] {
    *out = new mixcert_path{
        mixcert::SamplePath(d, std::vector<int>(states, states + n))};
  });
}

mixcert_status mixcert_path_simulate(const mixcert_chain* chain, long long n,
                                     const char* init, uint64_t seed,
                                     mixcert_path** out) {
  MIXCERT_REQUIRE(chain && out, "null argument");
  return Guard([&] {
    const auto ic = mixcert::ParseInitialCondition(init ? init : "stationary");
    *out = new mixcert_path{mixcert::SimulatePath(chain->spec, n, ic, seed)};
  });
}

mixcert_status mixcert_path_load(const char* file, mixcert_path** out) {
  MIXCERT_REQUIRE(file && out, "null argument");
  return Guard([&] { *out = new mixcert_path{mixcert::ReadPathFile(file)}; });
}

mixcert_status mixcert_path_save(const mixcert_path* path, const char* file) {
  MIXCERT_REQUIRE(path && file, "null argument");
  return Guard([&] { mixcert::WritePathFile(path->path, file); });
}

int mixcert_path_dim(const mixcert_path* path) { return path ? path->path.d() : 0; }

long long mixcert_path_length(const mixcert_path* path) {
  return path ? path->path.size() : 0;
}

mixcert_status mixcert_path_states(const mixcert_path* path, int* states,
                                   size_t capacity) {
  MIXCERT_REQUIRE(path && states, "null argument");
  MIXCERT_REQUIRE(capacity >= static_cast<size_t>(path->path.size()),
                  "buffer too small");
  std::memcpy(states, path->path.states().data(),
              path->path.states().size() * sizeof(int));
  return MIXCERT_OK;
}

void mixcert_path_free(mixcert_path* path) { delete path; }

mixcert_status mixcert_estimate_plugin(const mixcert_path* path,
                                       mixcert_plugin_result* out) {
  MIXCERT_REQUIRE(path && out, "null argument");
  return Guard([&] {
    const auto e = mixcert::EstimatePlugin(path->path);
    *out = {e.gamma_hat, e.pimin_hat, e.degenerate ? 1 : 0};
  });
}

mixcert_status mixcert_estimate_bootstrap(const mixcert_path* path,
                                          mixcert_bootstrap_result* out) {
  MIXCERT_REQUIRE(path && out, "null argument");
  return Guard([&] {
    const auto e = mixcert::EstimateBootstrap(path->path);
    *out = {e.gamma_tilde, e.a_selected};
  });
}

mixcert_status mixcert_estimate_json(const mixcert_path* path,
                                     const char* method, char** json) {
  MIXCERT_REQUIRE(path && json, "null argument");
  const std::string m = method ? method : "plugin";
  if (m != "plugin" && m != "bootstrap") {
    return Fail(MIXCERT_E_BAD_PARAMS, "unknown method '" + m + "'");
  }
  return Guard([&] {
    mixcert::Json j;
    if (m == "plugin") {
      j = mixcert::ToJson(mixcert::EstimatePlugin(path->path));
    } else {
      j = mixcert::ToJson(mixcert::EstimateBootstrap(path->path));
      j["pimin_hat"] = mixcert::EstimatePlugin(path->path).pimin_hat;
    }
    j["n"] = path->path.size();
    j["d"] = path->path.d();
    *json = CopyString(mixcert::DumpJson(j));
  });
}

namespace {

mixcert::IntervalResult RunIntervals(const mixcert_path* path, double delta,
                                     int combined, double constant) {
  return combined ? mixcert::RunCombinedIntervals(path->path, delta, constant)
                  : mixcert::RunEmpiricalIntervals(path->path, delta);
}

}  // namespace

mixcert_status mixcert_confidence_intervals(const mixcert_path* path,
                                            double delta, int combined,
                                            double constant,
                                            mixcert_interval_result* out) {
  MIXCERT_REQUIRE(path && out, "null argument");
  return Guard([&] {
    const auto res = RunIntervals(path, delta, combined, constant);
    const auto& r = res.report;
    const auto& c = res.certificate;
    mixcert_interval_result o{};
    const bool use_comb = r.combined.has_value();
    const auto& gap = use_comb ? r.combined->gap_interval : r.gap_interval;
    const auto& pim = use_comb ? r.combined->pimin_interval : r.pimin_interval;
    const auto& tmix = use_comb ? r.combined->tmix_interval : r.tmix_interval;
    o.gap_lo = gap.lo;
    o.gap_hi = gap.hi;
    o.pimin_lo = pim.lo;
    o.pimin_hi = pim.hi;
    o.tmix_lo = tmix.lo;
    o.tmix_hi = tmix.hi;
    o.gamma_hat = c.gamma_hat;
    o.w_hat = c.gap_deviation;
    o.b_hat = c.pi_deviation;
    o.kappa_hat = c.kappa_hat;
    o.t_hat = c.t_hat;
    o.combined_applied = use_comb && r.combined->applied;
    *out = o;
  });
}

mixcert_status mixcert_confidence_json(const mixcert_path* path, double delta,
                                       int combined, double constant,
                                       char** json) {
  MIXCERT_REQUIRE(path && json, "null argument");
  return Guard([&] {
    const auto res = RunIntervals(path, delta, combined, constant);
    *json = CopyString(mixcert::DumpJson(
        mixcert::ToJson(res, path->path.size(), path->path.d())));
  });
}

mixcert_status mixcert_validate_json(const mixcert_chain* chain,
                                     const mixcert_validate_config* config,
                                     char** json, double* wall_seconds) {
  MIXCERT_REQUIRE(chain && config && json, "null argument");
  MIXCERT_REQUIRE(config->steps || config->num_steps == 0, "null steps");
  return Guard([&] {
    mixcert::ExperimentConfig c;
    c.kind = ParseKind(config->kind);
    c.steps.assign(config->steps, config->steps + config->num_steps);
    c.trials = config->trials;
    c.delta = config->delta;
    c.master_seed = config->master_seed;
    c.jobs = mixcert::ResolveJobs(config->jobs);
    c.init = config->init ? config->init : "stationary";
    const auto report = mixcert::RunValidation(chain->spec, c);
    *json = CopyString(mixcert::DumpJson(mixcert::ToJson(report)));
    if (wall_seconds) *wall_seconds = report.wall_seconds;
  });
}

mixcert_status mixcert_stoprule_json(const mixcert_chain* chain, double epsilon,
                                     double delta, double constant,
                                     uint64_t seed, long long max_steps,
                                     const char* init, char** json,
                                     int* stopped) {
  MIXCERT_REQUIRE(chain && json, "null argument");
  return Guard([&] {
    mixcert::SimulatedPathSource source(
        chain->spec, mixcert::ParseInitialCondition(init ? init : "stationary"),
        seed);
    const auto trace =
        mixcert::RunStoppingRule(source, epsilon, delta, constant, max_steps);
    mixcert::Json j = mixcert::ToJson(trace);
    j["seed"] = seed;
    *json = CopyString(mixcert::DumpJson(j));
    if (stopped) *stopped = trace.stopped;
  });
}

uint64_t mixcert_trial_seed(uint64_t master_seed, uint64_t trial) {
  return mixcert::TrialSeed(master_seed, trial);
}

}  // extern "C"
