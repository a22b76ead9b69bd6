/* Copyright 2026 The mixcert Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * mixcert: data-dependent confidence intervals for the spectral gap, the
 * minimum stationary probability and the mixing time of a finite reversible
 * Markov chain observed along a single sample path.
 *
 * All functions return a mixcert_status. On failure, mixcert_last_error()
 * returns a message describing the most recent error on the calling thread.
 * Objects are opaque handles released with the matching *_free function.
 * Strings returned through char** out-parameters are owned by the caller and
 * released with mixcert_string_free.
 */

#ifndef MIXCERT_MIXCERT_H_
#define MIXCERT_MIXCERT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MIXCERT_BUILDING_LIBRARY)
#    define MIXCERT_API __declspec(dllexport)
#  else
#    define MIXCERT_API __declspec(dllimport)
#  endif
#else
#  define MIXCERT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mixcert_status {
  MIXCERT_OK = 0,
  MIXCERT_E_INVALID_ARGUMENT = 1,
  MIXCERT_E_NON_STOCHASTIC = 2,
  MIXCERT_E_TOO_SMALL = 3,
  MIXCERT_E_NOT_ERGODIC = 4,
  MIXCERT_E_NOT_REVERSIBLE = 5,
  MIXCERT_E_DOMAIN = 6,
  MIXCERT_E_BAD_INIT = 7,
  MIXCERT_E_BAD_PARAMS = 8,
  MIXCERT_E_PATH_TOO_SHORT = 9,
  MIXCERT_E_EMPTY_RESULT = 10,
  MIXCERT_E_SINGULAR = 11,
  MIXCERT_E_AXIOM_VIOLATION = 12,
  MIXCERT_E_NOT_SYMMETRIC = 13,
  MIXCERT_E_NO_CONVERGENCE = 14,
  MIXCERT_E_DIVERGED = 15,
  MIXCERT_E_IO = 16,
  MIXCERT_E_PARSE = 17,
  MIXCERT_E_INTERNAL = 99
} mixcert_status;

typedef struct mixcert_chain mixcert_chain;
typedef struct mixcert_path mixcert_path;

MIXCERT_API const char* mixcert_version(void);
MIXCERT_API const char* mixcert_status_name(mixcert_status status);
MIXCERT_API const char* mixcert_last_error(void);
MIXCERT_API void mixcert_string_free(char* s);

/* ---- chains ---------------------------------------------------------- */

/* p is d*d row-major; pi may be NULL. */
MIXCERT_API mixcert_status mixcert_chain_create(size_t d, const double* p,
                                                const double* pi,
                                                mixcert_chain** out);

typedef struct mixcert_family_params {
  int d;
  double pibar;
  double gammabar;
  int index;
  double beta;
} mixcert_family_params;

/* name: two-state-A, two-state-B, perturbed-uniform-0, perturbed-uniform-i,
 * lazy-uniform. */
MIXCERT_API mixcert_status mixcert_chain_family(const char* name,
                                                const mixcert_family_params* params,
                                                mixcert_chain** out);
MIXCERT_API mixcert_status mixcert_chain_load(const char* file, mixcert_chain** out);
MIXCERT_API mixcert_status mixcert_chain_save(const mixcert_chain* chain,
                                              const char* file);
MIXCERT_API mixcert_status mixcert_chain_to_json(const mixcert_chain* chain,
                                                 char** json);
MIXCERT_API size_t mixcert_chain_dim(const mixcert_chain* chain);
/* Copies the d*d row-major transition matrix into p. */
MIXCERT_API mixcert_status mixcert_chain_matrix(const mixcert_chain* chain,
                                                double* p, size_t capacity);
MIXCERT_API void mixcert_chain_free(mixcert_chain* chain);

/* Stationary distribution into pi (length d). */
MIXCERT_API mixcert_status mixcert_chain_stationary(const mixcert_chain* chain,
                                                    double* pi, size_t capacity);
MIXCERT_API mixcert_status mixcert_chain_check(const mixcert_chain* chain,
                                               int* ergodic, int* reversible);

typedef struct mixcert_spectral_summary {
  double lambda_star;
  double gap;
  double t_relax;
  double pi_min;
  double tmix_lower;
  double tmix_upper;
} mixcert_spectral_summary;

MIXCERT_API mixcert_status mixcert_chain_spectral_summary(
    const mixcert_chain* chain, mixcert_spectral_summary* out);
/* Full summary including the eigenvalue list, as JSON. */
MIXCERT_API mixcert_status mixcert_chain_spectral_json(const mixcert_chain* chain,
                                                       char** json);
MIXCERT_API mixcert_status mixcert_tv_mixing_time(const mixcert_chain* chain,
                                                  double threshold,
                                                  long long* t_mix);
MIXCERT_API mixcert_status mixcert_mixing_time_bounds(double gap, double pi_min,
                                                      double* lower,
                                                      double* upper);

/* ---- paths ----------------------------------------------------------- */

MIXCERT_API mixcert_status mixcert_path_create(int d, const int* states,
                                               size_t n, mixcert_path** out);
/* init: "stationary", "uniform" or "state:<i>". */
MIXCERT_API mixcert_status mixcert_path_simulate(const mixcert_chain* chain,
                                                 long long n, const char* init,
                                                 uint64_t seed,
                                                 mixcert_path** out);
MIXCERT_API mixcert_status mixcert_path_load(const char* file, mixcert_path** out);
MIXCERT_API mixcert_status mixcert_path_save(const mixcert_path* path,
                                             const char* file);
MIXCERT_API int mixcert_path_dim(const mixcert_path* path);
MIXCERT_API long long mixcert_path_length(const mixcert_path* path);
MIXCERT_API mixcert_status mixcert_path_states(const mixcert_path* path,
                                               int* states, size_t capacity);
MIXCERT_API void mixcert_path_free(mixcert_path* path);

/* ---- estimates and intervals ----------------------------------------- */

typedef struct mixcert_plugin_result {
  double gamma_hat;
  double pimin_hat;
  int degenerate;
} mixcert_plugin_result;

MIXCERT_API mixcert_status mixcert_estimate_plugin(const mixcert_path* path,
                                                   mixcert_plugin_result* out);

typedef struct mixcert_bootstrap_result {
  double gamma_tilde;
  long long a_selected;
} mixcert_bootstrap_result;

MIXCERT_API mixcert_status mixcert_estimate_bootstrap(const mixcert_path* path,
                                                      mixcert_bootstrap_result* out);

/* method: "plugin" or "bootstrap". */
MIXCERT_API mixcert_status mixcert_estimate_json(const mixcert_path* path,
                                                 const char* method, char** json);

typedef struct mixcert_interval_result {
  double gap_lo, gap_hi;
  double pimin_lo, pimin_hi;
  double tmix_lo, tmix_hi; /* +inf when unbounded */
  double gamma_hat;
  double w_hat;
  double b_hat;
  double kappa_hat;
  double t_hat;
  int combined_applied;
} mixcert_interval_result;

/* combined != 0 adds the plug-in intervals scaled by constant (the gap and
 * pi_min fields then carry the intersected intervals). */
MIXCERT_API mixcert_status mixcert_confidence_intervals(
    const mixcert_path* path, double delta, int combined, double constant,
    mixcert_interval_result* out);
MIXCERT_API mixcert_status mixcert_confidence_json(const mixcert_path* path,
                                                   double delta, int combined,
                                                   double constant, char** json);

/* ---- experiments ----------------------------------------------------- */

typedef struct mixcert_validate_config {
  const char* kind; /* "coverage", "width" or "accuracy" */
  const long long* steps;
  size_t num_steps;
  int trials;
  double delta;
  uint64_t master_seed;
  int jobs; /* overridden by MIXCERT_JOBS */
  const char* init; /* NULL means "stationary" */
} mixcert_validate_config;

MIXCERT_API mixcert_status mixcert_validate_json(const mixcert_chain* chain,
                                                 const mixcert_validate_config* config,
                                                 char** json,
                                                 double* wall_seconds);

MIXCERT_API mixcert_status mixcert_stoprule_json(const mixcert_chain* chain,
                                                 double epsilon, double delta,
                                                 double constant, uint64_t seed,
                                                 long long max_steps,
                                                 const char* init, char** json,
                                                 int* stopped);

MIXCERT_API uint64_t mixcert_trial_seed(uint64_t master_seed, uint64_t trial);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // MIXCERT_MIXCERT_H_
