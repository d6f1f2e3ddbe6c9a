// Copyright 2026 The qconverse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to the qconverse library.
 *
 * Every fallible call returns a qc_status. On failure a description of the
 * last error on the calling thread is available from qc_last_error() until
 * the next failing call on that thread. Objects are opaque handles released
 * with the matching *_free function; strings returned through char** are
 * released with qc_string_free. All functions are safe to call concurrently
 * on distinct handles.
 */

#ifndef QCONVERSE_QCONVERSE_H_
#define QCONVERSE_QCONVERSE_H_

#include <stdint.h>

#if defined(_WIN32)
#define QC_API __declspec(dllexport)
#else
#define QC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qc_status {
  QC_OK = 0,
  QC_ERR_INVALID_ARGUMENT = 1,
  QC_ERR_INVARIANT = 2,
  QC_ERR_PARSE = 3,
  QC_ERR_SOLVER = 4,
  QC_ERR_UNKNOWN_NAME = 5,
  QC_ERR_INTERNAL = 6
} qc_status;

typedef enum qc_solve_status {
  QC_SOLVE_OPTIMAL = 0,
  QC_SOLVE_INFEASIBLE = 1,
  QC_SOLVE_UNBOUNDED = 2,
  QC_SOLVE_MAX_ITER = 3
} qc_solve_status;

typedef struct qc_channel qc_channel;

typedef struct qc_solver_options {
  double feas_tol;
  double gap_tol;
  int max_iter;
} qc_solver_options;

/* Extra inputs of the named bounds. Unused fields are ignored. */
typedef struct qc_bound_params {
  double eps;
  double m_hat;
  int rounds;
} qc_bound_params;

#define QC_NAME_LEN 48
#define QC_WARNINGS_LEN 256

typedef struct qc_bound_result {
  char name[QC_NAME_LEN];
  double value;     /* program optimum; NaN unless optimal */
  double log_value; /* qubits: -log2 value (one-shot) or log2 value */
  qc_solve_status solver_status;
  double primal_value;
  double dual_value;
  double gap;
  int iterations;
  double wall_seconds;
  char warnings[QC_WARNINGS_LEN]; /* "; "-separated, possibly truncated */
} qc_bound_result;

QC_API const char* qc_version(void);
QC_API const char* qc_last_error(void);
QC_API const char* qc_status_name(qc_status status);
QC_API const char* qc_solve_status_name(qc_solve_status status);
QC_API void qc_string_free(char* s);

/* feas_tol = gap_tol = 1e-8, max_iter = 120. */
QC_API qc_solver_options qc_default_solver_options(void);

/* Channels. */
QC_API qc_status qc_channel_identity(int d, qc_channel** out);
QC_API qc_status qc_channel_amplitude_damping(double r, qc_channel** out);
QC_API qc_status qc_channel_depolarizing(double p, qc_channel** out);
QC_API qc_status qc_channel_nr(double r, qc_channel** out);
QC_API qc_status qc_channel_random(int d_in, int d_out, int d_env,
                                   uint64_t seed, qc_channel** out);
QC_API qc_status qc_channel_tensor(const qc_channel* a, const qc_channel* b,
                                   qc_channel** out);
QC_API qc_status qc_channel_tensor_power(const qc_channel* ch, int n,
                                         qc_channel** out);
QC_API qc_status qc_channel_from_json(const char* text, qc_channel** out);
QC_API qc_status qc_channel_to_json(const qc_channel* ch, char** out);
QC_API qc_status qc_channel_dims(const qc_channel* ch, int* d_in, int* d_out);
QC_API void qc_channel_free(qc_channel* ch);

/* One-shot bounds. opts may be NULL for the defaults. */
QC_API qc_status qc_bound_f(const qc_channel* ch, double eps,
                            const qc_solver_options* opts, qc_bound_result* out);
QC_API qc_status qc_bound_g(const qc_channel* ch, double eps,
                            const qc_solver_options* opts, qc_bound_result* out);
QC_API qc_status qc_bound_g_tilde(const qc_channel* ch, double eps,
                                  const qc_solver_options* opts,
                                  qc_bound_result* out);
QC_API qc_status qc_bound_g_hat(const qc_channel* ch, double eps, double m_hat,
                                const qc_solver_options* opts,
                                qc_bound_result* out);
/* Writes `rounds` results into out[0..rounds-1]. */
QC_API qc_status qc_g_hat_iterate(const qc_channel* ch, double eps, int rounds,
                                  const qc_solver_options* opts,
                                  qc_bound_result* out);

/* code_class: 0 = PPT, 1 = NS and PPT. */
QC_API qc_status qc_fidelity(const qc_channel* ch, int k, int code_class,
                             const qc_solver_options* opts, double* fidelity);
QC_API qc_status qc_oneshot_capacity(const qc_channel* ch, double eps,
                                     int code_class, int exhaustive,
                                     const qc_solver_options* opts,
                                     int* k_star, double* log_value);

/* Asymptotic bounds. dual_form: 0 solves the primal program, 1 the dual. */
QC_API qc_status qc_q_gamma(const qc_channel* ch, int dual_form,
                            const qc_solver_options* opts, qc_bound_result* out);
QC_API qc_status qc_q_theta(const qc_channel* ch, const qc_solver_options* opts,
                            qc_bound_result* out);
QC_API double qc_strong_converse_error(int n, double rate, double q_gamma);

/* Depolarizing-channel linear programs for n uses. */
QC_API qc_status qc_depol_lp_f(int n, double p, double eps,
                               const qc_solver_options* opts,
                               qc_bound_result* out);
QC_API qc_status qc_depol_lp_g(int n, double p, double eps,
                               const qc_solver_options* opts,
                               qc_bound_result* out);
QC_API qc_status qc_depol_lp_g_hat(int n, double p, double eps, double m_hat,
                                   const qc_solver_options* opts,
                                   qc_bound_result* out);
QC_API qc_status qc_depol_lp_g_hat_iterate(int n, double p, double eps,
                                           int rounds,
                                           const qc_solver_options* opts,
                                           qc_bound_result* out);

/* Channel bounds by name: f, g, g_tilde, g_hat, g_hat_iterate (last round),
 * q_gamma, q_gamma_dual, q_theta, capacity_ppt, capacity_ns. The capacity
 * names report k* as value and log2 k* as log_value. */
QC_API qc_status qc_bound_by_name(const qc_channel* ch, const char* name,
                                  const qc_bound_params* params,
                                  const qc_solver_options* opts,
                                  qc_bound_result* out);
/* Space-separated list of the names accepted above. */
QC_API const char* qc_bound_names(void);

/* Text listing of the conic program behind f, g, g_tilde or g_hat. */
QC_API qc_status qc_program_dump(const qc_channel* ch, const char* name,
                                 const qc_bound_params* params, char** out);

QC_API qc_status qc_bound_result_to_json(const qc_bound_result* r, char** out);

#ifdef __cplusplus
}
#endif

#endif /* QCONVERSE_QCONVERSE_H_ */
