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


#include <qconverse/qconverse.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "asymptotic.hpp"
#include "channels.hpp"
#include "depolarizing_lp.hpp"
#include "errors.hpp"
#include "oneshot.hpp"

struct qc_channel {
  qconverse::Channel ch;
};

namespace {

using namespace qconverse;

thread_local std::string g_last_error;

qc_status code_to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return QC_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvariantViolation: return QC_ERR_INVARIANT;
    case ErrorCode::ParseError: return QC_ERR_PARSE;
    case ErrorCode::SolverFailure: return QC_ERR_SOLVER;
    case ErrorCode::UnknownName: return QC_ERR_UNKNOWN_NAME;
  }
  return QC_ERR_INTERNAL;
}

qc_status fail(qc_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

template <typename F>
qc_status guarded(F&& f) {
  try {
    f();
    return QC_OK;
  } catch (const Error& e) {
    return fail(code_to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QC_ERR_INTERNAL, "unknown exception");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw invalid_argument(std::string(what) + " is NULL");
}

conic::SolverOptions to_options(const qc_solver_options* o) {
  conic::SolverOptions opts;
  if (o != nullptr) {
    opts.feas_tol = o->feas_tol;
    opts.gap_tol = o->gap_tol;
    opts.max_iter = o->max_iter;
  }
  if (!(opts.feas_tol > 0.0) || !(opts.gap_tol > 0.0) || opts.max_iter < 1) {
    throw invalid_argument("solver options: tolerances must be positive and "
                           "max_iter >= 1");
  }
  return opts;
}

void copy_string(char* dst, std::size_t cap, const std::string& src) {
  const std::size_t n = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), n);
  dst[n] = '\0';
}

void to_c(const BoundResult& r, qc_bound_result* out) {
  std::memset(out, 0, sizeof *out);
  copy_string(out->name, QC_NAME_LEN, r.name);
  out->value = r.value;
  out->log_value = r.log_value;
  out->solver_status = static_cast<qc_solve_status>(r.status);
  out->primal_value = r.primal_value;
  out->dual_value = r.dual_value;
  out->gap = r.gap;
  out->iterations = r.iterations;
  out->wall_seconds = r.wall_seconds;
  std::string joined;
  for (const std::string& w : r.warnings) {
    if (!joined.empty()) joined += "; ";
    joined += w;
  }
  copy_string(out->warnings, QC_WARNINGS_LEN, joined);
}

BoundResult from_c(const qc_bound_result& c) {
  BoundResult r;
  r.name = std::string(c.name, strnlen(c.name, QC_NAME_LEN));
  r.value = c.value;
  r.log_value = c.log_value;
  r.status = static_cast<conic::SolveStatus>(c.solver_status);
  r.primal_value = c.primal_value;
  r.dual_value = c.dual_value;
  r.gap = c.gap;
  r.iterations = c.iterations;
  r.wall_seconds = c.wall_seconds;
  std::string w(c.warnings, strnlen(c.warnings, QC_WARNINGS_LEN));
  std::size_t pos = 0;
  while (!w.empty() && pos != std::string::npos) {
    const std::size_t next = w.find("; ", pos);
    r.warnings.push_back(w.substr(pos, next == std::string::npos ? next : next - pos));
    pos = next == std::string::npos ? next : next + 2;
  }
  return r;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qc_status make_channel(qc_channel** out, const std::function<Channel()>& make) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = new qc_channel{make()};
  });
}

CodeClass to_class(int code_class) {
  if (code_class == 0) return CodeClass::Ppt;
  if (code_class == 1) return CodeClass::NsPpt;
  throw invalid_argument("code_class must be 0 (PPT) or 1 (NS and PPT)");
}

BoundResult capacity_result(const Channel& ch, double eps, CodeClass cls,
                            const conic::SolverOptions& opts) {
  const CapacityResult cap = oneshot_capacity(ch, eps, cls, opts);
  BoundResult r;
  r.name = cls == CodeClass::Ppt ? "capacity_ppt" : "capacity_ns";
  r.value = cap.k_star;
  r.log_value = cap.log_value;
  r.status = conic::SolveStatus::Optimal;
  r.primal_value = r.dual_value = cap.k_star;
  r.gap = 0.0;
  r.iterations = static_cast<int>(cap.trials.size());
  return r;
}

const qc_bound_params& params_or_default(const qc_bound_params* p) {
  static const qc_bound_params kDefault{0.01, 0.0, 5};
  return p != nullptr ? *p : kDefault;
}

}  // namespace

extern "C" {

const char* qc_version(void) { return "0.1.0"; }

const char* qc_last_error(void) { return g_last_error.c_str(); }

const char* qc_status_name(qc_status status) {
  switch (status) {
    case QC_OK: return "ok";
    case QC_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QC_ERR_INVARIANT: return "invariant_violation";
    case QC_ERR_PARSE: return "parse_error";
    case QC_ERR_SOLVER: return "solver_failure";
    case QC_ERR_UNKNOWN_NAME: return "unknown_name";
    case QC_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* qc_solve_status_name(qc_solve_status status) {
  return conic::to_string(static_cast<conic::SolveStatus>(status));
}

void qc_string_free(char* s) { std::free(s); }

qc_solver_options qc_default_solver_options(void) {
  const conic::SolverOptions d;
  return {d.feas_tol, d.gap_tol, d.max_iter};
}

qc_status qc_channel_identity(int d, qc_channel** out) {
  return make_channel(out, [&] { return identity_channel(d); });
}

qc_status qc_channel_amplitude_damping(double r, qc_channel** out) {
  return make_channel(out, [&] { return amplitude_damping(r); });
}

qc_status qc_channel_depolarizing(double p, qc_channel** out) {
  return make_channel(out, [&] { return depolarizing(p); });
}

qc_status qc_channel_nr(double r, qc_channel** out) {
  return make_channel(out, [&] { return channel_nr(r); });
}

qc_status qc_channel_random(int d_in, int d_out, int d_env, uint64_t seed,
                            qc_channel** out) {
  return make_channel(out, [&] { return random_channel(d_in, d_out, d_env, seed); });
}

qc_status qc_channel_tensor(const qc_channel* a, const qc_channel* b,
                            qc_channel** out) {
  return make_channel(out, [&] {
    require(a, "a");
    require(b, "b");
    return tensor(a->ch, b->ch);
  });
}

qc_status qc_channel_tensor_power(const qc_channel* ch, int n, qc_channel** out) {
  return make_channel(out, [&] {
    require(ch, "ch");
    return tensor_power(ch->ch, n);
  });
}

qc_status qc_channel_from_json(const char* text, qc_channel** out) {
  return make_channel(out, [&] {
    require(text, "text");
    return channel_from_json(text);
  });
}

qc_status qc_channel_to_json(const qc_channel* ch, char** out) {
  return guarded([&] {
    require(ch, "ch");
    require(out, "out");
    *out = dup_string(channel_to_json(ch->ch));
  });
}

qc_status qc_channel_dims(const qc_channel* ch, int* d_in, int* d_out) {
  return guarded([&] {
    require(ch, "ch");
    if (d_in) *d_in = ch->ch.d_in();
    if (d_out) *d_out = ch->ch.d_out();
  });
}

void qc_channel_free(qc_channel* ch) { delete ch; }

qc_status qc_bound_f(const qc_channel* ch, double eps,
                     const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(ch, "ch");
    require(out, "out");
    to_c(bound_f(ch->ch, eps, to_options(opts)), out);
  });
}

qc_status qc_bound_g(const qc_channel* ch, double eps,
                     const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(ch, "ch");
    require(out, "out");
    to_c(bound_g(ch->ch, eps, to_options(opts)), out);
  });
}

qc_status qc_bound_g_tilde(const qc_channel* ch, double eps,
                           const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(ch, "ch");
    require(out, "out");
    to_c(bound_g_tilde(ch->ch, eps, to_options(opts)), out);
  });
}

qc_status qc_bound_g_hat(const qc_channel* ch, double eps, double m_hat,
                         const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(ch, "ch");
    require(out, "out");
    to_c(bound_g_hat(ch->ch, eps, m_hat, to_options(opts)), out);
  });
}

qc_status qc_g_hat_iterate(const qc_channel* ch, double eps, int rounds,
                           const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(ch, "ch");
    require(out, "out");
    const auto seq = g_hat_iterate(ch->ch, eps, rounds, to_options(opts));
    for (std::size_t i = 0; i < seq.size(); ++i) to_c(seq[i], out + i);
  });
}

qc_status qc_fidelity(const qc_channel* ch, int k, int code_class,
                      const qc_solver_options* opts, double* fidelity) {
  return guarded([&] {
    require(ch, "ch");
    require(fidelity, "fidelity");
    const FidelityResult fr = fidelity_sdp(ch->ch, k, to_class(code_class),
                                           to_options(opts));
    if (fr.status != conic::SolveStatus::Optimal) {
      throw Error(ErrorCode::SolverFailure,
                  std::string("fidelity SDP ended with status ") +
                      conic::to_string(fr.status));
    }
    *fidelity = fr.fidelity;
  });
}

qc_status qc_oneshot_capacity(const qc_channel* ch, double eps, int code_class,
                              int exhaustive, const qc_solver_options* opts,
                              int* k_star, double* log_value) {
  return guarded([&] {
    require(ch, "ch");
    const CapacityResult cap = oneshot_capacity(
        ch->ch, eps, to_class(code_class), to_options(opts), exhaustive != 0);
    if (k_star) *k_star = cap.k_star;
    if (log_value) *log_value = cap.log_value;
  });
}

qc_status qc_q_gamma(const qc_channel* ch, int dual_form,
                     const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(ch, "ch");
    require(out, "out");
    to_c(q_gamma(ch->ch, dual_form ? Form::Dual : Form::Primal, to_options(opts)),
         out);
  });
}

qc_status qc_q_theta(const qc_channel* ch, const qc_solver_options* opts,
                     qc_bound_result* out) {
  return guarded([&] {
    require(ch, "ch");
    require(out, "out");
    to_c(q_theta(ch->ch, to_options(opts)), out);
  });
}

double qc_strong_converse_error(int n, double rate, double q_gamma) {
  if (n < 1) {
    g_last_error = "strong_converse_error: n must be >= 1";
    return std::numeric_limits<double>::quiet_NaN();
  }
  return strong_converse_error(n, rate, q_gamma);
}

qc_status qc_depol_lp_f(int n, double p, double eps,
                        const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(out, "out");
    to_c(lp_f(n, p, eps, to_options(opts)), out);
  });
}

qc_status qc_depol_lp_g(int n, double p, double eps,
                        const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(out, "out");
    to_c(lp_g(n, p, eps, to_options(opts)), out);
  });
}

qc_status qc_depol_lp_g_hat(int n, double p, double eps, double m_hat,
                            const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(out, "out");
    to_c(lp_g_hat(n, p, eps, m_hat, to_options(opts)), out);
  });
}

qc_status qc_depol_lp_g_hat_iterate(int n, double p, double eps, int rounds,
                                    const qc_solver_options* opts,
                                    qc_bound_result* out) {
  return guarded([&] {
    require(out, "out");
    const auto seq = lp_g_hat_iterate(n, p, eps, rounds, to_options(opts));
    for (std::size_t i = 0; i < seq.size(); ++i) to_c(seq[i], out + i);
  });
}

const char* qc_bound_names(void) {
  return "f g g_tilde g_hat g_hat_iterate q_gamma q_gamma_dual q_theta "
         "capacity_ppt capacity_ns";
}

qc_status qc_bound_by_name(const qc_channel* ch, const char* name,
                           const qc_bound_params* params,
                           const qc_solver_options* opts, qc_bound_result* out) {
  return guarded([&] {
    require(ch, "ch");
    require(name, "name");
    require(out, "out");
    const qc_bound_params& p = params_or_default(params);
    const conic::SolverOptions o = to_options(opts);
    const std::string n = name;
    const Channel& c = ch->ch;
    BoundResult r;
    if (n == "f") {
      r = bound_f(c, p.eps, o);
    } else if (n == "g") {
      r = bound_g(c, p.eps, o);
    } else if (n == "g_tilde") {
      r = bound_g_tilde(c, p.eps, o);
    } else if (n == "g_hat") {
      r = bound_g_hat(c, p.eps, p.m_hat, o);
    } else if (n == "g_hat_iterate") {
      r = g_hat_iterate(c, p.eps, p.rounds, o).back();
    } else if (n == "q_gamma") {
      r = q_gamma(c, Form::Primal, o);
    } else if (n == "q_gamma_dual") {
      r = q_gamma(c, Form::Dual, o);
    } else if (n == "q_theta") {
      r = q_theta(c, o);
    } else if (n == "capacity_ppt") {
      r = capacity_result(c, p.eps, CodeClass::Ppt, o);
    } else if (n == "capacity_ns") {
      r = capacity_result(c, p.eps, CodeClass::NsPpt, o);
    } else {
      throw Error(ErrorCode::UnknownName, "unknown bound '" + n +
                                              "'; expected one of: " +
                                              qc_bound_names());
    }
    to_c(r, out);
  });
}

qc_status qc_program_dump(const qc_channel* ch, const char* name,
                          const qc_bound_params* params, char** out) {
  return guarded([&] {
    require(ch, "ch");
    require(name, "name");
    require(out, "out");
    const qc_bound_params& p = params_or_default(params);
    const std::string n = name;
    OneShotBound b;
    if (n == "f") {
      b = OneShotBound::F;
    } else if (n == "g") {
      b = OneShotBound::G;
    } else if (n == "g_tilde") {
      b = OneShotBound::GTilde;
    } else if (n == "g_hat") {
      b = OneShotBound::GHat;
    } else {
      throw Error(ErrorCode::UnknownName,
                  "program dump supports f, g, g_tilde and g_hat, not '" + n + "'");
    }
    *out = dup_string(oneshot_program(choi(ch->ch), b, p.eps, p.m_hat).dump());
  });
}

qc_status qc_bound_result_to_json(const qc_bound_result* r, char** out) {
  return guarded([&] {
    require(r, "r");
    require(out, "out");
    *out = dup_string(to_json(from_c(*r)));
  });
}

}  // extern "C"
