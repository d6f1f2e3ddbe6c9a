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


#include "oneshot.hpp"

#include <chrono>
#include <cmath>

#include "errors.hpp"

namespace qconverse {
namespace {

using conic::ConicProgram;
using conic::EntryMap;
using conic::LinearForm;
using conic::MatrixExpr;
using conic::Relation;
using conic::Sense;

constexpr double kZeroEps = 1e-12;

double checked_eps(double eps, std::vector<std::string>* warnings) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw invalid_argument("eps must lie in (0, 1), got " + std::to_string(eps));
  }
  if (eps == 0.0) {
    if (warnings) warnings->push_back("eps = 0 replaced by 1e-12");
    return kZeroEps;
  }
  return eps;
}

struct Blocks {
  int W = -1;
  int rho = -1;
  int S = -1;
  int Theta = -1;
  int t = -1;
};

// W >= 0, rho >= 0, tr rho = 1, rho (x) I - W >= 0.
Blocks add_code_variables(ConicProgram& prog, int da, int db) {
  const int n = da * db;
  Blocks b;
  b.W = prog.add_hermitian_psd(n, "W");
  b.rho = prog.add_hermitian_psd(da, "rho");
  prog.add_constraint(LinearForm().add_identity_trace(b.rho, da), Relation::Eq,
                      1.0, "tr rho = 1");
  MatrixExpr cap(n);
  cap.add(b.rho, EntryMap::kron_identity(da, db)).add(b.W, EntryMap::identity(n), -1.0);
  prog.add_matrix_psd(cap, "rho(x)I - W");
  return b;
}

// S (x) I -/+ W^TB >= 0.
void add_two_sided(ConicProgram& prog, const Blocks& b, int da, int db) {
  const int n = da * db;
  for (double sign : {-1.0, 1.0}) {
    MatrixExpr e(n);
    e.add(b.S, EntryMap::kron_identity(da, db))
        .add(b.W, EntryMap::partial_transpose({da, db}, 1), sign);
    prog.add_matrix_psd(e, sign < 0 ? "S(x)I - W^TB" : "S(x)I + W^TB");
  }
}

struct Built {
  ConicProgram prog;
  Blocks blocks;
};

Built build(const ChoiMatrix& j, OneShotBound bound, double eps, double m_hat) {
  const int da = j.d_in;
  const int db = j.d_out;
  const int n = da * db;
  Built out;
  ConicProgram& prog = out.prog;
  Blocks& b = out.blocks;
  b = add_code_variables(prog, da, db);
  prog.add_constraint(LinearForm().add_trace(b.W, j.mat.data()), Relation::Ge,
                      1.0 - eps, "tr J W >= 1 - eps");
  b.S = prog.add_hermitian_psd(da, "S");
  if (bound == OneShotBound::F) {
    b.Theta = prog.add_hermitian_psd(n, "Theta");
    MatrixExpr e(n);
    e.add(b.S, EntryMap::kron_identity(da, db))
        .add(b.W, EntryMap::identity(n), -1.0)
        .add(b.Theta, EntryMap::partial_transpose({da, db}, 1), -1.0);
    prog.add_matrix_psd(e, "S(x)I - W - Theta^TB");
  } else {
    add_two_sided(prog, b, da, db);
  }
  if (bound == OneShotBound::GTilde || bound == OneShotBound::GHat) {
    b.t = prog.add_free(1, "t");
    MatrixExpr ns(db);
    ns.add(b.W, EntryMap::partial_trace({da, db}, 0)).add_scalar_identity(b.t, 0, -1.0);
    prog.add_matrix_equality(ns, "tr_A W = t I");
    if (bound == OneShotBound::GHat) {
      prog.add_constraint(LinearForm().add_scalar(b.t, 0, 1.0), Relation::Ge,
                          m_hat * m_hat, "t >= m_hat^2");
    }
  }
  prog.set_objective(Sense::Minimize, LinearForm().add_identity_trace(b.S, da));
  return out;
}

BoundResult run_bound(const Channel& ch, OneShotBound bound, const char* name,
                      double eps, double m_hat, const conic::SolverOptions& opts,
                      OneShotCertificate* cert) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> warnings;
  const double e = checked_eps(eps, &warnings);
  const ChoiMatrix j = choi(ch);
  const Built built = build(j, bound, e, m_hat);
  const conic::ConicSolution sol = conic::solve(built.prog, opts);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
  BoundResult r = make_bound_result(name, sol, LogSign::Negative, secs);
  r.warnings.insert(r.warnings.begin(), warnings.begin(), warnings.end());
  if (cert && sol.matrices[built.blocks.W].size() > 0) {
    const Blocks& b = built.blocks;
    const Dims ab{j.d_in, j.d_out};
    cert->W = HermMat::hermitian(sol.matrix(b.W), ab);
    cert->rho = HermMat::hermitian(sol.matrix(b.rho));
    cert->S = HermMat::hermitian(sol.matrix(b.S));
    cert->Theta = b.Theta >= 0 ? HermMat::hermitian(sol.matrix(b.Theta), ab)
                               : HermMat();
    cert->t = b.t >= 0 ? sol.scalar(b.t) : 0.0;
    cert->value = r.value;
  }
  return r;
}

void check_channel_value(double m_hat) {
  if (!(m_hat >= 0.0 && m_hat <= 1.0)) {
    throw invalid_argument("m_hat must lie in [0, 1], got " +
                           std::to_string(m_hat));
  }
}

}  // namespace

const char* to_string(CodeClass cls) {
  return cls == CodeClass::Ppt ? "PPT" : "NS∩PPT";
}

const char* to_string(OneShotBound bound) {
  switch (bound) {
    case OneShotBound::F: return "f";
    case OneShotBound::G: return "g";
    case OneShotBound::GTilde: return "g_tilde";
    case OneShotBound::GHat: return "g_hat";
  }
  return "?";
}

FidelityResult fidelity_sdp(const Channel& ch, int k, CodeClass cls,
                            const conic::SolverOptions& opts) {
  if (k < 1) throw invalid_argument("fidelity_sdp: k must be >= 1");
  const ChoiMatrix j = choi(ch);
  const int da = j.d_in;
  const int db = j.d_out;
  const int n = da * db;
  ConicProgram prog;
  const Blocks b = add_code_variables(prog, da, db);
  for (double sign : {-1.0, 1.0}) {
    MatrixExpr e(n);
    e.add(b.rho, EntryMap::kron_identity(da, db), 1.0 / k)
        .add(b.W, EntryMap::partial_transpose({da, db}, 1), sign);
    prog.add_matrix_psd(e, sign < 0 ? "rho(x)I/k - W^TB" : "rho(x)I/k + W^TB");
  }
  if (cls == CodeClass::NsPpt) {
    MatrixExpr ns(db);
    ns.add(b.W, EntryMap::partial_trace({da, db}, 0))
        .add_constant(-CMatrix::Identity(db, db) / double(k) / double(k));
    prog.add_matrix_equality(ns, "tr_A W = I/k^2");
  }
  prog.set_objective(Sense::Maximize, LinearForm().add_trace(b.W, j.mat.data()));
  const conic::ConicSolution sol = conic::solve(prog, opts);
  return {k, 0.5 * (sol.primal_value + sol.dual_value), cls, sol.status};
}

CapacityResult oneshot_capacity(const Channel& ch, double eps, CodeClass cls,
                                const conic::SolverOptions& opts,
                                bool exhaustive) {
  const double e = checked_eps(eps, nullptr);
  CapacityResult out;
  out.k_star = 1;
  for (int k = 2; k <= ch.d_in(); ++k) {
    FidelityResult fr = fidelity_sdp(ch, k, cls, opts);
    out.trials.push_back(fr);
    if (fr.status != conic::SolveStatus::Optimal) {
      throw Error(ErrorCode::SolverFailure,
                  "oneshot_capacity: fidelity SDP at k = " + std::to_string(k) +
                      " ended with status " + conic::to_string(fr.status));
    }
    if (fr.fidelity >= 1.0 - e - kCapacityTol) {
      out.k_star = k;
    } else if (!exhaustive) {
      break;
    }
  }
  out.log_value = std::log2(static_cast<double>(out.k_star));
  return out;
}

conic::ConicProgram oneshot_program(const ChoiMatrix& j, OneShotBound bound,
                                    double eps, double m_hat) {
  check_channel_value(m_hat);
  return build(j, bound, checked_eps(eps, nullptr), m_hat).prog;
}

BoundResult bound_f(const Channel& ch, double eps,
                    const conic::SolverOptions& opts, OneShotCertificate* cert) {
  return run_bound(ch, OneShotBound::F, "f", eps, 0.0, opts, cert);
}

BoundResult bound_g(const Channel& ch, double eps,
                    const conic::SolverOptions& opts, OneShotCertificate* cert) {
  return run_bound(ch, OneShotBound::G, "g", eps, 0.0, opts, cert);
}

BoundResult bound_g_tilde(const Channel& ch, double eps,
                          const conic::SolverOptions& opts,
                          OneShotCertificate* cert) {
  return run_bound(ch, OneShotBound::GTilde, "g_tilde", eps, 0.0, opts, cert);
}

BoundResult bound_g_hat(const Channel& ch, double eps, double m_hat,
                        const conic::SolverOptions& opts,
                        OneShotCertificate* cert) {
  check_channel_value(m_hat);
  return run_bound(ch, OneShotBound::GHat, "g_hat", eps, m_hat, opts, cert);
}

std::vector<BoundResult> g_hat_iterate(const Channel& ch, double eps,
                                       int rounds,
                                       const conic::SolverOptions& opts) {
  if (rounds < 1) throw invalid_argument("g_hat_iterate: rounds must be >= 1");
  const BoundResult g = bound_g(ch, eps, opts);
  if (!g.ok()) {
    throw Error(ErrorCode::SolverFailure,
                std::string("g_hat_iterate: initial g ended with status ") +
                    conic::to_string(g.status));
  }
  std::vector<BoundResult> out;
  double m_hat = std::min(g.value, 1.0);
  for (int i = 1; i <= rounds; ++i) {
    BoundResult r = bound_g_hat(ch, eps, m_hat, opts);
    if (!r.ok()) {
      throw Error(ErrorCode::SolverFailure,
                  "g_hat_iterate: round " + std::to_string(i) +
                      " ended with status " + conic::to_string(r.status));
    }
    r.name = "g_hat_" + std::to_string(i);
    m_hat = std::min(r.value, 1.0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qconverse
