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


#include "asymptotic.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace qconverse {
namespace {

using conic::ConicProgram;
using conic::EntryMap;
using conic::LinearForm;
using conic::MatrixExpr;
using conic::Relation;
using conic::Sense;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr double kStateTol = 1e-9;

}  // namespace

const char* to_string(Form form) {
  return form == Form::Primal ? "primal" : "dual";
}

BoundResult q_gamma(const Channel& ch, Form form,
                    const conic::SolverOptions& opts, GammaCertificate* cert) {
  const auto start = Clock::now();
  const ChoiMatrix j = choi(ch);
  const int da = j.d_in;
  const int db = j.d_out;
  const int n = da * db;
  const Dims ab{da, db};
  ConicProgram prog;
  if (form == Form::Primal) {
    const int R = prog.add_hermitian_psd(n, "R");
    const int rho = prog.add_hermitian_psd(da, "rho");
    prog.add_constraint(LinearForm().add_identity_trace(rho, da), Relation::Eq,
                        1.0, "tr rho = 1");
    int slack[2];
    for (int i = 0; i < 2; ++i) {
      const double sign = i == 0 ? -1.0 : 1.0;
      MatrixExpr e(n);
      e.add(rho, EntryMap::kron_identity(da, db))
          .add(R, EntryMap::partial_transpose(ab, 1), sign);
      slack[i] = prog.add_matrix_psd(e, i == 0 ? "rho(x)I - R^TB" : "rho(x)I + R^TB");
    }
    prog.set_objective(Sense::Maximize, LinearForm().add_trace(R, j.mat.data()));
    const conic::ConicSolution sol = conic::solve(prog, opts);
    BoundResult r = make_bound_result("q_gamma", sol, LogSign::Positive,
                                      seconds_since(start));
    if (cert) {
      cert->R = HermMat::hermitian(sol.matrix(R), ab);
      cert->rho = HermMat::hermitian(sol.matrix(rho));
      cert->V = HermMat::hermitian(sol.dual_matrices[slack[0]], ab);
      cert->Y = HermMat::hermitian(sol.dual_matrices[slack[1]], ab);
      cert->mu = sol.dual_value;
      cert->value = r.value;
    }
    return r;
  }

  const int V = prog.add_hermitian_psd(n, "V");
  const int Y = prog.add_hermitian_psd(n, "Y");
  const int mu = prog.add_free(1, "mu");
  MatrixExpr cover(n);
  cover.add(V, EntryMap::partial_transpose(ab, 1))
      .add(Y, EntryMap::partial_transpose(ab, 1), -1.0)
      .add_constant(-j.mat.data());
  prog.add_matrix_psd(cover, "(V-Y)^TB - J");
  MatrixExpr marg(da);
  marg.add_scalar_identity(mu, 0)
      .add(V, EntryMap::partial_trace(ab, 1), -1.0)
      .add(Y, EntryMap::partial_trace(ab, 1), -1.0);
  prog.add_matrix_psd(marg, "mu I - tr_B(V+Y)");
  prog.set_objective(Sense::Minimize, LinearForm().add_scalar(mu, 0, 1.0));
  const conic::ConicSolution sol = conic::solve(prog, opts);
  BoundResult r = make_bound_result("q_gamma_dual", sol, LogSign::Positive,
                                    seconds_since(start));
  if (cert) {
    cert->R = HermMat();
    cert->rho = HermMat();
    cert->V = HermMat::hermitian(sol.matrix(V), ab);
    cert->Y = HermMat::hermitian(sol.matrix(Y), ab);
    cert->mu = sol.scalar(mu);
    cert->value = r.value;
  }
  return r;
}

BoundResult e_w(const HermMat& rho, Form form, const conic::SolverOptions& opts,
                EwCertificate* cert) {
  const auto start = Clock::now();
  if (rho.dims().size() != 2) {
    throw invalid_argument("e_w: operator must have exactly two tensor factors");
  }
  if (!rho.is_hermitian()) throw invalid_argument("e_w: operator not Hermitian");
  const double lam = min_eigenvalue(rho.data());
  if (lam < -kStateTol) {
    throw invalid_argument("e_w: operator is not PSD (min eigenvalue " +
                           std::to_string(lam) + ")");
  }
  if (rho.trace().real() > 1.0 + kStateTol) {
    throw invalid_argument("e_w: trace exceeds 1");
  }
  const Dims ab = rho.dims();
  const int n = rho.side();
  ConicProgram prog;
  if (form == Form::Primal) {
    const int R = prog.add_hermitian_psd(n, "R");
    for (double sign : {-1.0, 1.0}) {
      MatrixExpr e(n);
      e.add(R, EntryMap::partial_transpose(ab, 1), sign)
          .add_constant(CMatrix::Identity(n, n));
      prog.add_matrix_psd(e, sign < 0 ? "I - R^TB" : "I + R^TB");
    }
    prog.set_objective(Sense::Maximize, LinearForm().add_trace(R, rho.data()));
    const conic::ConicSolution sol = conic::solve(prog, opts);
    BoundResult r = make_bound_result("e_w", sol, LogSign::Positive,
                                      seconds_since(start));
    if (cert) {
      cert->R = HermMat::hermitian(sol.matrix(R), ab);
      cert->X = HermMat();
      cert->value = r.value;
    }
    return r;
  }

  // X = rho + Z with Z >= 0, and X^TB = P - N splits the trace norm.
  const int Z = prog.add_hermitian_psd(n, "Z");
  const int P = prog.add_hermitian_psd(n, "P");
  const int N = prog.add_hermitian_psd(n, "N");
  MatrixExpr split(n);
  split.add(Z, EntryMap::partial_transpose(ab, 1))
      .add(P, EntryMap::identity(n), -1.0)
      .add(N, EntryMap::identity(n), 1.0)
      .add_constant(partial_transpose(rho, 1).data());
  prog.add_matrix_equality(split, "(rho+Z)^TB = P - N");
  prog.set_objective(Sense::Minimize, LinearForm()
                                          .add_identity_trace(P, n)
                                          .add_identity_trace(N, n));
  const conic::ConicSolution sol = conic::solve(prog, opts);
  BoundResult r = make_bound_result("e_w_dual", sol, LogSign::Positive,
                                    seconds_since(start));
  if (cert) {
    cert->R = HermMat();
    CMatrix x = rho.data() + sol.matrix(Z);
    cert->X = HermMat::hermitian(0.5 * (x + x.adjoint()), ab);
    cert->value = r.value;
  }
  return r;
}

DmaxResult d_max(const HermMat& rho, const HermMat& sigma) {
  if (rho.side() != sigma.side()) {
    throw invalid_argument("d_max: operators have different sides");
  }
  if (!rho.is_hermitian() || !sigma.is_hermitian()) {
    throw invalid_argument("d_max: operators must be Hermitian");
  }
  const EigenDecomposition es = eig_hermitian(sigma);
  const double top = std::max(es.values.cwiseAbs().maxCoeff(), 1.0);
  const double cut = 1e-12 * top;
  if (es.values(0) < -1e-9 * top) {
    throw invalid_argument("d_max: sigma is not PSD");
  }
  const int n = sigma.side();
  CMatrix inv_sqrt = CMatrix::Zero(n, n);
  CMatrix kernel = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto v = es.vectors.col(i);
    if (es.values(i) > cut) {
      inv_sqrt += (1.0 / std::sqrt(es.values(i))) * v * v.adjoint();
    } else {
      kernel += v * v.adjoint();
    }
  }
  const double rho_scale = std::max(rho.data().cwiseAbs().maxCoeff(), 1e-300);
  const double leak = (kernel * rho.data() * kernel).cwiseAbs().maxCoeff();
  if (leak > 1e-10 * rho_scale) {
    return {std::numeric_limits<double>::infinity(), false};
  }
  const CMatrix t = inv_sqrt * rho.data() * inv_sqrt;
  const double lam = max_eigenvalue(t);
  return {lam > 0.0 ? std::log2(lam) : -std::numeric_limits<double>::infinity(),
          true};
}

BoundResult q_theta(const Channel& ch, const conic::SolverOptions& opts) {
  const auto start = Clock::now();
  const ChoiMatrix j = choi(ch);
  const int da = j.d_in;
  const int db = j.d_out;
  const int n = da * db;
  const CMatrix jt = partial_transpose(j.mat, 1).data();
  ConicProgram prog;
  // P = [[rho0 (x) I, X], [X^dag, rho1 (x) I]] >= 0.
  const int P = prog.add_hermitian_psd(2 * n, "P");
  const int rho0 = prog.add_hermitian_psd(da, "rho0");
  const int rho1 = prog.add_hermitian_psd(da, "rho1");
  for (int i = 0; i < 2; ++i) {
    const int rho = i == 0 ? rho0 : rho1;
    prog.add_constraint(LinearForm().add_identity_trace(rho, da), Relation::Eq,
                        1.0, i == 0 ? "tr rho0 = 1" : "tr rho1 = 1");
    MatrixExpr diag(n);
    diag.add(P, EntryMap::principal_block(2 * n, i * n, n))
        .add(rho, EntryMap::kron_identity(da, db), -1.0);
    prog.add_matrix_equality(diag, i == 0 ? "P11 = rho0(x)I" : "P22 = rho1(x)I");
  }
  CMatrix c = CMatrix::Zero(2 * n, 2 * n);
  c.topRightCorner(n, n) = 0.5 * jt;
  c.bottomLeftCorner(n, n) = 0.5 * jt;
  prog.set_objective(Sense::Maximize, LinearForm().add_trace(P, c));
  const conic::ConicSolution sol = conic::solve(prog, opts);
  return make_bound_result("q_theta", sol, LogSign::Positive, seconds_since(start));
}

HermMat purified_output(const Channel& ch, const CMatrix& rho_a,
                        std::vector<std::string>* warnings) {
  const int da = ch.d_in();
  const int db = ch.d_out();
  if (rho_a.rows() != da || rho_a.cols() != da) {
    throw invalid_argument("purified_output: rho has the wrong side");
  }
  if (hermiticity_defect(rho_a) > kHermiticityTol) {
    throw invalid_argument("purified_output: rho is not Hermitian");
  }
  if (std::abs(rho_a.trace().real() - 1.0) > kStateTol) {
    throw invalid_argument("purified_output: rho must have unit trace");
  }
  const double lam = min_eigenvalue(rho_a);
  if (lam < -kStateTol) throw invalid_argument("purified_output: rho not PSD");
  if (lam <= 1e-12 && warnings) {
    warnings->push_back("purified_output: singular rho, square root taken on "
                        "its support");
  }
  const CMatrix root = kron(psd_power(rho_a, 0.5), CMatrix::Identity(db, db));
  const CMatrix out = root * choi(ch).mat.data() * root;
  return HermMat::hermitian(0.5 * (out + out.adjoint()), {da, db});
}

double strong_converse_error(int n, double rate, double q_gamma_value) {
  if (n < 1) throw invalid_argument("strong_converse_error: n must be >= 1");
  return std::max(0.0, 1.0 - std::exp2(n * (q_gamma_value - rate)));
}

}  // namespace qconverse
