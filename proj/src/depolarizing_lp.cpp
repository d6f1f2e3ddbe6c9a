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


#include "depolarizing_lp.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace qconverse {
namespace {

using conic::ConicProgram;
using conic::LinearForm;
using conic::Relation;
using conic::Sense;
using Clock = std::chrono::steady_clock;

using i128 = __int128;

i128 binom_int(int n, int k) {
  if (k < 0 || k > n) return 0;
  i128 r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

i128 ipow(i128 b, int e) {
  i128 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long double binom_ld(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  if (n <= 120) return static_cast<long double>(binom_int(n, k));
  return std::exp(std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) -
                  std::lgamma(n - k + 1.0L));
}

void check_args(int n, double p, double eps) {
  if (n < 1) throw invalid_argument("depolarizing LP: n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw invalid_argument("depolarizing LP: p must lie in [0, 1]");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw invalid_argument("depolarizing LP: eps must lie in (0, 1)");
  }
}

enum class Kind { G, F, GHat };

BoundResult solve_lp(Kind kind, int n, double p, double eps, double m_hat,
                     const conic::SolverOptions& opts, DepolLpSolution* out) {
  const auto start = Clock::now();
  check_args(n, p, eps);
  const RMatrix x = x_coeffs(n, 2);
  const RVector fw = fidelity_weights(n, p);
  ConicProgram prog;
  const int m = prog.add_nonneg(n + 1, "m");
  const int eta = prog.add_nonneg(1, "eta");
  const int s = kind == Kind::F ? prog.add_free(n + 1, "s") : -1;

  LinearForm fid;
  for (int i = 0; i <= n; ++i) fid.add_scalar(m, i, fw(i));
  prog.add_constraint(std::move(fid), Relation::Ge, 1.0 - eps, "fidelity");
  for (int i = 0; i <= n; ++i) {
    prog.add_constraint(LinearForm().add_scalar(m, i, 1.0), Relation::Le, 1.0,
                        "m_" + std::to_string(i) + " <= 1");
  }
  if (kind == Kind::F) {
    for (int i = 0; i <= n; ++i) {
      prog.add_constraint(LinearForm()
                              .add_scalar(m, i, 1.0)
                              .add_scalar(s, i, 1.0)
                              .add_scalar(eta, 0, -1.0),
                          Relation::Le, 0.0, "m_i + s_i <= eta");
    }
    for (int k = 0; k <= n; ++k) {
      LinearForm row;
      for (int i = 0; i <= n; ++i) row.add_scalar(s, i, x(i, k));
      prog.add_constraint(std::move(row), Relation::Ge, 0.0,
                          "sum_i x_ik s_i >= 0");
    }
  } else {
    for (double sign : {-1.0, 1.0}) {
      for (int k = 0; k <= n; ++k) {
        LinearForm row;
        row.add_scalar(eta, 0, 1.0);
        for (int i = 0; i <= n; ++i) row.add_scalar(m, i, sign * x(i, k));
        prog.add_constraint(std::move(row), Relation::Ge, 0.0,
                            sign < 0 ? "eta - t_k >= 0" : "eta + t_k >= 0");
      }
    }
  }
  if (kind == Kind::GHat) {
    // tr_A W = t I with t = d^{-2n} sum_i binom(n,i) (d^2-1)^{n-i} m_i.
    LinearForm t;
    for (int i = 0; i <= n; ++i) {
      const long double c = binom_ld(n, i) * std::pow(3.0L, n - i) /
                            std::pow(4.0L, n);
      t.add_scalar(m, i, static_cast<double>(c));
    }
    prog.add_constraint(std::move(t), Relation::Ge, m_hat * m_hat,
                        "t >= m_hat^2");
  }
  prog.set_objective(Sense::Minimize, LinearForm().add_scalar(eta, 0, 1.0));
  // The sector rows cancel terms of size ~3^n down to O(eta); in double the
  // Schur complement stops being positive definite around n = 28.
  conic::SolverOptions lp_opts = opts;
  lp_opts.precision = conic::Precision::Extended;
  const conic::ConicSolution sol = conic::solve(prog, lp_opts);
  const char* name = kind == Kind::G ? "lp_g" : kind == Kind::F ? "lp_f" : "lp_g_hat";
  BoundResult r = make_bound_result(name, sol, LogSign::Negative,
                                    std::chrono::duration<double>(Clock::now() - start).count());
  if (out) {
    out->m = sol.vectors[m];
    out->eta = sol.scalar(eta);
    out->s = s >= 0 ? sol.vectors[s] : RVector();
  }
  return r;
}

}  // namespace

RMatrix x_coeffs(int n, int d) {
  if (n < 1) throw invalid_argument("x_coeffs: n must be >= 1");
  if (d < 2) throw invalid_argument("x_coeffs: d must be >= 2");
  // Largest term is below binom(n, n/2)^2 (d+1)^n; stay exact while that fits.
  const double log2_bound = 2.0 * std::log2(static_cast<double>(binom_ld(n, n / 2))) +
                            n * std::log2(d + 1.0) + 2.0;
  const bool exact = log2_bound < 120.0;
  RMatrix x(n + 1, n + 1);
  const long double scale = std::pow(static_cast<long double>(d), -n);
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k <= n; ++k) {
      const int lo = std::max(0, i + k - n);
      const int hi = std::min(i, k);
      if (exact) {
        i128 acc = 0;
        for (int j = lo; j <= hi; ++j) {
          i128 term = binom_int(k, j) * binom_int(n - k, i - j) *
                      ipow(d - 1, k - j) * ipow(d + 1, n - k + j - i);
          acc += ((i - j) % 2 == 0) ? term : -term;
        }
        x(i, k) = static_cast<double>(static_cast<long double>(acc) * scale);
      } else {
        long double acc = 0.0L;
        for (int j = lo; j <= hi; ++j) {
          const long double term = binom_ld(k, j) * binom_ld(n - k, i - j) *
                                   std::pow(static_cast<long double>(d - 1), k - j) *
                                   std::pow(static_cast<long double>(d + 1), n - k + j - i);
          acc += ((i - j) % 2 == 0) ? term : -term;
        }
        x(i, k) = static_cast<double>(acc * scale);
      }
    }
  }
  return x;
}

RVector fidelity_weights(int n, double p) {
  if (n < 0) throw invalid_argument("fidelity_weights: n must be >= 0");
  RVector w(n + 1);
  for (int i = 0; i <= n; ++i) {
    w(i) = static_cast<double>(binom_ld(n, i) *
                               std::pow(static_cast<long double>(1.0 - p), i) *
                               std::pow(static_cast<long double>(p), n - i));
  }
  return w;
}

BoundResult lp_g(int n, double p, double eps, const conic::SolverOptions& opts,
                 DepolLpSolution* sol) {
  return solve_lp(Kind::G, n, p, eps, 0.0, opts, sol);
}

BoundResult lp_f(int n, double p, double eps, const conic::SolverOptions& opts,
                 DepolLpSolution* sol) {
  return solve_lp(Kind::F, n, p, eps, 0.0, opts, sol);
}

BoundResult lp_g_hat(int n, double p, double eps, double m_hat,
                     const conic::SolverOptions& opts, DepolLpSolution* sol) {
  if (!(m_hat >= 0.0 && m_hat <= 1.0)) {
    throw invalid_argument("lp_g_hat: m_hat must lie in [0, 1]");
  }
  return solve_lp(Kind::GHat, n, p, eps, m_hat, opts, sol);
}

std::vector<BoundResult> lp_g_hat_iterate(int n, double p, double eps,
                                          int rounds,
                                          const conic::SolverOptions& opts) {
  if (rounds < 1) throw invalid_argument("lp_g_hat_iterate: rounds must be >= 1");
  const BoundResult g = lp_g(n, p, eps, opts);
  if (!g.ok()) {
    throw Error(ErrorCode::SolverFailure,
                std::string("lp_g_hat_iterate: initial lp_g ended with status ") +
                    conic::to_string(g.status));
  }
  std::vector<BoundResult> out;
  double m_hat = std::min(g.value, 1.0);
  for (int i = 1; i <= rounds; ++i) {
    BoundResult r = lp_g_hat(n, p, eps, m_hat, opts);
    if (!r.ok()) {
      throw Error(ErrorCode::SolverFailure,
                  "lp_g_hat_iterate: round " + std::to_string(i) +
                      " ended with status " + conic::to_string(r.status));
    }
    r.name = "lp_g_hat_" + std::to_string(i);
    m_hat = std::min(r.value, 1.0);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qconverse
