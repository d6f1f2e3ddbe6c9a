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


#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "channels.hpp"
#include "depolarizing_lp.hpp"
#include "errors.hpp"
#include "oneshot.hpp"

namespace qconverse {
namespace {

// Dense two-phase tableau simplex with Bland's rule:
// min c.x  s.t.  A x <= b, x >= 0. Returns nullopt when infeasible.
std::optional<double> simplex_min(const RVector& c, const RMatrix& a,
                                  const RVector& b) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  // Columns: x (n), slacks (m), artificials (m), rhs.
  const int cols = n + 2 * m + 1;
  RMatrix t = RMatrix::Zero(m, cols);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    const double sgn = b(i) < 0 ? -1.0 : 1.0;
    t.row(i).head(n) = sgn * a.row(i);
    t(i, n + i) = sgn;
    t(i, n + m + i) = 1.0;
    t(i, cols - 1) = sgn * b(i);
    basis[i] = n + m + i;
  }
  auto pivot = [&](int r, int col) {
    t.row(r) /= t(r, col);
    for (int i = 0; i < m; ++i) {
      if (i != r && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(r);
    }
    basis[r] = col;
  };
  auto run = [&](const RVector& cost, int allowed) {
    for (int iter = 0; iter < 10000; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed && enter < 0; ++j) {
        double red = cost(j);
        for (int i = 0; i < m; ++i) red -= cost(basis[i]) * t(i, j);
        if (red < -1e-12) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t(i, enter) > 1e-12) {
          const double ratio = t(i, cols - 1) / t(i, enter);
          if (ratio < best - 1e-14 ||
              (std::abs(ratio - best) <= 1e-14 && basis[i] < basis[leave])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
    return false;
  };
  RVector phase1 = RVector::Zero(cols - 1);
  phase1.segment(n + m, m).setOnes();
  run(phase1, cols - 1);
  double infeas = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= n + m) infeas += t(i, cols - 1);
  }
  if (infeas > 1e-9) return std::nullopt;
  // Drive any zero-level artificial out of the basis.
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n + m) continue;
    for (int j = 0; j < n + m; ++j) {
      if (std::abs(t(i, j)) > 1e-12) {
        pivot(i, j);
        break;
      }
    }
  }
  RVector cost = RVector::Zero(cols - 1);
  cost.head(n) = c;
  if (!run(cost, n + m)) return std::nullopt;
  double v = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) v += c(basis[i]) * t(i, cols - 1);
  }
  return v;
}

// Builds the LPs directly from their displayed form over x = (m, eta[, s+, s-]).
enum class Lp { G, F, GHat };

double oracle(Lp kind, int n, double p, double eps, double m_hat = 0.0) {
  const RMatrix x = x_coeffs(n, 2);
  const RVector fw = fidelity_weights(n, p);
  const int k = n + 1;
  const int nv = kind == Lp::F ? 3 * k + 1 : k + 1;
  const int eta = k;
  std::vector<RVector> rows;
  std::vector<double> rhs;
  auto add = [&](const RVector& r, double b) {
    rows.push_back(r);
    rhs.push_back(b);
  };
  RVector r = RVector::Zero(nv);
  r.head(k) = -fw;
  add(r, -(1.0 - eps));
  for (int i = 0; i < k; ++i) {
    r.setZero();
    r(i) = 1.0;
    add(r, 1.0);
  }
  if (kind == Lp::F) {
    // s = s+ - s-, stored after eta.
    for (int i = 0; i < k; ++i) {
      r.setZero();
      r(i) = 1.0;
      r(eta + 1 + i) = 1.0;
      r(eta + 1 + k + i) = -1.0;
      r(eta) = -1.0;
      add(r, 0.0);
    }
    for (int c = 0; c < k; ++c) {
      r.setZero();
      for (int i = 0; i < k; ++i) {
        r(eta + 1 + i) = -x(i, c);
        r(eta + 1 + k + i) = x(i, c);
      }
      add(r, 0.0);
    }
  } else {
    for (int c = 0; c < k; ++c) {
      for (double sgn : {1.0, -1.0}) {
        r.setZero();
        for (int i = 0; i < k; ++i) r(i) = sgn * x(i, c);
        r(eta) = -1.0;
        add(r, 0.0);
      }
    }
    if (kind == Lp::GHat) {
      r.setZero();
      for (int i = 0; i <= n; ++i) {
        r(i) = -std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                         std::lgamma(n - i + 1.0)) *
               std::pow(3.0, n - i) / std::pow(4.0, n);
      }
      add(r, -m_hat * m_hat);
    }
  }
  RMatrix a(static_cast<Eigen::Index>(rows.size()), nv);
  RVector b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = rows[i];
    b(static_cast<Eigen::Index>(i)) = rhs[i];
  }
  RVector cost = RVector::Zero(nv);
  cost(eta) = 1.0;
  const auto v = simplex_min(cost, a, b);
  return v ? *v : std::nan("");
}

// Phi (normalized maximally entangled), its complement, and P_+/P_- on two
// qubits.
CMatrix phi2() { return maximally_entangled(2); }
CMatrix phi2_perp() { return CMatrix::Identity(4, 4) - phi2(); }
CMatrix sym() { return 0.5 * (CMatrix::Identity(4, 4) + swap_operator(2)); }
CMatrix antisym() { return 0.5 * (CMatrix::Identity(4, 4) - swap_operator(2)); }

// Sum over placements of `count` copies of `a` among n pair slots, the rest
// filled with `b`. Pair slots are ordered (A1 B1)(A2 B2)...
CMatrix pattern_sum(int n, int count, const CMatrix& a, const CMatrix& b) {
  const int side = 1 << (2 * n);
  CMatrix total = CMatrix::Zero(side, side);
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != count) continue;
    CMatrix t = CMatrix::Identity(1, 1);
    for (int j = 0; j < n; ++j) t = kron(t, (mask >> j) & 1 ? a : b);
    total += t;
  }
  return total;
}

// Pair-ordered P_i^n(Phi, Phi_perp) with every B factor transposed.
HermMat transposed_pattern(int n, int i) {
  HermMat h = HermMat::hermitian(pattern_sum(n, i, phi2(), phi2_perp()),
                                 Dims(static_cast<std::size_t>(2 * n), 2));
  for (int j = 0; j < n; ++j) h = partial_transpose(h, 2 * j + 1);
  return h;
}

double binom(int n, int k) {
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(n - k + 1.0)));
}

TEST(XCoeffs, SingleUseValues) {
  const RMatrix x = x_coeffs(1, 2);
  EXPECT_DOUBLE_EQ(x(0, 0), 1.5);
  EXPECT_DOUBLE_EQ(x(1, 0), -0.5);
  EXPECT_DOUBLE_EQ(x(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(x(0, 1), 0.5);
}

TEST(XCoeffs, MatchBruteForcePartialTranspose) {
  for (int n = 1; n <= 3; ++n) {
    const RMatrix x = x_coeffs(n, 2);
    for (int i = 0; i <= n; ++i) {
      const HermMat pt = transposed_pattern(n, i);
      CMatrix rebuilt = CMatrix::Zero(pt.side(), pt.side());
      for (int k = 0; k <= n; ++k) {
        const CMatrix q = pattern_sum(n, k, sym(), antisym());
        const double brute = (pt.data() * q).trace().real() / q.trace().real();
        EXPECT_NEAR(x(i, k), brute, 1e-12) << "n=" << n << " i=" << i << " k=" << k;
        rebuilt += brute * q;
      }
      // The transposed pattern lies in the span of the P_k^n(P_+, P_-).
      EXPECT_LT((rebuilt - pt.data()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(XCoeffs, TraceIdentity) {
  for (int n : {1, 4, 10, 30}) {
    const RMatrix x = x_coeffs(n, 2);
    for (int i = 0; i <= n; ++i) {
      // Terms reach 1e8 times the total at n = 30, so the check accumulates
      // in extended precision.
      long double lhs = 0.0L;
      for (int k = 0; k <= n; ++k) {
        lhs += static_cast<long double>(x(i, k)) * binom(n, k) *
               std::pow(3.0L, k) * std::pow(1.0L, n - k);
      }
      const long double rhs = binom(n, i) * std::pow(3.0L, n - i);
      EXPECT_NEAR(static_cast<double>(lhs / rhs), 1.0, 1e-9) << "n=" << n << " i=" << i;
    }
  }
  // d = 3 exercises the general formula.
  const RMatrix x3 = x_coeffs(2, 3);
  for (int i = 0; i <= 2; ++i) {
    double lhs = 0.0;
    for (int k = 0; k <= 2; ++k) {
      lhs += x3(i, k) * binom(2, k) * std::pow(6.0, k) * std::pow(3.0, 2 - k);
    }
    EXPECT_NEAR(lhs, binom(2, i) * std::pow(8.0, 2 - i), 1e-9);
  }
}

TEST(FidelityWeights, SumToOne) {
  for (int n : {1, 7, 30}) {
    for (double p : {0.0, 0.2, 0.5, 1.0}) {
      EXPECT_NEAR(fidelity_weights(n, p).sum(), 1.0, 1e-12);
    }
  }
}

TEST(DepolLp, NoiselessSingleUse) {
  // eps -> 0 forces m_1 = 1.
  const BoundResult g = lp_g(1, 0.0, 1e-10);
  ASSERT_TRUE(g.ok());
  EXPECT_NEAR(g.log_value, 1.0, 1e-6);
}

TEST(DepolLp, MatchSimplexOracle) {
  for (int n : {1, 2, 5, 8}) {
    for (double p : {0.05, 0.2}) {
      for (double eps : {0.004, 0.05}) {
        EXPECT_NEAR(lp_g(n, p, eps).value, oracle(Lp::G, n, p, eps), 1e-7)
            << n << " " << p << " " << eps;
        EXPECT_NEAR(lp_f(n, p, eps).value, oracle(Lp::F, n, p, eps), 1e-7)
            << n << " " << p << " " << eps;
        EXPECT_NEAR(lp_g_hat(n, p, eps, 0.3).value,
                    oracle(Lp::GHat, n, p, eps, 0.3), 1e-7)
            << n << " " << p << " " << eps;
      }
    }
  }
}

TEST(DepolLp, MatchFullSdpSingleUse) {
  for (double p : {0.0, 0.1, 0.3}) {
    const Channel ch = depolarizing(p);
    EXPECT_NEAR(lp_g(1, p, 0.01).value, bound_g(ch, 0.01).value, 1e-6) << p;
    EXPECT_NEAR(lp_f(1, p, 0.01).value, bound_f(ch, 0.01).value, 1e-6) << p;
  }
}

TEST(DepolLp, ReconstructionIsFeasibleForFullSdp) {
  const double p = 0.2, eps = 0.05;
  for (int n = 1; n <= 3; ++n) {
    DepolLpSolution s;
    const BoundResult r = lp_g(n, p, eps, {}, &s);
    ASSERT_TRUE(r.ok());
    const int dn = 1 << n;
    CMatrix w_pairs = CMatrix::Zero(dn * dn, dn * dn);
    for (int i = 0; i <= n; ++i) {
      w_pairs += (s.m(i) / dn) * pattern_sum(n, i, phi2(), phi2_perp());
    }
    // Reorder (A1 B1)(A2 B2)... into A1..An B1..Bn to meet the Choi layout.
    std::vector<std::size_t> order;
    for (int j = 0; j < n; ++j) order.push_back(2 * j);
    for (int j = 0; j < n; ++j) order.push_back(2 * j + 1);
    const HermMat w_flat = permute_factors(
        HermMat::hermitian(w_pairs, Dims(static_cast<std::size_t>(2 * n), 2)), order);
    const HermMat w = HermMat::hermitian(w_flat.data(), {dn, dn});
    const ChoiMatrix j = choi(tensor_power(depolarizing(p), n));
    const CMatrix id = CMatrix::Identity(dn * dn, dn * dn);
    const double tol = 1e-7;
    EXPECT_GE(min_eigenvalue(w.data()), -tol);
    EXPECT_GE(min_eigenvalue(id / dn - w.data()), -tol);
    EXPECT_GE((j.mat.data() * w.data()).trace().real(), 1.0 - eps - tol);
    const CMatrix wtb = partial_transpose(w, 1).data();
    const double s_scale = s.eta / dn;
    EXPECT_GE(min_eigenvalue(s_scale * id - wtb), -tol) << n;
    EXPECT_GE(min_eigenvalue(s_scale * id + wtb), -tol) << n;
    // tr S = d^n * eta / d^n.
    EXPECT_NEAR(s_scale * dn, r.value, 1e-6);
  }
}

TEST(DepolLp, ChainAndMonotonicity) {
  for (int n : {1, 6, 17}) {
    const double p = 0.2;
    EXPECT_LE(lp_f(n, p, 0.004).value, lp_g(n, p, 0.004).value + 1e-7);
    double prev = 0.0;
    for (double m_hat : {0.0, 0.1, 0.3, 0.5}) {
      const double v = lp_g_hat(n, p, 0.004, m_hat).value;
      EXPECT_GE(v, prev - 1e-9) << n << " " << m_hat;
      prev = v;
    }
    EXPECT_NEAR(lp_g_hat(n, p, 0.004, 0.0).value, lp_g(n, p, 0.004).value, 1e-7);
    const auto seq = lp_g_hat_iterate(n, p, 0.004, 5);
    ASSERT_EQ(seq.size(), 5u);
    for (std::size_t i = 1; i < seq.size(); ++i) {
      EXPECT_GE(seq[i].value, seq[i - 1].value - 1e-9);
    }
    EXPECT_EQ(seq.front().name, "lp_g_hat_1");
  }
}

TEST(DepolLp, NoiselessIterationIsFixed) {
  for (int n : {1, 4, 9}) {
    const auto seq = lp_g_hat_iterate(n, 0.0, 0.01, 5);
    for (const BoundResult& r : seq) EXPECT_NEAR(r.value, seq[0].value, 1e-7) << n;
  }
}

// A larger tolerance enlarges the feasible set, so eta can only drop and
// -log2 eta can only rise.
TEST(DepolLp, NegLogNonDecreasingInEps) {
  for (int n : {3, 17}) {
    double prev_f = -std::numeric_limits<double>::infinity();
    double prev_gh = prev_f;
    for (double eps : {0.001, 0.004, 0.01, 0.05, 0.2}) {
      const double f = lp_f(n, 0.2, eps).log_value;
      const double gh = lp_g_hat_iterate(n, 0.2, eps, 5).back().log_value;
      EXPECT_GE(f, prev_f - 1e-7);
      EXPECT_GE(gh, prev_gh - 1e-7);
      prev_f = f;
      prev_gh = gh;
    }
  }
}

// Reference values from HiGHS (dual simplex) on the same LP, built from the
// exact integer coefficients. These sizes break a double-precision IPM.
TEST(DepolLp, LargeBlocklengthMatchesExternalSolver) {
  const std::pair<int, double> refs[] = {{20, 0.4221854537},
                                         {29, 0.2058083193538},
                                         {30, 0.2029403403}};
  for (const auto& [n, ref] : refs) {
    const BoundResult g = lp_g(n, 0.2, 0.004);
    ASSERT_EQ(g.status, conic::SolveStatus::Optimal) << n;
    EXPECT_NEAR(g.value, ref, 1e-7) << n;
  }
}

TEST(DepolLp, RejectsBadArguments) {
  EXPECT_THROW(lp_g(0, 0.2, 0.01), Error);
  EXPECT_THROW(lp_g(2, 1.2, 0.01), Error);
  EXPECT_THROW(lp_f(2, 0.2, 0.0), Error);
  EXPECT_THROW(lp_g_hat(2, 0.2, 0.01, 2.0), Error);
  EXPECT_THROW(lp_g_hat_iterate(2, 0.2, 0.01, 0), Error);
}

}  // namespace
}  // namespace qconverse
