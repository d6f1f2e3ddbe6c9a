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


// Linear programs for the one-shot converse bounds of n uses of the qubit
// depolarizing channel, obtained from the SDPs by twirling onto the span of
// P_i^n(Phi, Phi_perp).
//
// Variables: m_i = w_i d^n where W = sum_i w_i P_i^n(Phi, Phi_perp), and
// eta = s d^n where S = s I.

#ifndef QCONVERSE_DEPOLARIZING_LP_HPP_
#define QCONVERSE_DEPOLARIZING_LP_HPP_

#include <vector>

#include "bound_result.hpp"
#include "conic.hpp"
#include "matops.hpp"

namespace qconverse {

/// (n+1) x (n+1) matrix with entry (i, k) = x_{i,k}: the weight of
/// P_k^n(P_+, P_-) in P_i^n(Phi^TB, Phi_perp^TB). Summed in exact integer
/// arithmetic before the final division by d^n.
RMatrix x_coeffs(int n, int d = 2);

/// binom(n, i) (1-p)^i p^(n-i), i = 0..n.
RVector fidelity_weights(int n, double p);

struct DepolLpSolution {
  RVector m;
  RVector s;  // lp_f only
  double eta = 0.0;
};

BoundResult lp_g(int n, double p, double eps,
                 const conic::SolverOptions& opts = {},
                 DepolLpSolution* sol = nullptr);
BoundResult lp_f(int n, double p, double eps,
                 const conic::SolverOptions& opts = {},
                 DepolLpSolution* sol = nullptr);
/// m_hat in [0, 1]. m_hat = 0 leaves only the implied t >= 0 and serves as
/// the g_tilde analogue.
BoundResult lp_g_hat(int n, double p, double eps, double m_hat,
                     const conic::SolverOptions& opts = {},
                     DepolLpSolution* sol = nullptr);

/// m_hat_1 = lp_g, m_hat_{i+1} = g_hat_i. Throws SolverFailure with the round
/// index on a non-optimal round.
std::vector<BoundResult> lp_g_hat_iterate(int n, double p, double eps,
                                          int rounds,
                                          const conic::SolverOptions& opts = {});

}  // namespace qconverse

#endif  // QCONVERSE_DEPOLARIZING_LP_HPP_
