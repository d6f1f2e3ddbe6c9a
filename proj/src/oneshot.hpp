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


// One-shot epsilon-error quantum capacity: code fidelity SDPs, the exact
// capacity by search over the code size, and the converse family f <= g <=
// g_tilde <= g_hat.
//
// Error tolerances live in (0, 1). eps = 0 is accepted and replaced by 1e-12,
// with a warning on the result.

#ifndef QCONVERSE_ONESHOT_HPP_
#define QCONVERSE_ONESHOT_HPP_

#include <vector>

#include "bound_result.hpp"
#include "channels.hpp"
#include "conic.hpp"

namespace qconverse {

enum class CodeClass { Ppt, NsPpt };

const char* to_string(CodeClass cls);

/// Optimal variables of one converse program. Blocks the program does not
/// have are left empty; t is only meaningful for g_tilde and g_hat.
struct OneShotCertificate {
  HermMat W;
  HermMat rho;
  HermMat S;
  HermMat Theta;
  double t = 0.0;
  double value = 0.0;
};

struct FidelityResult {
  int k = 1;
  double fidelity = 0.0;
  CodeClass code_class = CodeClass::Ppt;
  conic::SolveStatus status = conic::SolveStatus::MaxIter;
};

struct CapacityResult {
  int k_star = 1;
  double log_value = 0.0;  // log2 k_star
  std::vector<FidelityResult> trials;
};

enum class OneShotBound { F, G, GTilde, GHat };

const char* to_string(OneShotBound bound);

/// Acceptance slack on the fidelity threshold used by oneshot_capacity.
inline constexpr double kCapacityTol = 1e-9;

FidelityResult fidelity_sdp(const Channel& ch, int k, CodeClass cls,
                            const conic::SolverOptions& opts = {});

/// log2 of the largest k in [1, d_in] with F(N, k) >= 1 - eps - kCapacityTol.
/// k = 1 always qualifies. The search ascends from k = 2 and stops at the
/// first failure unless `exhaustive` is set, in which case every k <= d_in is
/// tried.
CapacityResult oneshot_capacity(const Channel& ch, double eps, CodeClass cls,
                                const conic::SolverOptions& opts = {},
                                bool exhaustive = false);

/// The converse program as solved by the bound functions; m_hat is used by
/// g_hat only. Useful for dumping.
conic::ConicProgram oneshot_program(const ChoiMatrix& j, OneShotBound bound,
                                    double eps, double m_hat = 0.0);

BoundResult bound_f(const Channel& ch, double eps,
                    const conic::SolverOptions& opts = {},
                    OneShotCertificate* cert = nullptr);
BoundResult bound_g(const Channel& ch, double eps,
                    const conic::SolverOptions& opts = {},
                    OneShotCertificate* cert = nullptr);
BoundResult bound_g_tilde(const Channel& ch, double eps,
                          const conic::SolverOptions& opts = {},
                          OneShotCertificate* cert = nullptr);
/// m_hat in [0, 1]; m_hat = 0 makes the extra constraint vacuous.
BoundResult bound_g_hat(const Channel& ch, double eps, double m_hat,
                        const conic::SolverOptions& opts = {},
                        OneShotCertificate* cert = nullptr);

/// [g_hat_1, ..., g_hat_rounds] with m_hat_1 = g and m_hat_{i+1} = g_hat_i.
/// Throws SolverFailure naming the round when a round does not reach
/// optimality.
std::vector<BoundResult> g_hat_iterate(const Channel& ch, double eps,
                                       int rounds,
                                       const conic::SolverOptions& opts = {});

}  // namespace qconverse

#endif  // QCONVERSE_ONESHOT_HPP_
