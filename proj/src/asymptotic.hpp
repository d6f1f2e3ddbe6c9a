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


// Strong-converse quantities: Gamma (primal and dual), the entanglement
// measure W of a bipartite operator, max-relative entropy, and the partial
// transposition bound.

#ifndef QCONVERSE_ASYMPTOTIC_HPP_
#define QCONVERSE_ASYMPTOTIC_HPP_

#include <string>
#include <vector>

#include "bound_result.hpp"
#include "channels.hpp"
#include "conic.hpp"

namespace qconverse {

enum class Form { Primal, Dual };

const char* to_string(Form form);

/// Both sides of the Gamma certificate. The primal solve fills R and rho and
/// reads V, Y off the multipliers of its two operator inequalities; the dual
/// solve fills V, Y and mu and leaves R, rho empty.
struct GammaCertificate {
  HermMat R;
  HermMat rho;
  HermMat V;
  HermMat Y;
  double mu = 0.0;
  double value = 0.0;
};

/// value = Gamma(N), log_value = Q_Gamma = log2 Gamma.
BoundResult q_gamma(const Channel& ch, Form form,
                    const conic::SolverOptions& opts = {},
                    GammaCertificate* cert = nullptr);

struct EwCertificate {
  HermMat R;  // primal witness
  HermMat X;  // dual operator X >= rho
  double value = 0.0;
};

/// value = W(rho), log_value = E_W = log2 W. `rho` must carry two tensor
/// factors {dA, dB}; PSD up to 1e-9 and trace <= 1 + 1e-9.
BoundResult e_w(const HermMat& rho, Form form,
                const conic::SolverOptions& opts = {},
                EwCertificate* cert = nullptr);

struct DmaxResult {
  double value = 0.0;     // log2 min{mu : rho <= mu sigma}
  bool support_ok = true; // false: supp rho is not inside supp sigma, value = +inf
};

/// Spectral evaluation on the support of sigma.
DmaxResult d_max(const HermMat& rho, const HermMat& sigma);

/// value = ||N o T||_diamond, log_value = Q_Theta.
BoundResult q_theta(const Channel& ch, const conic::SolverOptions& opts = {});

/// (rho^{1/2} (x) I) J (rho^{1/2} (x) I) on A (x) B. A singular rho uses the
/// square root on its support and appends a warning.
HermMat purified_output(const Channel& ch, const CMatrix& rho_a,
                        std::vector<std::string>* warnings = nullptr);

/// max(0, 1 - 2^{n (q_gamma - rate)}): lower bound on the coding error at
/// `rate` over n uses.
double strong_converse_error(int n, double rate, double q_gamma_value);

}  // namespace qconverse

#endif  // QCONVERSE_ASYMPTOTIC_HPP_
