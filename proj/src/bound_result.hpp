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


#ifndef QCONVERSE_BOUND_RESULT_HPP_
#define QCONVERSE_BOUND_RESULT_HPP_

#include <limits>
#include <string>
#include <vector>

#include "conic.hpp"

namespace qconverse {

/// Outcome of one bound evaluation.
///
/// `value` is the optimum of the program (f, g, Gamma, ...), estimated as the
/// midpoint of the final primal and dual objectives; both stay available, and
/// the optimum lies within gap/2 of the midpoint up to residuals. `log_value`
/// is the capacity-domain number in qubits: -log2(value) for one-shot bounds
/// and log2(value) for the asymptotic ones.
struct BoundResult {
  std::string name;
  double value = std::numeric_limits<double>::quiet_NaN();
  double log_value = std::numeric_limits<double>::quiet_NaN();
  conic::SolveStatus status = conic::SolveStatus::MaxIter;
  double primal_value = std::numeric_limits<double>::quiet_NaN();
  double dual_value = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  double wall_seconds = 0.0;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return status == conic::SolveStatus::Optimal; }
};

enum class LogSign { Negative, Positive };

/// Fills a BoundResult from a solver run. Non-optimal runs keep the solver
/// numbers but leave value and log_value as NaN.
BoundResult make_bound_result(std::string name, const conic::ConicSolution& sol,
                              LogSign sign, double wall_seconds);

std::string to_json(const BoundResult& r, int indent = 2);

}  // namespace qconverse

#endif  // QCONVERSE_BOUND_RESULT_HPP_
