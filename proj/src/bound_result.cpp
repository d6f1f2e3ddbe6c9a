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


#include "bound_result.hpp"

#include <cmath>

#include <json.hpp>

namespace qconverse {
namespace {

// JSON has no NaN or infinity; those become null.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

BoundResult make_bound_result(std::string name, const conic::ConicSolution& sol,
                              LogSign sign, double wall_seconds) {
  BoundResult r;
  r.name = std::move(name);
  r.status = sol.status;
  r.primal_value = sol.primal_value;
  r.dual_value = sol.dual_value;
  r.gap = sol.gap;
  r.iterations = sol.iterations;
  r.wall_seconds = wall_seconds;
  if (sol.status == conic::SolveStatus::Optimal) {
    r.value = 0.5 * (sol.primal_value + sol.dual_value);
    const double l = r.value > 0.0 ? std::log2(r.value)
                                   : -std::numeric_limits<double>::infinity();
    r.log_value = sign == LogSign::Negative ? -l : l;
  } else {
    r.warnings.push_back(std::string("solver status ") +
                         conic::to_string(sol.status));
  }
  return r;
}

std::string to_json(const BoundResult& r, int indent) {
  nlohmann::json doc;
  doc["name"] = r.name;
  doc["value"] = number(r.value);
  doc["log_value"] = number(r.log_value);
  doc["status"] = conic::to_string(r.status);
  doc["primal_value"] = number(r.primal_value);
  doc["dual_value"] = number(r.dual_value);
  doc["gap"] = number(r.gap);
  doc["iterations"] = r.iterations;
  doc["wall_seconds"] = r.wall_seconds;
  doc["warnings"] = r.warnings;
  return doc.dump(indent);
}

}  // namespace qconverse
