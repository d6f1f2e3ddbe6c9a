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

#ifndef QCONVERSE_CHANNELS_HPP_
#define QCONVERSE_CHANNELS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "matops.hpp"

namespace qconverse {

inline constexpr double kTraceTol = 1e-10;

/// CPTP map given by Kraus operators K_i : C^{d_in} -> C^{d_out}.
class Channel {
 public:
  /// Throws InvalidArgument on shape mismatch and InvariantViolation when
  /// sum_i K_i^dag K_i deviates from the identity by more than kTraceTol.
  Channel(std::vector<CMatrix> kraus, int d_in, int d_out,
          std::string label = {});

  const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }
  int d_in() const noexcept { return d_in_; }
  int d_out() const noexcept { return d_out_; }
  const std::string& label() const noexcept { return label_; }

  /// max entry of |sum_i K_i^dag K_i - I|.
  double tp_defect() const;

 private:
  std::vector<CMatrix> kraus_;
  int d_in_;
  int d_out_;
  std::string label_;
};

/// Unnormalized Choi matrix J = sum_ij |i><j| (x) N(|i><j|), dims {d_in, d_out},
/// trace d_in.
struct ChoiMatrix {
  HermMat mat;
  int d_in = 0;
  int d_out = 0;
  std::string source;
};

ChoiMatrix choi(const Channel& ch);

/// ch1 (x) ch2 acting on A1 A2 -> B1 B2. Kraus set is all pairwise products.
Channel tensor(const Channel& ch1, const Channel& ch2);
Channel tensor_power(const Channel& ch, int n);

Channel identity_channel(int d);
Channel amplitude_damping(double r);
Channel depolarizing(double p);
/// Qutrit-to-qubit channel with E0 = |0><0| + sqrt(r)|1><1| and
/// E1 = sqrt(1-r)|0><1| + |1><2|, for r in [0, 0.5].
Channel channel_nr(double r);

/// Channel from a Haar-random isometry V: A -> B (x) E, with Kraus operators
/// given by the environment slices of V. d_env is raised to the smallest value
/// with d_out * d_env >= d_in if needed. Deterministic for a fixed seed on a
/// given build.
Channel random_channel(int d_in, int d_out, int d_env, std::uint64_t seed);

/// Random density matrix of full rank, trace one, drawn from the
/// Hilbert-Schmidt ensemble.
CMatrix random_density_matrix(int d, std::uint64_t seed);

/// JSON document {"d_in", "d_out", "kraus": [matrix...]} where every matrix
/// is a list of rows and every entry a [re, im] pair.
std::string channel_to_json(const Channel& ch);
/// Throws ParseError for malformed documents; invariant failures surface as
/// InvariantViolation.
Channel channel_from_json(std::string_view text);

}  // namespace qconverse

#endif  // QCONVERSE_CHANNELS_HPP_
