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

#ifndef QCONVERSE_MATOPS_HPP_
#define QCONVERSE_MATOPS_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qconverse {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Dims = std::vector<int>;

/// Relative tolerance used by the hermiticity check: max |M - M^dag| must not
/// exceed this times max |M|.
inline constexpr double kHermiticityTol = 1e-12;

/// Dense complex operator on a tensor product of spaces.
///
/// Composite indices are row-major with the first factor most significant, so
/// for dims {dA, dB} the basis vector |a b> sits at index a * dB + b. Every
/// module in the library relies on this convention.
class HermMat {
 public:
  HermMat() = default;

  /// Wraps `data`. When `hermitian` is true the hermiticity invariant is
  /// checked and an InvariantViolation is thrown if it fails.
  HermMat(CMatrix data, Dims dims, bool hermitian);

  static HermMat hermitian(CMatrix data, Dims dims) {
    return HermMat(std::move(data), std::move(dims), true);
  }
  static HermMat general(CMatrix data, Dims dims) {
    return HermMat(std::move(data), std::move(dims), false);
  }
  /// Single-factor convenience overloads.
  static HermMat hermitian(CMatrix data);
  static HermMat general(CMatrix data);
  static HermMat identity(Dims dims);

  const CMatrix& data() const noexcept { return data_; }
  const Dims& dims() const noexcept { return dims_; }
  bool is_hermitian() const noexcept { return hermitian_; }
  int side() const noexcept { return static_cast<int>(data_.rows()); }
  cplx trace() const { return data_.trace(); }

 private:
  CMatrix data_;
  Dims dims_;
  bool hermitian_ = false;
};

/// max |M - M^dag| / max |M|; zero for the zero matrix.
double hermiticity_defect(const CMatrix& m);

HermMat kron(const HermMat& a, const HermMat& b);
/// Plain Kronecker product of possibly rectangular matrices.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Traces out tensor factor `factor`. Throws InvalidArgument when out of range.
HermMat partial_trace(const HermMat& m, std::size_t factor);

/// Transposes tensor factor `factor`: (|ij><kl|)^T_B = |il><kj| for factor 1
/// of a bipartite operator. Bit-exact involution.
HermMat partial_transpose(const HermMat& m, std::size_t factor);

/// Reorders tensor factors: factor j of the result is factor order[j] of m.
HermMat permute_factors(const HermMat& m, std::span<const std::size_t> order);

/// Sum of singular values (sum of |eigenvalues| for Hermitian input).
double trace_norm(const HermMat& m);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // columns are eigenvectors
};

/// Throws InvalidArgument for input without the hermitian flag.
EigenDecomposition eig_hermitian(const HermMat& m);

/// Smallest eigenvalue of the Hermitian part (m + m^dag)/2.
double min_eigenvalue(const CMatrix& m);
double max_eigenvalue(const CMatrix& m);

/// Spectral power of a PSD matrix. Eigenvalues below `floor` are treated as
/// zero, which makes negative exponents pseudo-inverse powers on the support.
CMatrix psd_power(const CMatrix& m, double exponent, double floor = 1e-12);

/// sum_{ij} |ii><jj| / d, the normalized maximally entangled projector on d x d.
CMatrix maximally_entangled(int d);

/// Swap operator on C^d (x) C^d.
CMatrix swap_operator(int d);

}  // namespace qconverse

#endif  // QCONVERSE_MATOPS_HPP_
