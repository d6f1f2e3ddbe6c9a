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

#include "matops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace qconverse {
namespace {

int dims_product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

// Stride of `factor` in the composite index.
int stride_of(const Dims& dims, std::size_t factor) {
  int s = 1;
  for (std::size_t j = factor + 1; j < dims.size(); ++j) s *= dims[j];
  return s;
}

void check_factor(const HermMat& m, std::size_t factor, const char* op) {
  if (factor >= m.dims().size()) {
    throw invalid_argument(std::string(op) + ": factor " +
                           std::to_string(factor) + " out of range for " +
                           std::to_string(m.dims().size()) + " factors");
  }
}

}  // namespace

HermMat::HermMat(CMatrix data, Dims dims, bool hermitian)
    : data_(std::move(data)), dims_(std::move(dims)), hermitian_(hermitian) {
  if (data_.rows() != data_.cols()) {
    throw invalid_argument("HermMat: matrix must be square");
  }
  if (dims_.empty()) dims_ = {static_cast<int>(data_.rows())};
  if (std::any_of(dims_.begin(), dims_.end(), [](int d) { return d < 1; })) {
    throw invalid_argument("HermMat: tensor factor dimensions must be >= 1");
  }
  if (dims_product(dims_) != data_.rows()) {
    throw invalid_argument("HermMat: side " + std::to_string(data_.rows()) +
                           " does not match product of dims");
  }
  if (hermitian_ && hermiticity_defect(data_) > kHermiticityTol) {
    throw invariant_violation("HermMat: matrix flagged hermitian is not");
  }
}

HermMat HermMat::hermitian(CMatrix data) {
  return HermMat(std::move(data), {}, true);
}

HermMat HermMat::general(CMatrix data) {
  return HermMat(std::move(data), {}, false);
}

HermMat HermMat::identity(Dims dims) {
  const int n = dims_product(dims);
  return HermMat(CMatrix::Identity(n, n), std::move(dims), true);
}

double hermiticity_defect(const CMatrix& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

CMatrix kron(const CMatrix& x, const CMatrix& y) {
  const Eigen::Index rb = y.rows();
  const Eigen::Index cb = y.cols();
  CMatrix out(x.rows() * rb, x.cols() * cb);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = x(i, j) * y;
    }
  }
  return out;
}

HermMat kron(const HermMat& a, const HermMat& b) {
  CMatrix out = kron(a.data(), b.data());
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return HermMat(std::move(out), std::move(dims),
                 a.is_hermitian() && b.is_hermitian());
}

HermMat partial_trace(const HermMat& m, std::size_t factor) {
  check_factor(m, factor, "partial_trace");
  const Dims& dims = m.dims();
  const int d = dims[factor];
  const int s = stride_of(dims, factor);
  const int n_out = m.side() / d;
  CMatrix out = CMatrix::Zero(n_out, n_out);
  const auto expand = [&](int idx, int k) {
    return (idx / s) * (d * s) + k * s + idx % s;
  };
  for (int r = 0; r < n_out; ++r) {
    for (int c = 0; c < n_out; ++c) {
      cplx acc = 0.0;
      for (int k = 0; k < d; ++k) acc += m.data()(expand(r, k), expand(c, k));
      out(r, c) = acc;
    }
  }
  Dims out_dims = dims;
  out_dims.erase(out_dims.begin() + static_cast<std::ptrdiff_t>(factor));
  if (out_dims.empty()) out_dims = {1};
  return HermMat(std::move(out), std::move(out_dims), m.is_hermitian());
}

HermMat partial_transpose(const HermMat& m, std::size_t factor) {
  check_factor(m, factor, "partial_transpose");
  const Dims& dims = m.dims();
  const int d = dims[factor];
  const int s = stride_of(dims, factor);
  const int n = m.side();
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    const int rf = (r / s) % d;
    for (int c = 0; c < n; ++c) {
      const int cf = (c / s) % d;
      out(r + (cf - rf) * s, c + (rf - cf) * s) = m.data()(r, c);
    }
  }
  return HermMat(std::move(out), dims, m.is_hermitian());
}

HermMat permute_factors(const HermMat& m, std::span<const std::size_t> order) {
  const Dims& dims = m.dims();
  const std::size_t k = dims.size();
  if (order.size() != k) {
    throw invalid_argument("permute_factors: order size mismatch");
  }
  std::vector<bool> seen(k, false);
  for (std::size_t o : order) {
    if (o >= k || seen[o]) {
      throw invalid_argument("permute_factors: order is not a permutation");
    }
    seen[o] = true;
  }
  Dims new_dims(k);
  for (std::size_t j = 0; j < k; ++j) new_dims[j] = dims[order[j]];

  // Map each old composite index to its new position.
  const int n = m.side();
  std::vector<int> old_strides(k), new_strides(k);
  for (std::size_t j = 0; j < k; ++j) {
    old_strides[j] = stride_of(dims, j);
    new_strides[j] = stride_of(new_dims, j);
  }
  std::vector<int> target(n);
  for (int idx = 0; idx < n; ++idx) {
    int t = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const int digit = (idx / old_strides[order[j]]) % dims[order[j]];
      t += digit * new_strides[j];
    }
    target[idx] = t;
  }
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out(target[r], target[c]) = m.data()(r, c);
  }
  return HermMat(std::move(out), std::move(new_dims), m.is_hermitian());
}

double trace_norm(const HermMat& m) {
  if (m.is_hermitian()) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m.data(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<CMatrix> svd(m.data());
  return svd.singularValues().sum();
}

EigenDecomposition eig_hermitian(const HermMat& m) {
  if (!m.is_hermitian()) {
    throw invalid_argument("eig_hermitian: input is not flagged hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m.data());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::SolverFailure, "eig_hermitian: eigensolver failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

CMatrix psd_power(const CMatrix& m, double exponent, double floor) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    lam(i) = lam(i) > floor ? std::pow(lam(i), exponent) : 0.0;
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix maximally_entangled(int d) {
  CMatrix phi = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) phi(i * d + i, j * d + j) = 1.0 / d;
  }
  return phi;
}

CMatrix swap_operator(int d) {
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  }
  return s;
}

}  // namespace qconverse
