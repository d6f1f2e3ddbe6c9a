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

// Infeasible-start primal-dual interior-point method, HKM direction with a
// Mehrotra predictor-corrector, on the real standard form
//
//   min  sum_s <C_s, X_s> + c_l' x_l + c_f' x_f
//   s.t. A(X, x_l, x_f) = b,   X_s PSD,  x_l >= 0,  x_f free.
//
// Hermitian blocks of side n become real symmetric blocks of side 2n via the
// realify embedding. The real relaxation is exact: averaging the two copies
// of a feasible real point gives a feasible point of the same value.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "conic.hpp"
#include "errors.hpp"

namespace qconverse::conic {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SymEntry {
  int p;
  int q;
  double v;
};

// One constraint row restricted to one PSD block, both triangles listed.
struct PsdRow {
  int row;
  std::vector<SymEntry> entries;
};

struct Lowered {
  int m = 0;
  RVector b;

  std::vector<int> psd_side;  // real side
  std::vector<RMatrix> c_psd;
  std::vector<std::vector<PsdRow>> psd_rows;

  int n_lin = 0;
  RVector c_lin;
  std::vector<std::vector<std::pair<int, double>>> lin_cols;

  int n_free = 0;
  RVector c_free;
  RMatrix a_free;  // m x n_free

  // Program block -> index into psd blocks or offset into lin/free vectors.
  std::vector<int> where;

  double obj_scale = 1.0;
  double sense_sign = 1.0;
  RVector row_scale;
  bool trivially_infeasible = false;
};

class RowBuilder {
 public:
  void add_psd(int s, int p, int q, double v) {
    if (p == q) {
      psd_[{s, p, p}] += v;
    } else {
      psd_[{s, p, q}] += 0.5 * v;
      psd_[{s, q, p}] += 0.5 * v;
    }
  }
  void add_lin(int k, double v) { lin_[k] += v; }
  void add_free(int k, double v) { free_[k] += v; }

  const std::map<std::tuple<int, int, int>, double>& psd() const {
    return psd_;
  }
  const std::map<int, double>& lin() const { return lin_; }
  const std::map<int, double>& free() const { return free_; }

 private:
  std::map<std::tuple<int, int, int>, double> psd_;
  std::map<int, double> lin_;
  std::map<int, double> free_;
};

void add_form(const ConicProgram& prog, const Lowered& low,
              const LinearForm& form, double sign, RowBuilder& out) {
  for (const EntryTerm& t : form.entries()) {
    const int s = low.where[t.block];
    const int n = prog.blocks()[t.block].size;
    const double w = sign * t.coef;
    if (t.part == Part::Re) {
      out.add_psd(s, t.row, t.col, 0.5 * w);
      out.add_psd(s, n + t.row, n + t.col, 0.5 * w);
    } else {
      out.add_psd(s, n + t.row, t.col, 0.5 * w);
      out.add_psd(s, t.row, n + t.col, -0.5 * w);
    }
  }
  for (const ScalarTerm& t : form.scalars()) {
    const int k = low.where[t.block] + t.index;
    if (prog.blocks()[t.block].kind == BlockKind::Nonneg) {
      out.add_lin(k, sign * t.coef);
    } else {
      out.add_free(k, sign * t.coef);
    }
  }
}

Lowered lower(const ConicProgram& prog) {
  Lowered low;
  const auto& blocks = prog.blocks();
  low.where.resize(blocks.size());
  int n_free = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    switch (blocks[i].kind) {
      case BlockKind::HermitianPsd:
        low.where[i] = static_cast<int>(low.psd_side.size());
        low.psd_side.push_back(2 * blocks[i].size);
        break;
      case BlockKind::Nonneg:
        low.where[i] = low.n_lin;
        low.n_lin += blocks[i].size;
        break;
      case BlockKind::Free:
        low.where[i] = n_free;
        n_free += blocks[i].size;
        break;
    }
  }
  const int n_user_lin = low.n_lin;
  for (const Constraint& c : prog.constraints()) {
    if (c.rel != Relation::Eq) ++low.n_lin;
  }
  low.n_free = n_free;
  const int n_psd = static_cast<int>(low.psd_side.size());

  // Objective, always minimized internally.
  low.sense_sign = prog.sense() == Sense::Minimize ? 1.0 : -1.0;
  {
    RowBuilder obj;
    add_form(prog, low, prog.objective(), low.sense_sign, obj);
    low.c_psd.resize(n_psd);
    for (int s = 0; s < n_psd; ++s) {
      low.c_psd[s] = RMatrix::Zero(low.psd_side[s], low.psd_side[s]);
    }
    for (const auto& [key, v] : obj.psd()) {
      const auto [s, p, q] = key;
      low.c_psd[s](p, q) += v;
    }
    low.c_lin = RVector::Zero(low.n_lin);
    for (const auto& [k, v] : obj.lin()) low.c_lin(k) += v;
    low.c_free = RVector::Zero(low.n_free);
    for (const auto& [k, v] : obj.free()) low.c_free(k) += v;
  }

  // Constraints.
  low.psd_rows.resize(n_psd);
  low.lin_cols.resize(low.n_lin);
  std::vector<double> rhs;
  std::vector<std::vector<std::pair<int, double>>> free_rows;
  std::vector<double> scales;
  int slack = n_user_lin;
  for (const Constraint& c : prog.constraints()) {
    RowBuilder row;
    add_form(prog, low, c.form, 1.0, row);
    if (c.rel == Relation::Ge) row.add_lin(slack++, -1.0);
    if (c.rel == Relation::Le) row.add_lin(slack++, 1.0);

    double norm2 = 0.0;
    for (const auto& [key, v] : row.psd()) norm2 += v * v;
    for (const auto& [k, v] : row.lin()) norm2 += v * v;
    for (const auto& [k, v] : row.free()) norm2 += v * v;
    if (norm2 == 0.0) {
      if (std::abs(c.rhs) > 1e-14) low.trivially_infeasible = true;
      continue;
    }
    const double scale = 1.0 / std::sqrt(norm2);
    const int i = static_cast<int>(rhs.size());
    rhs.push_back(c.rhs * scale);
    scales.push_back(scale);

    int current_block = -1;
    for (const auto& [key, v] : row.psd()) {
      const auto [s, p, q] = key;
      if (v == 0.0) continue;
      if (s != current_block) {
        low.psd_rows[s].push_back({i, {}});
        current_block = s;
      }
      low.psd_rows[s].back().entries.push_back({p, q, v * scale});
    }
    for (const auto& [k, v] : row.lin()) {
      if (v != 0.0) low.lin_cols[k].push_back({i, v * scale});
    }
    std::vector<std::pair<int, double>> fr;
    for (const auto& [k, v] : row.free()) {
      if (v != 0.0) fr.push_back({k, v * scale});
    }
    free_rows.push_back(std::move(fr));
  }
  low.m = static_cast<int>(rhs.size());
  low.b = Eigen::Map<RVector>(rhs.data(), low.m);
  low.row_scale = Eigen::Map<RVector>(scales.data(), low.m);
  low.a_free = RMatrix::Zero(low.m, low.n_free);
  for (int i = 0; i < low.m; ++i) {
    for (const auto& [k, v] : free_rows[i]) low.a_free(i, k) = v;
  }

  double c_norm2 = low.c_lin.squaredNorm() + low.c_free.squaredNorm();
  for (const RMatrix& c : low.c_psd) c_norm2 += c.squaredNorm();
  if (c_norm2 > 0.0) {
    low.obj_scale = std::sqrt(c_norm2);
    for (RMatrix& c : low.c_psd) c /= low.obj_scale;
    low.c_lin /= low.obj_scale;
    low.c_free /= low.obj_scale;
  }
  return low;
}

template <typename T>
using MatX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using VecX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename M>
typename M::PlainObject sym(const M& m) {
  return (m + m.transpose()) * typename M::Scalar(0.5);
}

template <typename T>
struct Point {
  std::vector<MatX<T>> X, Z;
  VecX<T> x, z, xf, y;
};

template <typename T>
struct Direction {
  std::vector<MatX<T>> dX, dZ;
  VecX<T> dx, dz, dxf, dy;
};

template <typename T>
struct Residuals {
  VecX<T> rp;
  std::vector<MatX<T>> Rd;
  VecX<T> rd, rd_f;
  T pinf, dinf, pobj, dobj;
};

template <typename T>
class Ipm {
 public:
  Ipm(const Lowered& low, const SolverOptions& opt)
      : low_(low),
        opt_(opt),
        b_(low.b.cast<T>()),
        c_lin_(low.c_lin.cast<T>()),
        c_free_(low.c_free.cast<T>()),
        a_free_(low.a_free.cast<T>()) {
    for (const RMatrix& c : low.c_psd) c_psd_.push_back(c.cast<T>());
  }

  ConicSolution run();

 private:
  VecX<T> apply_a(const std::vector<MatX<T>>& X, const VecX<T>& x,
                  const VecX<T>& xf) const;
  void apply_at(const VecX<T>& y, std::vector<MatX<T>>& S, VecX<T>& s_lin,
                VecX<T>& s_free) const;
  void initial_point();
  Residuals<T> residuals(const Point<T>& pt) const;
  bool factor(const Point<T>& pt);
  Direction<T> direction(const Point<T>& pt, const Residuals<T>& res,
                      const std::vector<MatX<T>>& K, const VecX<T>& k) const;
  T max_step_psd(const std::vector<MatX<T>>& X,
                      const std::vector<MatX<T>>& dX) const;
  static T max_step_lin(const VecX<T>& x, const VecX<T>& dx);
  T mu(const Point<T>& pt) const;
  T unscaled_primal(T pobj) const;
  T unscaled_dual(T dobj) const;
  ConicSolution finish(const Residuals<T>& res,
                       SolveStatus status, int iterations) const;

  const Lowered& low_;
  const SolverOptions& opt_;
  VecX<T> b_, c_lin_, c_free_;
  MatX<T> a_free_;
  std::vector<MatX<T>> c_psd_;

 public:
  Point<T> pt_;
  T constant_ = 0.0;

 private:
  std::vector<MatX<T>> Zinv_;
  Eigen::LLT<MatX<T>> schur_;
  Eigen::LDLT<MatX<T>> free_schur_;
  MatX<T> schur_inv_free_;
  T nu_ = 0.0;  // barrier parameter: sum of cone orders
};

template <typename T>
VecX<T> Ipm<T>::apply_a(const std::vector<MatX<T>>& X, const VecX<T>& x,
                     const VecX<T>& xf) const {
  VecX<T> out = VecX<T>::Zero(low_.m);
  for (std::size_t s = 0; s < X.size(); ++s) {
    for (const PsdRow& r : low_.psd_rows[s]) {
      T acc = 0.0;
      for (const SymEntry& e : r.entries) acc += e.v * X[s](e.p, e.q);
      out(r.row) += acc;
    }
  }
  for (int k = 0; k < low_.n_lin; ++k) {
    for (const auto& [row, v] : low_.lin_cols[k]) out(row) += v * x(k);
  }
  if (low_.n_free > 0) out.noalias() += a_free_ * xf;
  return out;
}

template <typename T>
void Ipm<T>::apply_at(const VecX<T>& y, std::vector<MatX<T>>& S, VecX<T>& s_lin,
                   VecX<T>& s_free) const {
  S.resize(low_.psd_side.size());
  for (std::size_t s = 0; s < S.size(); ++s) {
    S[s] = MatX<T>::Zero(low_.psd_side[s], low_.psd_side[s]);
    for (const PsdRow& r : low_.psd_rows[s]) {
      const T w = y(r.row);
      for (const SymEntry& e : r.entries) S[s](e.p, e.q) += w * e.v;
    }
  }
  s_lin = VecX<T>::Zero(low_.n_lin);
  for (int k = 0; k < low_.n_lin; ++k) {
    for (const auto& [row, v] : low_.lin_cols[k]) s_lin(k) += v * y(row);
  }
  s_free = low_.n_free > 0 ? VecX<T>(a_free_.transpose() * y)
                           : VecX<T>::Zero(0);
}

template <typename T>
void Ipm<T>::initial_point() {
  const std::size_t n_psd = low_.psd_side.size();
  const T one_plus_b_max =
      low_.m > 0 ? 1.0 + b_.cwiseAbs().maxCoeff() : 1.0;
  pt_.X.resize(n_psd);
  pt_.Z.resize(n_psd);
  nu_ = 0.0;
  for (std::size_t s = 0; s < n_psd; ++s) {
    const int n = low_.psd_side[s];
    T max_ratio = 0.0;
    T max_norm = 0.0;
    for (const PsdRow& r : low_.psd_rows[s]) {
      T norm2 = 0.0;
      for (const SymEntry& e : r.entries) norm2 += e.v * e.v;
      const T norm = std::sqrt(norm2);
      max_ratio = std::max(max_ratio, (1.0 + std::abs(b_(r.row))) /
                                          (1.0 + norm));
      max_norm = std::max(max_norm, norm);
    }
    const T xi = std::max({T(10), std::sqrt(T(n)), n * max_ratio});
    const T eta = std::max(
        {T(10), std::sqrt(T(n)), c_psd_[s].norm(), max_norm});
    pt_.X[s] = xi * MatX<T>::Identity(n, n);
    pt_.Z[s] = eta * MatX<T>::Identity(n, n);
    nu_ += n;
  }
  pt_.x = VecX<T>::Zero(low_.n_lin);
  pt_.z = VecX<T>::Zero(low_.n_lin);
  for (int k = 0; k < low_.n_lin; ++k) {
    T norm2 = 0.0;
    for (const auto& [row, v] : low_.lin_cols[k]) norm2 += v * v;
    const T norm = std::sqrt(norm2);
    pt_.x(k) = std::max(T(10), one_plus_b_max / (1.0 + norm) * 10.0);
    pt_.z(k) = std::max({T(10), norm, std::abs(c_lin_(k))});
  }
  nu_ += low_.n_lin;
  pt_.xf = VecX<T>::Zero(low_.n_free);
  pt_.y = VecX<T>::Zero(low_.m);
}

template <typename T>
Residuals<T> Ipm<T>::residuals(const Point<T>& pt) const {
  Residuals<T> r;
  r.rp = b_ - apply_a(pt.X, pt.x, pt.xf);
  std::vector<MatX<T>> S;
  VecX<T> s_lin, s_free;
  apply_at(pt.y, S, s_lin, s_free);
  r.Rd.resize(S.size());
  T d2 = 0.0;
  r.pobj = 0.0;
  for (std::size_t s = 0; s < S.size(); ++s) {
    r.Rd[s] = c_psd_[s] - pt.Z[s] - S[s];
    d2 += r.Rd[s].squaredNorm();
    r.pobj += (c_psd_[s].cwiseProduct(pt.X[s])).sum();
  }
  r.rd = c_lin_ - pt.z - s_lin;
  r.rd_f = c_free_ - s_free;
  d2 += r.rd.squaredNorm() + r.rd_f.squaredNorm();
  r.pobj += c_lin_.dot(pt.x) + c_free_.dot(pt.xf);
  r.dobj = b_.dot(pt.y);
  r.pinf = r.rp.norm() / (1.0 + b_.norm());
  r.dinf = std::sqrt(d2) / 2.0;  // objective is scaled to unit norm
  return r;
}

template <typename T>
bool Ipm<T>::factor(const Point<T>& pt) {
  const int m = low_.m;
  MatX<T> M = MatX<T>::Zero(m, m);
  Zinv_.resize(pt.Z.size());
  for (std::size_t s = 0; s < pt.Z.size(); ++s) {
    Eigen::LLT<MatX<T>> llt(pt.Z[s]);
    if (llt.info() != Eigen::Success) return false;
    const int n = low_.psd_side[s];
    Zinv_[s] = sym(llt.solve(MatX<T>::Identity(n, n)));
    const MatX<T>& X = pt.X[s];
    const MatX<T>& Zi = Zinv_[s];
    const auto& rows = low_.psd_rows[s];
    MatX<T> G(n, n);
    for (std::size_t jj = 0; jj < rows.size(); ++jj) {
      const PsdRow& rj = rows[jj];
      if (static_cast<int>(rj.entries.size()) < n) {
        G.setZero();
        for (const SymEntry& e : rj.entries) {
          G.noalias() += (T(e.v) * X.col(e.p)) * Zi.row(e.q);
        }
      } else {
        MatX<T> Aj = MatX<T>::Zero(n, n);
        for (const SymEntry& e : rj.entries) Aj(e.p, e.q) = e.v;
        G.noalias() = X * Aj * Zi;
      }
      for (std::size_t ii = 0; ii <= jj; ++ii) {
        const PsdRow& ri = rows[ii];
        T acc = 0.0;
        for (const SymEntry& e : ri.entries) acc += e.v * G(e.q, e.p);
        M(ri.row, rj.row) += acc;
        if (ii != jj) M(rj.row, ri.row) += acc;
      }
    }
  }
  for (int k = 0; k < low_.n_lin; ++k) {
    const T d = pt.x(k) / pt.z(k);
    const auto& col = low_.lin_cols[k];
    for (const auto& [ra, va] : col) {
      for (const auto& [rb, vb] : col) M(ra, rb) += d * va * vb;
    }
  }
  M = sym(M);
  const T diag_max = m > 0 ? M.diagonal().cwiseAbs().maxCoeff() : 1.0;
  schur_.compute(M);
  T reg = 1e-15 * std::max(diag_max, T(1));
  for (int attempt = 0; schur_.info() != Eigen::Success && attempt < 12;
       ++attempt) {
    schur_.compute(M + reg * MatX<T>::Identity(m, m));
    reg *= 10.0;
  }
  if (schur_.info() != Eigen::Success) return false;
  if (low_.n_free > 0) {
    schur_inv_free_ = schur_.solve(a_free_);
    free_schur_.compute(sym(a_free_.transpose() * schur_inv_free_));
    if (free_schur_.info() != Eigen::Success) return false;
  }
  return true;
}

template <typename T>
Direction<T> Ipm<T>::direction(const Point<T>& pt, const Residuals<T>& res,
                         const std::vector<MatX<T>>& K,
                         const VecX<T>& k) const {
  Direction<T> d;
  const std::size_t n_psd = pt.X.size();
  std::vector<MatX<T>> W(n_psd);
  for (std::size_t s = 0; s < n_psd; ++s) {
    W[s] = K[s] - pt.X[s] * res.Rd[s] * Zinv_[s];
  }
  const VecX<T> t_lin =
      k - pt.x.cwiseProduct(res.rd).cwiseQuotient(pt.z);
  VecX<T> rhs = res.rp - apply_a(W, t_lin, VecX<T>::Zero(low_.n_free));
  if (low_.n_free > 0) {
    d.dxf = free_schur_.solve(schur_inv_free_.transpose() * rhs - res.rd_f);
    d.dy = schur_.solve(rhs - a_free_ * d.dxf);
  } else {
    d.dxf = VecX<T>::Zero(0);
    d.dy = schur_.solve(rhs);
  }
  std::vector<MatX<T>> S;
  VecX<T> s_lin, s_free;
  apply_at(d.dy, S, s_lin, s_free);
  d.dZ.resize(n_psd);
  d.dX.resize(n_psd);
  for (std::size_t s = 0; s < n_psd; ++s) {
    d.dZ[s] = res.Rd[s] - S[s];
    d.dX[s] = sym(K[s] - pt.X[s] * d.dZ[s] * Zinv_[s]);
  }
  d.dz = res.rd - s_lin;
  d.dx = k - pt.x.cwiseProduct(d.dz).cwiseQuotient(pt.z);
  return d;
}

template <typename T>
T Ipm<T>::max_step_psd(const std::vector<MatX<T>>& X,
                         const std::vector<MatX<T>>& dX) const {
  T alpha = kInf;
  for (std::size_t s = 0; s < X.size(); ++s) {
    Eigen::LLT<MatX<T>> llt(X[s]);
    if (llt.info() != Eigen::Success) return 0.0;
    const MatX<T>& L = llt.matrixL().toDenseMatrix();
    MatX<T> W = L.template triangularView<Eigen::Lower>().solve(dX[s]);
    W = L.template triangularView<Eigen::Lower>().solve(W.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<MatX<T>> es(sym(W), Eigen::EigenvaluesOnly);
    const T lam = es.eigenvalues()(0);
    if (lam < 0.0) alpha = std::min(alpha, -1.0 / lam);
  }
  return alpha;
}

template <typename T>
T Ipm<T>::max_step_lin(const VecX<T>& x, const VecX<T>& dx) {
  T alpha = kInf;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) alpha = std::min(alpha, -x(i) / dx(i));
  }
  return alpha;
}

template <typename T>
T Ipm<T>::mu(const Point<T>& pt) const {
  T acc = pt.x.dot(pt.z);
  for (std::size_t s = 0; s < pt.X.size(); ++s) {
    acc += pt.X[s].cwiseProduct(pt.Z[s]).sum();
  }
  return nu_ > 0.0 ? acc / nu_ : 0.0;
}

template <typename T>
T Ipm<T>::unscaled_primal(T pobj) const {
  return low_.sense_sign * low_.obj_scale * pobj + constant_;
}

template <typename T>
T Ipm<T>::unscaled_dual(T dobj) const {
  return low_.sense_sign * low_.obj_scale * dobj + constant_;
}

template <typename T>
ConicSolution Ipm<T>::finish(const Residuals<T>& res,
                          SolveStatus status, int iterations) const {
  ConicSolution sol;
  sol.status = status;
  sol.primal_value = unscaled_primal(res.pobj);
  sol.dual_value = unscaled_dual(res.dobj);
  sol.gap = std::abs(sol.primal_value - sol.dual_value);
  sol.primal_residual = res.pinf;
  sol.dual_residual = res.dinf;
  sol.iterations = iterations;
  return sol;
}

template <typename T>
ConicSolution Ipm<T>::run() {
  initial_point();
  const bool has_cone = nu_ > 0.0;
  Point<T> best = pt_;
  Residuals<T> best_res = residuals(pt_);
  T best_merit = kInf;
  int stalled = 0;
  int it = 0;
  SolveStatus status = SolveStatus::MaxIter;
  Residuals<T> res = best_res;
  T prev_mu = kInf;

  for (;; ++it) {
    res = residuals(pt_);
    const T mu_now = mu(pt_);
    const T p_val = unscaled_primal(res.pobj);
    const T d_val = unscaled_dual(res.dobj);
    const T rel_gap = std::abs(p_val - d_val) / (1.0 + std::abs(p_val));

    if (opt_.on_iteration) {
      T slack = std::abs(res.rp.dot(pt_.y)) +
                     std::abs(res.rd.dot(pt_.x)) +
                     std::abs(res.rd_f.dot(pt_.xf));
      for (std::size_t s = 0; s < pt_.X.size(); ++s) {
        slack += std::abs(res.Rd[s].cwiseProduct(pt_.X[s]).sum());
      }
      opt_.on_iteration({it, static_cast<double>(p_val),
                         static_cast<double>(d_val), static_cast<double>(res.pinf),
                         static_cast<double>(res.dinf), static_cast<double>(mu_now),
                         static_cast<double>(low_.obj_scale * slack)});
    }

    const T merit = std::max({res.pinf, res.dinf, rel_gap});
    if (merit < best_merit) {
      best_merit = merit;
      best = pt_;
      best_res = res;
    }
    if (res.pinf <= opt_.feas_tol && res.dinf <= opt_.feas_tol &&
        rel_gap <= opt_.gap_tol) {
      status = SolveStatus::Optimal;
      best = pt_;
      best_res = res;
      break;
    }
    // Certificates of infeasibility: a dual ray (b'y > 0 with A'y + Z ~ 0)
    // or a primal ray (c'x < 0 with A x ~ 0).
    {
      const T by = res.dobj;
      if (by > 0.0) {
        T ray2 = 0.0;
        for (std::size_t s = 0; s < pt_.X.size(); ++s) {
          ray2 += (c_psd_[s] - res.Rd[s]).squaredNorm();
        }
        ray2 += (c_lin_ - res.rd).squaredNorm() +
                (c_free_ - res.rd_f).squaredNorm();
        if (std::sqrt(ray2) / by < opt_.feas_tol) {
          status = SolveStatus::Infeasible;
          best = pt_;
          best_res = res;
          break;
        }
      }
      const T cx = -res.pobj;
      if (cx > 0.0 && (b_ - res.rp).norm() / cx < opt_.feas_tol) {
        status = SolveStatus::Unbounded;
        best = pt_;
        best_res = res;
        break;
      }
    }
    if (it >= opt_.max_iter || !has_cone) break;
    if (!factor(pt_)) break;

    // Predictor.
    const std::size_t n_psd = pt_.X.size();
    std::vector<MatX<T>> K(n_psd);
    for (std::size_t s = 0; s < n_psd; ++s) K[s] = -pt_.X[s];
    VecX<T> k = -pt_.x;
    const Direction<T> pred = direction(pt_, res, K, k);
    const T ap = std::min(
        T(1), std::min(max_step_psd(pt_.X, pred.dX), max_step_lin(pt_.x, pred.dx)));
    const T ad = std::min(
        T(1), std::min(max_step_psd(pt_.Z, pred.dZ), max_step_lin(pt_.z, pred.dz)));
    T mu_aff = 0.0;
    for (std::size_t s = 0; s < n_psd; ++s) {
      mu_aff += ((pt_.X[s] + ap * pred.dX[s])
                     .cwiseProduct(pt_.Z[s] + ad * pred.dZ[s]))
                    .sum();
    }
    mu_aff += (pt_.x + ap * pred.dx).dot(pt_.z + ad * pred.dz);
    mu_aff /= nu_;
    const T expon = std::max(T(1), 3 * std::min(ap, ad) * std::min(ap, ad));
    const T sigma =
        mu_now > 0.0 ? std::min(T(1), std::pow(std::max(mu_aff, T(0)) / mu_now, expon))
                     : 0.0;

    // Corrector.
    for (std::size_t s = 0; s < n_psd; ++s) {
      K[s] = sigma * mu_now * Zinv_[s] - pt_.X[s] -
             pred.dX[s] * pred.dZ[s] * Zinv_[s];
    }
    k = (sigma * mu_now * VecX<T>::Ones(low_.n_lin)).cwiseQuotient(pt_.z) -
        pt_.x - pred.dx.cwiseProduct(pred.dz).cwiseQuotient(pt_.z);
    const Direction<T> corr = direction(pt_, res, K, k);
    const T gamma = 0.9 + 0.09 * std::min(ap, ad);
    const T step_p = std::min(
        T(1), gamma * std::min(max_step_psd(pt_.X, corr.dX),
                              max_step_lin(pt_.x, corr.dx)));
    const T step_d = std::min(
        T(1), gamma * std::min(max_step_psd(pt_.Z, corr.dZ),
                              max_step_lin(pt_.z, corr.dz)));

    for (std::size_t s = 0; s < n_psd; ++s) {
      pt_.X[s] = sym(pt_.X[s] + step_p * corr.dX[s]);
      pt_.Z[s] = sym(pt_.Z[s] + step_d * corr.dZ[s]);
    }
    pt_.x += step_p * corr.dx;
    pt_.xf += step_p * corr.dxf;
    pt_.z += step_d * corr.dz;
    pt_.y += step_d * corr.dy;

    if (step_p < 1e-8 && step_d < 1e-8) break;
    const T mu_next = mu(pt_);
    stalled = mu_next > 0.999 * prev_mu && merit >= best_merit ? stalled + 1 : 0;
    prev_mu = mu_next;
    if (stalled >= 8) break;
  }

  ConicSolution sol = finish(best_res, status, it);
  if (status == SolveStatus::MaxIter && !has_cone && best_res.pinf <= opt_.feas_tol &&
      best_res.dinf <= opt_.feas_tol) {
    sol.status = SolveStatus::Optimal;
  }
  pt_ = best;
  return sol;
}

template <typename T>
ConicSolution run_ipm(const Lowered& low, const SolverOptions& options,
                      double constant, Point<double>& out) {
  Ipm<T> ipm(low, options);
  ipm.constant_ = constant;
  ConicSolution sol = ipm.run();
  const auto to_double = [](const std::vector<MatX<T>>& v) {
    std::vector<RMatrix> r;
    for (const MatX<T>& m : v) r.push_back(m.template cast<double>());
    return r;
  };
  out.X = to_double(ipm.pt_.X);
  out.Z = to_double(ipm.pt_.Z);
  out.x = ipm.pt_.x.template cast<double>();
  out.z = ipm.pt_.z.template cast<double>();
  out.xf = ipm.pt_.xf.template cast<double>();
  out.y = ipm.pt_.y.template cast<double>();
  return sol;
}

}  // namespace

ConicSolution solve(const ConicProgram& program,
                    const SolverOptions& options) {
  program.validate();
  if (options.feas_tol <= 0.0 || options.gap_tol <= 0.0 ||
      options.max_iter < 1) {
    throw invalid_argument("solve: tolerances must be positive");
  }
  const Lowered low = lower(program);
  const auto& blocks = program.blocks();
  if (low.trivially_infeasible) {
    ConicSolution sol;
    sol.status = SolveStatus::Infeasible;
    sol.matrices.resize(blocks.size());
    sol.vectors.resize(blocks.size());
    sol.dual_matrices.resize(blocks.size());
    sol.dual_vectors.resize(blocks.size());
    return sol;
  }
  Point<double> pt;
  ConicSolution sol =
      options.precision == Precision::Extended
          ? run_ipm<long double>(low, options, program.objective_constant(), pt)
          : run_ipm<double>(low, options, program.objective_constant(), pt);

  // Map the internal point back to program blocks.
  sol.matrices.resize(blocks.size());
  sol.vectors.resize(blocks.size());
  sol.dual_matrices.resize(blocks.size());
  sol.dual_vectors.resize(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int w = low.where[i];
    const int len = blocks[i].size;
    switch (blocks[i].kind) {
      case BlockKind::HermitianPsd: {
        CMatrix x = derealify(pt.X[w]);
        sol.matrices[i] = 0.5 * (x + x.adjoint());
        CMatrix z = 2.0 * low.obj_scale * derealify(pt.Z[w]);
        sol.dual_matrices[i] = 0.5 * (z + z.adjoint());
        break;
      }
      case BlockKind::Nonneg:
        sol.vectors[i] = pt.x.segment(w, len);
        sol.dual_vectors[i] = low.obj_scale * pt.z.segment(w, len);
        break;
      case BlockKind::Free:
        sol.vectors[i] = pt.xf.segment(w, len);
        sol.dual_vectors[i] = RVector::Zero(len);
        break;
    }
  }
  return sol;
}

}  // namespace qconverse::conic
