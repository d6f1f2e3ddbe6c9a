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

#include <cstdio>
#include <sstream>

#include "conic.hpp"
#include "errors.hpp"

namespace qconverse::conic {
namespace {

int stride_of(const Dims& dims, std::size_t factor) {
  int s = 1;
  for (std::size_t j = factor + 1; j < dims.size(); ++j) s *= dims[j];
  return s;
}

int product(const Dims& dims) {
  int p = 1;
  for (int d : dims) p *= d;
  return p;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_form(std::ostream& os, const LinearForm& form) {
  if (form.empty()) {
    os << " 0";
    return;
  }
  for (const EntryTerm& t : form.entries()) {
    os << ' ' << format_number(t.coef) << (t.part == Part::Re ? "*Re" : "*Im")
       << '[' << t.block << "](" << t.row << ',' << t.col << ')';
  }
  for (const ScalarTerm& t : form.scalars()) {
    os << ' ' << format_number(t.coef) << "*x[" << t.block << "](" << t.index
       << ')';
  }
}

const char* kind_name(BlockKind kind) {
  switch (kind) {
    case BlockKind::HermitianPsd: return "hermitian_psd";
    case BlockKind::Nonneg: return "nonneg";
    case BlockKind::Free: return "free";
  }
  return "?";
}

const char* relation_name(Relation rel) {
  switch (rel) {
    case Relation::Eq: return "eq";
    case Relation::Ge: return "ge";
    case Relation::Le: return "le";
  }
  return "?";
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearForm

LinearForm& LinearForm::add_scalar(int block, int index, double coef) {
  if (coef != 0.0) scalars_.push_back({block, index, coef});
  return *this;
}

LinearForm& LinearForm::add_entry(int block, int row, int col, Part part,
                                  double coef) {
  if (coef != 0.0) entries_.push_back({block, row, col, part, coef});
  return *this;
}

LinearForm& LinearForm::add_trace(int block, const CMatrix& c, double scale) {
  if (hermiticity_defect(c) > kHermiticityTol) {
    throw invalid_argument("LinearForm::add_trace: coefficient not Hermitian");
  }
  // Re tr(c X) = sum_{r,s} Re c_sr Re X_rs - Im c_sr Im X_rs
  for (Eigen::Index r = 0; r < c.rows(); ++r) {
    for (Eigen::Index s = 0; s < c.cols(); ++s) {
      const cplx w = c(s, r);
      add_entry(block, static_cast<int>(r), static_cast<int>(s), Part::Re,
                scale * w.real());
      add_entry(block, static_cast<int>(r), static_cast<int>(s), Part::Im,
                -scale * w.imag());
    }
  }
  return *this;
}

LinearForm& LinearForm::add_identity_trace(int block, int side, double scale) {
  for (int r = 0; r < side; ++r) add_entry(block, r, r, Part::Re, scale);
  return *this;
}

// ---------------------------------------------------------------------------
// EntryMap

EntryMap::EntryMap(int in_side, int out_side)
    : in_side_(in_side), out_side_(out_side),
      taps_(static_cast<std::size_t>(out_side) * out_side) {}

void EntryMap::add_tap(int out_row, int out_col, int in_row, int in_col,
                       double coef) {
  taps_[static_cast<std::size_t>(out_row) * out_side_ + out_col].push_back(
      {in_row, in_col, coef});
}

EntryMap EntryMap::identity(int n) {
  EntryMap map(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) map.add_tap(a, b, a, b, 1.0);
  }
  return map;
}

EntryMap EntryMap::partial_transpose(const Dims& dims, std::size_t factor) {
  if (factor >= dims.size()) {
    throw invalid_argument("EntryMap::partial_transpose: factor out of range");
  }
  const int n = product(dims);
  const int d = dims[factor];
  const int s = stride_of(dims, factor);
  EntryMap map(n, n);
  for (int r = 0; r < n; ++r) {
    const int rf = (r / s) % d;
    for (int c = 0; c < n; ++c) {
      const int cf = (c / s) % d;
      map.add_tap(r, c, r + (cf - rf) * s, c + (rf - cf) * s, 1.0);
    }
  }
  return map;
}

EntryMap EntryMap::kron_identity(int d_a, int d_b) {
  EntryMap map(d_a, d_a * d_b);
  for (int a = 0; a < d_a; ++a) {
    for (int a2 = 0; a2 < d_a; ++a2) {
      for (int b = 0; b < d_b; ++b) {
        map.add_tap(a * d_b + b, a2 * d_b + b, a, a2, 1.0);
      }
    }
  }
  return map;
}

EntryMap EntryMap::identity_kron(int d_a, int d_b) {
  EntryMap map(d_b, d_a * d_b);
  for (int a = 0; a < d_a; ++a) {
    for (int b = 0; b < d_b; ++b) {
      for (int b2 = 0; b2 < d_b; ++b2) {
        map.add_tap(a * d_b + b, a * d_b + b2, b, b2, 1.0);
      }
    }
  }
  return map;
}

EntryMap EntryMap::partial_trace(const Dims& dims, std::size_t factor) {
  if (factor >= dims.size()) {
    throw invalid_argument("EntryMap::partial_trace: factor out of range");
  }
  const int n = product(dims);
  const int d = dims[factor];
  const int s = stride_of(dims, factor);
  const int n_out = n / d;
  EntryMap map(n, n_out);
  const auto expand = [&](int idx, int k) {
    return (idx / s) * (d * s) + k * s + idx % s;
  };
  for (int r = 0; r < n_out; ++r) {
    for (int c = 0; c < n_out; ++c) {
      for (int k = 0; k < d; ++k) {
        map.add_tap(r, c, expand(r, k), expand(c, k), 1.0);
      }
    }
  }
  return map;
}

EntryMap EntryMap::principal_block(int in_side, int offset, int n) {
  if (offset < 0 || offset + n > in_side) {
    throw invalid_argument("EntryMap::principal_block: out of range");
  }
  EntryMap map(in_side, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) map.add_tap(a, b, offset + a, offset + b, 1.0);
  }
  return map;
}

CMatrix EntryMap::apply(const CMatrix& x) const {
  if (x.rows() != in_side_ || x.cols() != in_side_) {
    throw invalid_argument("EntryMap::apply: input has the wrong side");
  }
  CMatrix out = CMatrix::Zero(out_side_, out_side_);
  for (int a = 0; a < out_side_; ++a) {
    for (int b = 0; b < out_side_; ++b) {
      cplx acc = 0.0;
      for (const Tap& t : taps(a, b)) acc += t.coef * x(t.row, t.col);
      out(a, b) = acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// MatrixExpr

MatrixExpr::MatrixExpr(int side)
    : side_(side), constant_(CMatrix::Zero(side, side)) {}

MatrixExpr& MatrixExpr::add(int block, EntryMap map, double coef) {
  if (map.out_side() != side_) {
    throw invalid_argument("MatrixExpr::add: map output side mismatch");
  }
  maps_.push_back({block, std::move(map), coef});
  return *this;
}

MatrixExpr& MatrixExpr::add_scalar_identity(int block, int index,
                                            double coef) {
  scalars_.push_back({block, index, coef});
  return *this;
}

MatrixExpr& MatrixExpr::add_constant(const CMatrix& c) {
  if (c.rows() != side_ || c.cols() != side_) {
    throw invalid_argument("MatrixExpr::add_constant: side mismatch");
  }
  if (hermiticity_defect(c) > kHermiticityTol) {
    throw invalid_argument("MatrixExpr::add_constant: not Hermitian");
  }
  constant_ += c;
  return *this;
}

// ---------------------------------------------------------------------------
// ConicProgram

int ConicProgram::add_block(BlockKind kind, int size, std::string name) {
  if (size < 1) throw invalid_argument("ConicProgram: block size must be >= 1");
  blocks_.push_back({kind, size, std::move(name)});
  return static_cast<int>(blocks_.size()) - 1;
}

int ConicProgram::add_hermitian_psd(int side, std::string name) {
  return add_block(BlockKind::HermitianPsd, side, std::move(name));
}

int ConicProgram::add_nonneg(int len, std::string name) {
  return add_block(BlockKind::Nonneg, len, std::move(name));
}

int ConicProgram::add_free(int len, std::string name) {
  return add_block(BlockKind::Free, len, std::move(name));
}

void ConicProgram::add_constraint(LinearForm form, Relation rel, double rhs,
                                  std::string label) {
  constraints_.push_back({std::move(form), rel, rhs, std::move(label)});
}

void ConicProgram::add_matrix_equality(const MatrixExpr& expr,
                                       const std::string& label) {
  const int n = expr.side();
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      for (Part part : {Part::Re, Part::Im}) {
        if (part == Part::Im && a == b) continue;
        LinearForm form;
        for (const auto& term : expr.map_terms()) {
          for (const EntryMap::Tap& t : term.map.taps(a, b)) {
            form.add_entry(term.block, t.row, t.col, part, term.coef * t.coef);
          }
        }
        if (part == Part::Re && a == b) {
          for (const ScalarTerm& s : expr.scalar_terms()) {
            form.add_scalar(s.block, s.index, s.coef);
          }
        }
        const cplx c = expr.constant()(a, b);
        const double rhs = part == Part::Re ? -c.real() : -c.imag();
        if (form.empty() && rhs == 0.0) continue;
        add_constraint(std::move(form), Relation::Eq, rhs,
                       label + (part == Part::Re ? ".re(" : ".im(") +
                           std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
}

int ConicProgram::add_matrix_psd(const MatrixExpr& expr,
                                 const std::string& name) {
  const int slack = add_hermitian_psd(expr.side(), name);
  MatrixExpr with_slack = expr;
  with_slack.add(slack, EntryMap::identity(expr.side()), -1.0);
  add_matrix_equality(with_slack, name);
  return slack;
}

void ConicProgram::set_objective(Sense sense, LinearForm form,
                                 double constant) {
  sense_ = sense;
  objective_ = std::move(form);
  objective_constant_ = constant;
}

void ConicProgram::validate() const {
  const auto check_form = [&](const LinearForm& form, const std::string& where) {
    for (const EntryTerm& t : form.entries()) {
      if (t.block < 0 || t.block >= static_cast<int>(blocks_.size()) ||
          blocks_[t.block].kind != BlockKind::HermitianPsd) {
        throw invalid_argument(where + ": entry term references block " +
                               std::to_string(t.block) +
                               " which is not a Hermitian block");
      }
      const int n = blocks_[t.block].size;
      if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n) {
        throw invalid_argument(where + ": entry index out of range");
      }
    }
    for (const ScalarTerm& t : form.scalars()) {
      if (t.block < 0 || t.block >= static_cast<int>(blocks_.size()) ||
          blocks_[t.block].kind == BlockKind::HermitianPsd) {
        throw invalid_argument(where + ": scalar term references block " +
                               std::to_string(t.block) +
                               " which is not a scalar block");
      }
      if (t.index < 0 || t.index >= blocks_[t.block].size) {
        throw invalid_argument(where + ": scalar index out of range");
      }
    }
  };
  check_form(objective_, "objective");
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    check_form(constraints_[i].form, "constraint " + std::to_string(i));
  }
}

std::string ConicProgram::dump() const {
  std::ostringstream os;
  os << "qconverse-conic 1\n";
  os << "sense " << (sense_ == Sense::Minimize ? "minimize" : "maximize")
     << '\n';
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    os << "block " << i << ' ' << kind_name(blocks_[i].kind) << ' '
       << blocks_[i].size;
    if (!blocks_[i].name.empty()) os << ' ' << blocks_[i].name;
    os << '\n';
  }
  os << "objective " << format_number(objective_constant_) << " :";
  write_form(os, objective_);
  os << '\n';
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const Constraint& c = constraints_[i];
    os << "constraint " << i << ' ' << relation_name(c.rel) << ' '
       << format_number(c.rhs);
    if (!c.label.empty()) os << ' ' << c.label;
    os << " :";
    write_form(os, c.form);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Real embedding

RMatrix realify(const CMatrix& h) {
  if (h.rows() != h.cols() || hermiticity_defect(h) > kHermiticityTol) {
    throw invalid_argument("realify: input is not Hermitian");
  }
  const Eigen::Index n = h.rows();
  RMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return out;
}

CMatrix derealify(const RMatrix& x) {
  const Eigen::Index n = x.rows() / 2;
  CMatrix out(n, n);
  out.real() = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  out.imag() = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  return out;
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::MaxIter: return "max_iter";
  }
  return "unknown";
}

}  // namespace qconverse::conic
