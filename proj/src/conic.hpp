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

// Solver-agnostic representation of conic programs over Hermitian PSD blocks,
// nonnegative vectors and free vectors, plus the interior-point solver that
// consumes it.
//
// Variables live in blocks. A Hermitian PSD block of side n holds a complex
// Hermitian matrix X; linear forms address it through the real atoms Re X_rc
// and Im X_rc, so every coefficient is real. Scalar blocks (nonneg or free)
// hold plain vectors.
//
// Operator constraints are written with MatrixExpr, a Hermitian-matrix-valued
// affine expression built from EntryMaps (identity, partial transpose,
// X -> X (x) I, partial trace, ...). An operator inequality expr >= 0 becomes
// a fresh PSD slack block S with expr - S = 0, so the solver only ever sees
// equality constraints and cone memberships.

#ifndef QCONVERSE_CONIC_HPP_
#define QCONVERSE_CONIC_HPP_

#include <functional>
#include <string>
#include <vector>

#include "matops.hpp"

namespace qconverse::conic {

enum class BlockKind { HermitianPsd, Nonneg, Free };

struct Block {
  BlockKind kind;
  int size;  // matrix side for PSD blocks, vector length otherwise
  std::string name;
};

enum class Part { Re, Im };

/// coef * Re X_{row,col} or coef * Im X_{row,col} of a Hermitian block.
struct EntryTerm {
  int block;
  int row;
  int col;
  Part part;
  double coef;
};

/// coef * x_index of a scalar block.
struct ScalarTerm {
  int block;
  int index;
  double coef;
};

/// Real-valued linear functional of the program variables.
class LinearForm {
 public:
  LinearForm& add_scalar(int block, int index, double coef);
  LinearForm& add_entry(int block, int row, int col, Part part, double coef);
  /// Adds scale * Re tr(c X_block) for Hermitian c.
  LinearForm& add_trace(int block, const CMatrix& c, double scale = 1.0);
  /// Adds scale * tr X_block.
  LinearForm& add_identity_trace(int block, int side, double scale = 1.0);

  const std::vector<EntryTerm>& entries() const noexcept { return entries_; }
  const std::vector<ScalarTerm>& scalars() const noexcept { return scalars_; }
  bool empty() const noexcept { return entries_.empty() && scalars_.empty(); }

 private:
  std::vector<EntryTerm> entries_;
  std::vector<ScalarTerm> scalars_;
};

/// Linear map from n_in x n_in matrices to n_out x n_out matrices whose output
/// entries are real combinations of input entries.
class EntryMap {
 public:
  struct Tap {
    int row;
    int col;
    double coef;
  };

  EntryMap(int in_side, int out_side);

  static EntryMap identity(int n);
  static EntryMap partial_transpose(const Dims& dims, std::size_t factor);
  /// X (side dA) -> X (x) I_dB.
  static EntryMap kron_identity(int d_a, int d_b);
  /// X (side dB) -> I_dA (x) X.
  static EntryMap identity_kron(int d_a, int d_b);
  static EntryMap partial_trace(const Dims& dims, std::size_t factor);
  /// Principal submatrix of side n starting at (offset, offset).
  static EntryMap principal_block(int in_side, int offset, int n);

  int in_side() const noexcept { return in_side_; }
  int out_side() const noexcept { return out_side_; }
  const std::vector<Tap>& taps(int row, int col) const {
    return taps_[static_cast<std::size_t>(row) * out_side_ + col];
  }
  void add_tap(int out_row, int out_col, int in_row, int in_col, double coef);

  /// Applies the map to a concrete matrix.
  CMatrix apply(const CMatrix& x) const;

 private:
  int in_side_;
  int out_side_;
  std::vector<std::vector<Tap>> taps_;
};

/// Hermitian-matrix-valued affine expression of fixed side.
class MatrixExpr {
 public:
  explicit MatrixExpr(int side);

  /// Adds coef * map(X_block).
  MatrixExpr& add(int block, EntryMap map, double coef = 1.0);
  /// Adds coef * x_index * I.
  MatrixExpr& add_scalar_identity(int block, int index, double coef = 1.0);
  /// Adds a constant Hermitian matrix.
  MatrixExpr& add_constant(const CMatrix& c);

  int side() const noexcept { return side_; }

  struct MapTerm {
    int block;
    EntryMap map;
    double coef;
  };
  const std::vector<MapTerm>& map_terms() const noexcept { return maps_; }
  const std::vector<ScalarTerm>& scalar_terms() const noexcept {
    return scalars_;
  }
  const CMatrix& constant() const noexcept { return constant_; }

 private:
  int side_;
  std::vector<MapTerm> maps_;
  std::vector<ScalarTerm> scalars_;
  CMatrix constant_;
};

enum class Relation { Eq, Ge, Le };
enum class Sense { Minimize, Maximize };

struct Constraint {
  LinearForm form;
  Relation rel;
  double rhs;
  std::string label;
};

class ConicProgram {
 public:
  int add_hermitian_psd(int side, std::string name = {});
  int add_nonneg(int len, std::string name = {});
  int add_free(int len, std::string name = {});

  void add_constraint(LinearForm form, Relation rel, double rhs,
                      std::string label = {});
  /// Adds the scalar equations expr == 0 (one per real degree of freedom).
  void add_matrix_equality(const MatrixExpr& expr, const std::string& label);
  /// Adds expr >= 0 through a PSD slack block; returns the slack block id.
  int add_matrix_psd(const MatrixExpr& expr, const std::string& name);

  void set_objective(Sense sense, LinearForm form, double constant = 0.0);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const std::vector<Constraint>& constraints() const noexcept {
    return constraints_;
  }
  const LinearForm& objective() const noexcept { return objective_; }
  double objective_constant() const noexcept { return objective_constant_; }
  Sense sense() const noexcept { return sense_; }

  /// Throws InvalidArgument when a term references an undeclared block or an
  /// index outside it.
  void validate() const;

  /// Plain-text listing: blocks, objective and one constraint per line.
  std::string dump() const;

 private:
  int add_block(BlockKind kind, int size, std::string name);

  std::vector<Block> blocks_;
  std::vector<Constraint> constraints_;
  LinearForm objective_;
  double objective_constant_ = 0.0;
  Sense sense_ = Sense::Minimize;
};

/// [[Re H, -Im H], [Im H, Re H]]. H >= 0 iff the embedding is PSD, and
/// tr(realify(A) realify(B)) = 2 Re tr(A B). Throws for non-Hermitian input.
RMatrix realify(const CMatrix& h);
/// Inverse of realify on its range; averages the redundant copies otherwise.
CMatrix derealify(const RMatrix& x);

enum class SolveStatus { Optimal, Infeasible, Unbounded, MaxIter };

const char* to_string(SolveStatus status);

struct IterationInfo {
  int iteration;
  double primal_objective;
  double dual_objective;
  double primal_residual;  // relative
  double dual_residual;    // relative
  double mu;
  // |<x, r_d>| + |<y, r_p>|: how far an infeasible iterate may push the dual
  // objective above the primal one.
  double duality_slack;
};

// Extended runs the iteration in long double. Programs whose constraint rows
// cancel heavily (the depolarizing LPs at large n) need it to keep the Schur
// complement factorizable.
enum class Precision { Double, Extended };

struct SolverOptions {
  double feas_tol = 1e-8;
  double gap_tol = 1e-8;
  int max_iter = 120;
  Precision precision = Precision::Double;
  std::function<void(const IterationInfo&)> on_iteration;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::MaxIter;
  double primal_value = 0.0;  // objective at the primal iterate, in program sense
  double dual_value = 0.0;
  double gap = 0.0;  // |primal_value - dual_value|
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;

  // Indexed by block id. Hermitian blocks fill `matrices`, scalar blocks fill
  // `vectors`; the other entry is empty.
  std::vector<CMatrix> matrices;
  std::vector<RVector> vectors;
  // Dual cone variables, normalized so that Re tr(Z X) is the pairing.
  std::vector<CMatrix> dual_matrices;
  std::vector<RVector> dual_vectors;

  const CMatrix& matrix(int block) const { return matrices.at(block); }
  double scalar(int block, int index = 0) const {
    return vectors.at(block)(index);
  }
};

ConicSolution solve(const ConicProgram& program,
                    const SolverOptions& options = {});

}  // namespace qconverse::conic

#endif  // QCONVERSE_CONIC_HPP_
