#pragma once

#include "superflag/rational.hpp"

#include <optional>
#include <vector>

namespace superflag {

/// Dense matrix over the rationals. Row-major storage; all elimination is
/// exact (no pivoting heuristics needed beyond nonzero choice).
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  QMatrix transpose() const;
  QMatrix mul(const QMatrix& other) const;
  QMatrix add(const QMatrix& other) const;
  QMatrix sub(const QMatrix& other) const;
  QMatrix scaled(const Rational& c) const;
  std::vector<Rational> mul_vec(const std::vector<Rational>& v) const;

  bool is_zero() const;
  bool operator==(const QMatrix& other) const;

  /// In-place reduced row echelon form. Returns pivot column indices.
  std::vector<int> rref();

  int rank() const;

  /// Columns form a basis of the kernel {x : Ax = 0}.
  QMatrix nullspace() const;

  std::optional<QMatrix> inverse() const;

  /// Horizontal/vertical concatenation.
  static QMatrix hstack(const QMatrix& a, const QMatrix& b);
  static QMatrix vstack(const QMatrix& a, const QMatrix& b);

  QMatrix columns(const std::vector<int>& idx) const;

 private:
  int rows_, cols_;
  std::vector<Rational> data_;
};

/// Solves A x = b exactly for consistent systems with full column rank on the
/// pivot columns; the row transform of A is precomputed so repeated solves
/// against the same A are cheap. Reports inconsistency (b outside the column
/// space) via the optional.
class LinearSolver {
 public:
  explicit LinearSolver(const QMatrix& a);

  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

  int rank() const { return static_cast<int>(pivot_cols_.size()); }

 private:
  int rows_, cols_;
  QMatrix transform_;            // T with T*A in rref
  QMatrix rref_a_;               // T*A, kept for the consistency check
  std::vector<int> pivot_cols_;  // pivot column of each leading row
};

// --- subspace helpers -------------------------------------------------------
//
// Subspaces of Q^d are passed around as matrices whose *columns* span them.

/// Canonical basis of the column space (rref of the transpose, transposed
/// back); equal subspaces produce identical matrices.
QMatrix column_space_canonical(const QMatrix& m);

bool subspace_equal(const QMatrix& a, const QMatrix& b);

/// True if span(a) contains span(b).
bool subspace_contains(const QMatrix& a, const QMatrix& b);

bool subspace_contains_vector(const QMatrix& a, const std::vector<Rational>& v);

/// Basis (columns) of span(a) ∩ span(b).
QMatrix subspace_intersect(const QMatrix& a, const QMatrix& b);

/// Rows annihilating the column space: N * a == 0, rank(N) = d - rank(a).
QMatrix left_annihilator(const QMatrix& a);

}  // namespace superflag
