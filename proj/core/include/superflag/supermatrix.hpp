#pragma once

#include "superflag/grassmann.hpp"
#include "superflag/qlinalg.hpp"

#include <stdexcept>
#include <vector>

namespace superflag {

/// Raised where a grade-0 (body) matrix that must be invertible is not;
/// in chart arithmetic this means the point lies outside the overlap.
struct SingularBodyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// (even|odd) block partition sizes along one axis.
struct BlockDims {
  int even = 0;
  int odd = 0;
  int total() const { return even + odd; }
  bool operator==(const BlockDims&) const = default;
};

/// Block matrix over the Grassmann ring with an (even|odd) partition of rows
/// and columns. Parity discipline is enforced on construction: for an even
/// matrix, entries of the diagonal blocks are even and of the mixed blocks
/// odd; an odd matrix (e.g. an odd bilinear form) has the complementary
/// layout. Multiplication adds matrix parities.
class SuperMatrix {
 public:
  SuperMatrix() : gens_(0) {}
  /// Zero matrix.
  SuperMatrix(BlockDims rows, BlockDims cols, int generators,
              Parity matrix_parity = Parity::Even);

  static SuperMatrix identity(BlockDims dims, int generators);
  /// The block swap (0 E; E 0); an odd matrix, defined for even == odd sizes.
  static SuperMatrix block_swap(BlockDims dims, int generators);
  static SuperMatrix from_rational(BlockDims rows, BlockDims cols,
                                   const QMatrix& body, int generators,
                                   Parity matrix_parity = Parity::Even);

  BlockDims row_dims() const { return rows_; }
  BlockDims col_dims() const { return cols_; }
  int generators() const { return gens_; }
  Parity matrix_parity() const { return mparity_; }

  const GrassmannElement& at(int i, int j) const {
    return entries_[static_cast<size_t>(i) * cols_.total() + j];
  }
  /// Sets an entry, enforcing the parity discipline.
  void set(int i, int j, GrassmannElement value);

  SuperMatrix mul(const SuperMatrix& other) const;
  SuperMatrix add(const SuperMatrix& other) const;
  SuperMatrix sub(const SuperMatrix& other) const;
  SuperMatrix scaled(const Rational& c) const;
  SuperMatrix scaled_left(const GrassmannElement& c) const;

  bool is_zero() const;
  bool operator==(const SuperMatrix& other) const;

  /// (X Ξ; H Y) -> (X^T H^T; -Ξ^T Y^T); partitions swap.
  SuperMatrix supertranspose() const;

  /// Two-sided inverse of a square even matrix with invertible body, via the
  /// terminating geometric series on the nilpotent part. Throws
  /// SingularBodyError when the body is singular.
  SuperMatrix inverse_even() const;

  /// Grade-0 part as a rational matrix (block structure flattened).
  QMatrix body() const;

  /// Submatrix of the rows named by 1-based even-row indices `even_rows` and
  /// odd-row indices `odd_rows` (odd rows count within the odd block).
  SuperMatrix select_rows(const std::vector<int>& even_rows,
                          const std::vector<int>& odd_rows) const;

  std::string to_string() const;

 private:
  BlockDims rows_, cols_;
  int gens_;
  Parity mparity_ = Parity::Even;
  std::vector<GrassmannElement> entries_;

  Parity required_parity(int i, int j) const;
  GrassmannElement& mutable_at(int i, int j) {
    return entries_[static_cast<size_t>(i) * cols_.total() + j];
  }
};

}  // namespace superflag
