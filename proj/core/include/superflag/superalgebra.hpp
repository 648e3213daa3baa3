#pragma once

#include "superflag/qlinalg.hpp"
#include "superflag/grassmann.hpp"

#include <string>
#include <vector>

namespace superflag {

enum class Series { GL, OSP, PISP, Q };

std::string series_name(Series s);
Series parse_series(const std::string& name);

/// Integer linear functional on the Cartan coordinates (x_1..x_p, y_1..y_q as
/// named per series), tagged with the parity of its root space.
struct Root {
  std::vector<int> coeffs;
  Parity parity = Parity::Even;

  long evaluate(const std::vector<int>& point) const;
  std::string to_string(int num_x) const;
  bool is_zero() const;
  bool operator==(const Root&) const = default;
};

struct RootSpace {
  Root root;
  QMatrix basis;  // columns: coefficient vectors over the algebra basis
};

struct RootSystem {
  std::vector<RootSpace> roots;  // nonzero weights, deterministic order
  QMatrix cartan_basis;          // columns span t
  /// Odd part of the centralizer of t (weight 0 but not a root space).
  /// Empty except for the q series, where it is the π-diagonal.
  QMatrix zero_odd_basis;
};

/// One of the four classical series realized by explicit rational matrices.
/// Elements are coefficient vectors over `basis`; the bracket is tabulated at
/// construction (and is the matrix supercommutator unless `is_gr`).
class LieSuperAlgebra {
 public:
  using SparseVec = std::vector<std::pair<int, Rational>>;

  Series series;
  int m = 0, n = 0;
  std::vector<QMatrix> basis;       // ambient (m+n)x(m+n) matrices
  std::vector<Parity> parities;
  std::vector<std::string> names;
  std::vector<int> cartan;          // basis indices, one per Cartan coordinate
  int num_x = 0, num_y = 0;         // Cartan coordinate split
  std::vector<std::vector<int>> odd_summand_indices;  // invariant pieces of g_1
  bool is_gr = false;

  int dim() const { return static_cast<int>(basis.size()); }
  int dim_even() const;
  int dim_odd() const;
  std::vector<int> indices_of(Parity p) const;

  const SparseVec& bracket_basis(int i, int j) const {
    return table_[static_cast<size_t>(i) * dim() + j];
  }

  /// Superbracket of coefficient vectors, by bilinear table expansion.
  std::vector<Rational> bracket(const std::vector<Rational>& x,
                                const std::vector<Rational>& y) const;

  QMatrix element_matrix(const std::vector<Rational>& coords) const;

  /// Matrix of ad(basis[even_idx]) restricted to g_1, in odd coordinates
  /// (position t <=> indices_of(Odd)[t]).
  QMatrix ad_on_odd(int even_idx) const;

  /// Expands an ambient matrix in the basis; nullopt if outside the span.
  std::optional<std::vector<Rational>> expand(const QMatrix& ambient) const;

  friend LieSuperAlgebra build_superalgebra(Series s, int m, int n);
  friend LieSuperAlgebra gr_superalgebra(const LieSuperAlgebra& g);
  friend bool same_bracket_table(const LieSuperAlgebra&, const LieSuperAlgebra&);

 private:
  std::vector<SparseVec> table_;
  std::vector<int> odd_pos_;  // basis index -> position among odd elements
  void build_table();         // throws if the basis is not bracket-closed
};

/// Constructs the series member with the explicit parametrization and basis
/// ordering fixed by the ambient basis conventions documented per series in
/// the builder. Throws std::invalid_argument for invalid dimensions
/// (OSP: n odd; PISP/Q: m != n).
LieSuperAlgebra build_superalgebra(Series s, int m, int n);

/// Memoized build_superalgebra.
const LieSuperAlgebra& get_algebra(Series s, int m, int n);

/// Simultaneous eigenspace decomposition of ad(t). Roots are reported in a
/// deterministic order and must reassemble the algebra exactly.
RootSystem root_decomposition(const LieSuperAlgebra& g);

/// Memoized root_decomposition(get_algebra(s, m, n)).
const RootSystem& get_root_system(Series s, int m, int n);

/// The invariant summands of g_1 under g_0, as column bases in odd
/// coordinates (gl and pisp: lower-left then upper-right block; osp with
/// m = 2: the two halves exchanged by the grading; otherwise one piece).
std::vector<QMatrix> odd_summands(const LieSuperAlgebra& g);

/// Same graded space with the bracket zeroed on g_1 x g_1 (the split degeneration);
/// the result is table-backed only.
LieSuperAlgebra gr_superalgebra(const LieSuperAlgebra& g);

bool same_bracket_table(const LieSuperAlgebra& a, const LieSuperAlgebra& b);

}  // namespace superflag
