#pragma once

#include "superflag/superalgebra.hpp"

#include <string>
#include <vector>

namespace superflag {

/// Flag shape (k|l) in the ambient (m|n) superspace for one of the series.
/// Validation enforces the per-series constraints: descending tuples with
/// strictly descending positive stage sizes below m+n; osp: k_1 <= floor(m/2)
/// and l_1 <= n/2; pisp: k_1 + l_1 <= n; q: l = k.
struct FlagType {
  Series series;
  int m = 0, n = 0;
  std::vector<int> k, l;

  static FlagType make(Series series, int m, int n, std::vector<int> k,
                       std::vector<int> l);

  int stages() const { return static_cast<int>(k.size()); }
  std::string to_string() const;
  bool operator==(const FlagType&) const = default;
};

/// All valid flag types with the given bounds, in deterministic order.
std::vector<FlagType> enumerate_flag_types(Series series, int max_m, int max_n,
                                           int max_r);

/// Integer weights realizing the per-series chain: stage-s block of k gets
/// value s (and -s on the trailing l block for pisp); everything else 0.
struct WeightTuple {
  std::vector<int> a;
  std::vector<int> b;  // empty for pisp and q

  /// Concatenated (a, b) as Cartan coordinates.
  std::vector<int> cartan_point() const;
  std::string to_string() const;
};

WeightTuple weight_tuple(const FlagType& ft);

/// Subalgebra of a series algebra, given by a parity-split column basis over
/// the parent's basis coordinates.
struct Subalgebra {
  const LieSuperAlgebra* parent = nullptr;
  QMatrix even_basis;  // dim x k_even, canonical
  QMatrix odd_basis;   // dim x k_odd, canonical

  int dim_even() const { return even_basis.cols(); }
  int dim_odd() const { return odd_basis.cols(); }

  bool same_subspace(const Subalgebra& other) const;
  /// Every pairwise bracket of basis columns stays inside the span.
  bool bracket_closed() const;
  bool contains_cartan() const;
};

/// Cartan plus all root spaces with nonnegative value at the weight embedding
/// (for q this includes the zero-weight odd part, which centralizes t).
Subalgebra parabolic_from_weights(const LieSuperAlgebra& g, const WeightTuple& w);

/// Same, with the root system precomputed (for sweeps).
Subalgebra parabolic_from_roots(const LieSuperAlgebra& g, const RootSystem& rs,
                                const WeightTuple& w);

/// The distinguished flag: 1-based ambient coordinate indices of each V_i.
std::vector<std::vector<int>> base_point(const FlagType& ft);

/// Stabilizer {X in g : X(V_i) ⊆ V_i} by direct linear solving.
Subalgebra stabilizer_direct(const LieSuperAlgebra& g,
                             const std::vector<std::vector<int>>& flag);

/// True when the displayed root-formula construction is backed by the
/// stabilizer identification at these parameters (osp: m >= 1 and n >= 2;
/// pisp: n >= 2; gl and q: always).
bool parabolic_window(const FlagType& ft);

}  // namespace superflag
