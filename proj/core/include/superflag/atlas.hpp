#pragma once

#include "superflag/flag_type.hpp"
#include "superflag/supermatrix.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace superflag {

/// Per-stage choice of identity rows: 1-based ascending indices into the even
/// rows (size k_s out of k_{s-1}) and the odd rows (size l_s out of l_{s-1}).
struct ChartStage {
  std::vector<int> even_rows;
  std::vector<int> odd_rows;
  bool operator==(const ChartStage&) const = default;
};

struct ChartIndex {
  std::vector<ChartStage> stages;
  bool operator==(const ChartIndex&) const = default;
  std::string to_string() const;
};

/// All legal chart indices, lexicographic; count is the product of binomials
/// C(k_{s-1}, k_s) * C(l_{s-1}, l_s).
std::vector<ChartIndex> enumerate_charts(const FlagType& ft);

/// The distinguished chart: stage s keeps the first k_s even and the series'
/// convention for odd rows (first l_s, except pisp which uses the last l_s).
ChartIndex distinguished_chart(const FlagType& ft);

/// Number of free odd coordinates in any chart of this flag type.
int chart_odd_coord_count(const FlagType& ft);

/// A point of the flag supermanifold in chart coordinates: the stage matrices
/// carry the identity in the chart's rows; free even entries are even
/// Grassmann values, free odd entries odd ones.
struct ChartPoint {
  ChartIndex chart;
  std::vector<SuperMatrix> mats;

  bool operator==(const ChartPoint& other) const {
    return chart == other.chart && mats == other.mats;
  }
};

/// All coordinates zero.
ChartPoint chart_origin(const FlagType& ft, const ChartIndex& chart, int generators);

/// Throws std::logic_error if the identity rows are not exactly in place.
void check_identity_rows(const FlagType& ft, const ChartPoint& p);

/// Chart change: stage 1 right-multiplies by the inverse of the selected
/// rows, later stages are conjugated through the accumulated row submatrix.
/// Throws SingularBodyError when the point is outside the overlap.
ChartPoint transition(const FlagType& ft, const ChartIndex& to, const ChartPoint& p);

/// Overlap test on grade-0 data only (cheap, used by rejection sampling).
bool body_overlap(const FlagType& ft, const ChartIndex& to, const ChartPoint& p);

/// Ambient coordinate matrix acting on charts; the body must be invertible.
struct GroupElement {
  SuperMatrix mat;  // (m|n) x (m|n), even-disciplined
};

GroupElement group_identity(const FlagType& ft, int generators);

/// The action: stage 1 becomes L * Z_1 renormalized on the target chart's
/// rows; later stages renormalize through the accumulated submatrices.
/// With L = identity this is exactly transition().
ChartPoint group_action(const FlagType& ft, const GroupElement& l,
                        const ChartPoint& p, const ChartIndex& to);

/// Left-hand side of the series' isotropy constraint on a stage matrix:
/// osp: Z^{ST} Γ Z; pisp: Z^{ST} Υ Z; q: Z - swap·Z·swap (blockwise mirror,
/// zero iff X = Y and Ξ = H). A point lies on the subvariety iff this
/// vanishes (for q, at a block-symmetric chart).
SuperMatrix isotropy_residual(Series series, const SuperMatrix& z1);

/// The invariant bilinear form of osp (symmetric ⊕ symplectic) or pisp (odd,
/// off-diagonal) on the ambient (m|n) superspace.
SuperMatrix series_form_matrix(Series series, int m, int n, int generators);

/// L^{ST} Γ L = Γ (osp), L^{ST} Υ L = Υ (pisp), swap·L = L·swap (q);
/// gl: body invertible only.
bool preserves_series_structure(Series series, int m, int n, const SuperMatrix& l);

/// Deterministic splitmix/mt generator with explicit integer draws, so
/// identical seeds give identical points on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  int uniform(int lo, int hi);  // inclusive bounds
  Rational small_rational(int max_abs_num = 3, int max_den = 3);
  Rational small_nonzero(int max_abs_num = 3, int max_den = 3);

 private:
  std::mt19937_64 eng_;
};

/// Deterministic pseudo-random point in the chart: free even entries small
/// rationals, free odd entries the generators 1..chart_odd_coord_count(ft) in
/// scan order (extra generators beyond those stay free for group elements).
/// Resamples the even part until the point overlaps every chart in
/// `required_overlaps` (up to 1000 attempts, then throws std::runtime_error).
ChartPoint sample_point(const FlagType& ft, const ChartIndex& chart,
                        std::uint64_t seed, int generators,
                        const std::vector<ChartIndex>& required_overlaps = {});

/// transition(J→K) ∘ transition(I→J) = transition(I→K) at p, exactly.
bool verify_cocycle(const FlagType& ft, const ChartIndex& i, const ChartIndex& j,
                    const ChartIndex& k, const ChartPoint& p);

/// Random invertible body element of the series' reduced group times a
/// nilpotent-exponential built from the series algebra: odd basis elements
/// dressed with fresh odd generators (osp needs a sign twist on the odd-row
/// block), even ones with nilpotent even coefficients. The result satisfies
/// preserves_series_structure exactly. Fresh generators are taken from
/// first_free_gen upward; gl elements are unconstrained.
GroupElement sample_group_element(Series series, int m, int n, int generators,
                                  int first_free_gen, Rng& rng);

}  // namespace superflag
