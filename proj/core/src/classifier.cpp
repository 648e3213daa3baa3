#include "superflag/classifier.hpp"

#include <algorithm>
#include <sstream>

namespace superflag {

QMatrix odd_part(const Subalgebra& s) {
  const LieSuperAlgebra& g = *s.parent;
  std::vector<int> odd = g.indices_of(Parity::Odd);
  QMatrix out(static_cast<int>(odd.size()), s.odd_basis.cols());
  for (size_t t = 0; t < odd.size(); ++t)
    for (int c = 0; c < s.odd_basis.cols(); ++c)
      out.at(static_cast<int>(t), c) = s.odd_basis.at(odd[t], c);
  return out;
}

QMatrix annihilator(const LieSuperAlgebra& g, const QMatrix& h1) {
  const int d1 = g.dim_odd();
  if (h1.rows() != d1) throw std::invalid_argument("annihilator: not a subspace of g_1");
  if (h1.cols() == 0) return QMatrix::identity(d1);
  // Covectors vanishing on the columns of h1: kernel of h1^T.
  return h1.transpose().nullspace();
}

QMatrix max_invariant_submodule(const LieSuperAlgebra& g, const QMatrix& s) {
  const int d1 = g.dim_odd();
  if (s.rows() != d1)
    throw std::invalid_argument("max_invariant_submodule: ambient mismatch");
  std::vector<int> evens = g.indices_of(Parity::Even);
  // Coadjoint action on covectors: X·w = -ad(X)|_{g_1}^T w.
  std::vector<QMatrix> coad;
  coad.reserve(evens.size());
  for (int e : evens) coad.push_back(g.ad_on_odd(e).transpose().scaled(Rational(-1)));

  QMatrix w = column_space_canonical(s);
  while (w.cols() > 0) {
    QMatrix quot = left_annihilator(w);  // rows vanish exactly on span(w)
    QMatrix stacked(0, w.cols());
    for (const QMatrix& act : coad) {
      QMatrix cond = quot.mul(act.mul(w));
      if (!cond.is_zero()) stacked = QMatrix::vstack(stacked, cond);
    }
    if (stacked.rows() == 0) break;  // already invariant
    QMatrix ker = stacked.nullspace();
    QMatrix next = column_space_canonical(w.mul(ker));
    if (next.cols() == w.cols()) break;
    w = std::move(next);
  }
  return w;
}

ClassifyDetail classify_h0_detail(const FlagType& ft) {
  const LieSuperAlgebra& g = get_algebra(ft.series, ft.m, ft.n);
  Subalgebra stab = stabilizer_direct(g, base_point(ft));
  QMatrix h1 = odd_part(stab);
  QMatrix ann = annihilator(g, h1);
  QMatrix w = max_invariant_submodule(g, ann);
  ClassifyDetail detail;
  detail.result.generator_dim = w.cols();
  detail.h1_dim = h1.cols();
  detail.ann_dim = ann.cols();
  // w(h1) = 0 for all w in W: guaranteed by W ⊆ Ann(h1); record it anyway.
  detail.w_vanishes_on_h1 = w.transpose().mul(h1).is_zero();
  return detail;
}

H0Result classify_h0(const FlagType& ft) { return classify_h0_detail(ft).result; }

namespace {

int min_of(const std::vector<int>& v, int if_empty) {
  return v.empty() ? if_empty : *std::min_element(v.begin(), v.end());
}
int max_of(const std::vector<int>& v, int if_empty) {
  return v.empty() ? if_empty : *std::max_element(v.begin(), v.end());
}

}  // namespace

ClosedFormResult closed_form_h0(const FlagType& ft) {
  WeightTuple w = weight_tuple(ft);
  switch (ft.series) {
    case Series::GL: {
      // Full odd block splits off iff the weights separate completely.
      const int big = 1 << 20;
      bool a_above_b = min_of(w.a, big) > max_of(w.b, -big);
      bool b_above_a = min_of(w.b, big) > max_of(w.a, -big);
      int mn = ft.m * ft.n;
      if (a_above_b) return {H0Result{mn}, "gl-even-chain"};
      if (b_above_a) return {H0Result{mn}, "gl-odd-chain"};
      return {H0Result{0}, "gl-mixed"};
    }
    case Series::OSP: {
      if (ft.m < 1 || ft.n < 2) return {std::nullopt, "osp-outside-hypotheses"};
      if (ft.m != 2) return {H0Result{0}, "osp-m-not-2"};
      const int q = ft.n / 2;
      // a is the single weight a_1; split iff it dominates every b.
      if (w.a[0] > max_of(w.b, 0)) return {H0Result{2 * q}, "osp-m2-split"};
      return {H0Result{0}, "osp-m2-mixed"};
    }
    case Series::PISP: {
      const int n = ft.n;
      if (n == 1) {
        // Point cases: (1|0) is a pure odd point with one generator, (0|1)
        // collapses to the constants.
        if (ft.k[0] == 1) return {H0Result{1}, "pisp-point-lambda1"};
        return {H0Result{0}, "pisp-point-c"};
      }
      bool all_pos = true, all_neg = true;  // a_i + a_j > 0 (i<=j), < 0 (i<j)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          if (w.a[i] + w.a[j] <= 0) all_pos = false;
          if (i != j && w.a[i] + w.a[j] >= 0) all_neg = false;
        }
      if (all_pos) return {H0Result{n * (n + 1) / 2}, "pisp-sym-split"};
      if (all_neg) return {H0Result{n * (n - 1) / 2}, "pisp-skew-split"};
      return {H0Result{0}, "pisp-mixed"};
    }
    case Series::Q:
      return {H0Result{0}, "q-constants"};
  }
  return {std::nullopt, "unreachable"};
}

bool SummandInjectivityReport::any_injective() const {
  return std::any_of(injective.begin(), injective.end(), [](bool b) { return b; });
}

SummandInjectivityReport summand_injectivity(const FlagType& ft) {
  const LieSuperAlgebra& g = get_algebra(ft.series, ft.m, ft.n);
  QMatrix h1 = odd_part(stabilizer_direct(g, base_point(ft)));
  SummandInjectivityReport report;
  for (const QMatrix& summand : odd_summands(g)) {
    report.summand_dims.push_back(summand.cols());
    QMatrix meet = subspace_intersect(h1, summand);
    report.injective.push_back(meet.cols() == 0);
  }
  return report;
}

std::string ClassificationRecord::to_record() const {
  std::ostringstream os;
  os << "series=" << series_name(ft.series) << " m=" << ft.m << " n=" << ft.n << " k=";
  for (size_t i = 0; i < ft.k.size(); ++i) os << (i ? "," : "") << ft.k[i];
  os << " l=";
  for (size_t i = 0; i < ft.l.size(); ++i) os << (i ? "," : "") << ft.l[i];
  os << " generator_dim=" << generic.result.generator_dim
     << " vs_dim=" << generic.result.vs_dim() << " closed_case=" << closed.case_label
     << " closed_dim=";
  if (closed.result)
    os << closed.result->generator_dim;
  else
    os << "n/a";
  os << " agree=" << (agree() ? 1 : 0) << " h1_dim=" << generic.h1_dim
     << " ann_dim=" << generic.ann_dim << " summand_dims=";
  for (size_t i = 0; i < injectivity.summand_dims.size(); ++i)
    os << (i ? "," : "") << injectivity.summand_dims[i];
  os << " summand_injective=";
  for (size_t i = 0; i < injectivity.injective.size(); ++i)
    os << (i ? "," : "") << (injectivity.injective[i] ? 1 : 0);
  os << " w_kills_h1=" << (generic.w_vanishes_on_h1 ? 1 : 0);
  return os.str();
}

ClassificationRecord classify_record(const FlagType& ft) {
  return ClassificationRecord{ft, classify_h0_detail(ft), closed_form_h0(ft),
                              summand_injectivity(ft)};
}

}  // namespace superflag
