#include "superflag/atlas.hpp"  // Rng
#include "superflag/classifier.hpp"

#include "doctest.h"

using namespace superflag;

namespace {

QMatrix odd_subspace(const LieSuperAlgebra& g, const std::vector<int>& odd_positions) {
  QMatrix m(g.dim_odd(), static_cast<int>(odd_positions.size()));
  for (size_t c = 0; c < odd_positions.size(); ++c)
    m.at(odd_positions[c], static_cast<int>(c)) = 1;
  return m;
}

}  // namespace

TEST_CASE("odd_part extremes") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 2);
  Subalgebra whole = stabilizer_direct(g, {{1, 2, 3, 4}});
  CHECK(odd_part(whole).cols() == g.dim_odd());

  // A purely even stabilizer: pisp(1|1), type (1|0).
  const LieSuperAlgebra& p = get_algebra(Series::PISP, 1, 1);
  FlagType ft = FlagType::make(Series::PISP, 1, 1, {1}, {0});
  Subalgebra s = stabilizer_direct(p, base_point(ft));
  CHECK(odd_part(s).cols() == 0);

  FlagType mixed = FlagType::make(Series::GL, 2, 2, {1}, {1});
  CHECK(odd_part(stabilizer_direct(g, base_point(mixed))).cols() == 6);
}

TEST_CASE("annihilator dimensions") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 2);
  CHECK(annihilator(g, QMatrix(g.dim_odd(), 0)).cols() == g.dim_odd());
  CHECK(annihilator(g, QMatrix::identity(g.dim_odd())).cols() == 0);
  FlagType ft = FlagType::make(Series::GL, 2, 2, {1}, {1});
  QMatrix h1 = odd_part(stabilizer_direct(g, base_point(ft)));
  QMatrix ann = annihilator(g, h1);
  CHECK(ann.cols() == 2);  // 8 - 6
  CHECK(ann.transpose().mul(h1).is_zero());
}

TEST_CASE("maximal invariant submodule extremes and the gl(2|2) fixpoint") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 2);
  QMatrix whole = QMatrix::identity(g.dim_odd());
  CHECK(max_invariant_submodule(g, whole).cols() == g.dim_odd());
  CHECK(max_invariant_submodule(g, QMatrix(g.dim_odd(), 0)).cols() == 0);
  FlagType ft = FlagType::make(Series::GL, 2, 2, {1}, {1});
  QMatrix ann = annihilator(g, odd_part(stabilizer_direct(g, base_point(ft))));
  CHECK(max_invariant_submodule(g, ann).cols() == 0);
}

TEST_CASE("maximal invariant submodule is monotone, idempotent, invariant") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 1);
  std::vector<int> evens = g.indices_of(Parity::Even);
  Rng rng(37);
  for (int rep = 0; rep < 30; ++rep) {
    const int d1 = g.dim_odd();
    QMatrix s(d1, 2);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < 2; ++j) s.at(i, j) = rng.small_rational(2, 1);
    QMatrix s_big = QMatrix::hstack(s, QMatrix::identity(d1).columns({0}));
    QMatrix w_small = max_invariant_submodule(g, s);
    QMatrix w_big = max_invariant_submodule(g, s_big);
    CHECK(subspace_contains(w_big, w_small));
    CHECK(subspace_equal(max_invariant_submodule(g, w_small), w_small));
    for (int e : evens) {
      QMatrix coad = g.ad_on_odd(e).transpose().scaled(Rational(-1));
      CHECK(subspace_contains(w_small, coad.mul(w_small)));
    }
  }
}

TEST_CASE("classification anchors") {
  CHECK(classify_h0(FlagType::make(Series::Q, 2, 2, {1}, {1})).generator_dim == 0);
  CHECK(classify_h0(FlagType::make(Series::PISP, 1, 1, {1}, {0})).generator_dim == 1);
  CHECK(classify_h0(FlagType::make(Series::PISP, 1, 1, {1}, {0})).vs_dim() == 2);
  CHECK(classify_h0(FlagType::make(Series::GL, 2, 1, {2}, {0})).generator_dim == 2);
  CHECK(classify_h0(FlagType::make(Series::GL, 2, 2, {1}, {1})).generator_dim == 0);
  CHECK(classify_h0(FlagType::make(Series::OSP, 2, 2, {1}, {0})).generator_dim == 2);
  CHECK(classify_h0(FlagType::make(Series::PISP, 2, 2, {2}, {0})).generator_dim == 3);
}

TEST_CASE("closed-form case analysis") {
  auto r1 = closed_form_h0(FlagType::make(Series::PISP, 2, 2, {2}, {0}));
  REQUIRE(r1.result.has_value());
  CHECK(r1.result->generator_dim == 3);

  auto r2 = closed_form_h0(FlagType::make(Series::OSP, 2, 2, {1}, {0}));
  REQUIRE(r2.result.has_value());
  CHECK(r2.result->generator_dim == 2);

  auto r3 = closed_form_h0(FlagType::make(Series::GL, 2, 2, {1}, {1}));
  REQUIRE(r3.result.has_value());
  CHECK(r3.result->generator_dim == 0);

  auto r4 = closed_form_h0(FlagType::make(Series::GL, 2, 1, {2}, {0}));
  REQUIRE(r4.result.has_value());
  CHECK(r4.result->generator_dim == 2);
  CHECK(r4.case_label == "gl-even-chain");

  // Outside the osp hypotheses nothing is claimed.
  auto r5 = closed_form_h0(FlagType::make(Series::OSP, 0, 2, {0}, {1}));
  CHECK(!r5.result.has_value());

  auto r6 = closed_form_h0(FlagType::make(Series::Q, 3, 3, {2, 1}, {2, 1}));
  REQUIRE(r6.result.has_value());
  CHECK(r6.result->generator_dim == 0);

  // The skew-split shape with a positive head entry.
  auto r7 = closed_form_h0(FlagType::make(Series::PISP, 3, 3, {1, 0}, {2, 2}));
  REQUIRE(r7.result.has_value());
  CHECK(r7.result->generator_dim == 3);
}

TEST_CASE("per-summand injectivity reports") {
  SummandInjectivityReport r1 = summand_injectivity(FlagType::make(Series::GL, 2, 2, {1}, {1}));
  REQUIRE(r1.injective.size() == 2);
  CHECK(!r1.injective[0]);
  CHECK(!r1.injective[1]);
  CHECK(!r1.any_injective());

  SummandInjectivityReport r2 = summand_injectivity(FlagType::make(Series::GL, 2, 1, {2}, {0}));
  REQUIRE(r2.injective.size() == 2);
  CHECK(!r2.injective[0]);  // upper-right summand meets h1
  CHECK(r2.injective[1]);   // lower-left summand is clean

  // Zero odd stabilizer: everything injective.
  SummandInjectivityReport r3 = summand_injectivity(FlagType::make(Series::PISP, 1, 1, {1}, {0}));
  REQUIRE(r3.injective.size() == 1);
  CHECK(r3.injective[0]);
}

TEST_CASE("generator dim never exceeds the annihilator dim") {
  for (Series s : {Series::GL, Series::PISP, Series::Q})
    for (const FlagType& ft : enumerate_flag_types(s, 3, 3, 2)) {
      ClassifyDetail d = classify_h0_detail(ft);
      CHECK(d.result.generator_dim <= d.ann_dim);
      CHECK(d.w_vanishes_on_h1);
    }
}

TEST_CASE("classification record format is stable") {
  ClassificationRecord rec =
      classify_record(FlagType::make(Series::GL, 2, 1, {2}, {0}));
  CHECK(rec.to_record() ==
        "series=gl m=2 n=1 k=2 l=0 generator_dim=2 vs_dim=4 "
        "closed_case=gl-even-chain closed_dim=2 agree=1 h1_dim=2 ann_dim=2 "
        "summand_dims=2,2 summand_injective=0,1 w_kills_h1=1");
}

TEST_CASE("one-stage gl(2|2) sweep splits exactly at the block shapes") {
  for (const FlagType& ft : enumerate_flag_types(Series::GL, 2, 2, 1)) {
    if (ft.m != 2 || ft.n != 2) continue;
    int d = classify_h0(ft).generator_dim;
    bool block_shape = (ft.k[0] == 2 && ft.l[0] == 0) || (ft.k[0] == 0 && ft.l[0] == 2);
    CHECK(d == (block_shape ? 4 : 0));
  }
}

TEST_CASE("invariant subspaces built from root data are respected") {
  // The whole dual of g_1 is invariant; unit covectors along a single odd
  // root direction are generally not.
  const LieSuperAlgebra& g = get_algebra(Series::Q, 2, 2);
  QMatrix single = odd_subspace(g, {0});
  QMatrix w = max_invariant_submodule(g, single);
  CHECK(w.cols() == 0);
}
