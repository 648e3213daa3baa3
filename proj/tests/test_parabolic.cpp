#include "superflag/flag_type.hpp"

#include "doctest.h"

#include <algorithm>

using namespace superflag;

namespace {

std::vector<Rational> unit(const LieSuperAlgebra& g, int i) {
  std::vector<Rational> v(g.dim());
  v[i] = 1;
  return v;
}

int name_index(const LieSuperAlgebra& g, const std::string& name) {
  auto it = std::find(g.names.begin(), g.names.end(), name);
  REQUIRE(it != g.names.end());
  return static_cast<int>(it - g.names.begin());
}

/// Machine check of the per-series weight chains.
void check_chain(const FlagType& ft, const WeightTuple& w) {
  auto non_increasing = [](const std::vector<int>& v) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] < v[i + 1]) return false;
    return true;
  };
  switch (ft.series) {
    case Series::GL:
    case Series::OSP: {
      CHECK(non_increasing(w.a));
      CHECK(non_increasing(w.b));
      // Stage values match between the k and l blocks they mark.
      for (int s = 1; s <= ft.stages(); ++s) {
        for (int i = 0; i < ft.k[s - 1]; ++i) CHECK(w.a[i] >= s);
        for (int j = 0; j < ft.l[s - 1]; ++j) CHECK(w.b[j] >= s);
      }
      for (int v : w.a) CHECK(v >= 0);
      for (int v : w.b) CHECK(v >= 0);
      break;
    }
    case Series::PISP: {
      // |a| non-increasing toward the middle, positive head, negative tail.
      for (int i = 0; i < ft.k[0]; ++i) CHECK(w.a[i] > 0);
      for (int i = ft.n - ft.l[0]; i < ft.n; ++i) CHECK(w.a[i] < 0);
      for (int i = ft.k[0]; i < ft.n - ft.l[0]; ++i) CHECK(w.a[i] == 0);
      for (size_t i = 0; i + 1 < w.a.size(); ++i) CHECK(w.a[i] >= w.a[i + 1]);
      break;
    }
    case Series::Q: {
      CHECK(non_increasing(w.a));
      CHECK(w.b.empty());
      break;
    }
  }
}

}  // namespace

TEST_CASE("flag type validation") {
  CHECK_NOTHROW(FlagType::make(Series::GL, 3, 2, {2, 1}, {1, 0}));
  // Stage sums must strictly decrease and stay proper.
  CHECK_THROWS_AS(FlagType::make(Series::GL, 2, 2, {2}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(FlagType::make(Series::GL, 3, 2, {1, 1}, {1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FlagType::make(Series::GL, 3, 2, {1, 2}, {0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FlagType::make(Series::OSP, 4, 2, {3}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(FlagType::make(Series::OSP, 4, 3, {1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(FlagType::make(Series::PISP, 2, 2, {2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(FlagType::make(Series::Q, 2, 2, {1}, {0}), std::invalid_argument);
  CHECK_NOTHROW(FlagType::make(Series::Q, 2, 2, {1}, {1}));
}

TEST_CASE("weight tuples from the stage rule") {
  WeightTuple w1 = weight_tuple(FlagType::make(Series::GL, 3, 2, {2, 1}, {1, 0}));
  CHECK(w1.a == std::vector<int>{2, 1, 0});
  CHECK(w1.b == std::vector<int>{1, 0});

  WeightTuple w2 = weight_tuple(FlagType::make(Series::GL, 4, 3, {2}, {2}));
  CHECK(w2.a == std::vector<int>{1, 1, 0, 0});
  CHECK(w2.b == std::vector<int>{1, 1, 0});

  WeightTuple w3 = weight_tuple(FlagType::make(Series::PISP, 3, 3, {1}, {1}));
  CHECK(w3.a == std::vector<int>{1, 0, -1});
  CHECK(w3.b.empty());

  WeightTuple w4 = weight_tuple(FlagType::make(Series::Q, 3, 3, {2, 1}, {2, 1}));
  CHECK(w4.a == std::vector<int>{2, 1, 0});

  WeightTuple w5 = weight_tuple(FlagType::make(Series::OSP, 5, 4, {2, 1}, {1, 0}));
  CHECK(w5.a == std::vector<int>{2, 1});
  CHECK(w5.b == std::vector<int>{1, 0});

  WeightTuple w6 =
      weight_tuple(FlagType::make(Series::PISP, 4, 4, {1, 0}, {3, 3}));
  CHECK(w6.a == std::vector<int>{1, -2, -2, -2});
}

TEST_CASE("weight chains hold across a sweep") {
  for (Series s : {Series::GL, Series::OSP, Series::PISP, Series::Q})
    for (const FlagType& ft : enumerate_flag_types(s, 4, 4, 3))
      check_chain(ft, weight_tuple(ft));
}

TEST_CASE("zero weights give the whole algebra") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 2);
  WeightTuple zero{{0, 0}, {0, 0}};
  Subalgebra p = parabolic_from_weights(g, zero);
  CHECK(p.dim_even() == g.dim_even());
  CHECK(p.dim_odd() == g.dim_odd());
}

TEST_CASE("parabolic dims for gl(2|2) type (1|1)") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 2);
  FlagType ft = FlagType::make(Series::GL, 2, 2, {1}, {1});
  Subalgebra p = parabolic_from_weights(g, weight_tuple(ft));
  CHECK(p.dim_even() == 6);
  CHECK(p.dim_odd() == 6);
}

TEST_CASE("parabolic odd content for gl(2|1) type (2|0)") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 1);
  FlagType ft = FlagType::make(Series::GL, 2, 1, {2}, {0});
  Subalgebra p = parabolic_from_weights(g, weight_tuple(ft));
  // Both x_i - y_1 spaces are present, neither y_1 - x_i space is.
  CHECK(subspace_contains_vector(p.odd_basis, unit(g, name_index(g, "U(1,1)"))));
  CHECK(subspace_contains_vector(p.odd_basis, unit(g, name_index(g, "U(2,1)"))));
  CHECK(!subspace_contains_vector(p.odd_basis, unit(g, name_index(g, "L(1,1)"))));
  CHECK(!subspace_contains_vector(p.odd_basis, unit(g, name_index(g, "L(1,2)"))));
  CHECK(p.dim_odd() == 2);
}

TEST_CASE("base points per series") {
  auto v1 = base_point(FlagType::make(Series::GL, 2, 2, {1}, {1}));
  CHECK(v1 == std::vector<std::vector<int>>{{1, 3}});
  auto v2 = base_point(FlagType::make(Series::PISP, 2, 2, {1}, {1}));
  CHECK(v2 == std::vector<std::vector<int>>{{1, 4}});
  auto v3 = base_point(FlagType::make(Series::Q, 2, 2, {1}, {1}));
  CHECK(v3 == std::vector<std::vector<int>>{{1, 3}});
  // Odd ambient dimension shifts the isotropic family past e_0.
  auto v4 = base_point(FlagType::make(Series::OSP, 5, 4, {2, 1}, {1, 1}));
  CHECK(v4 == std::vector<std::vector<int>>{{2, 3, 6}, {2, 6}});
  auto v5 = base_point(FlagType::make(Series::GL, 3, 2, {2, 1}, {1, 0}));
  CHECK(v5 == std::vector<std::vector<int>>{{1, 2, 4}, {1}});
}

TEST_CASE("stabilizer of the trivial flag is everything") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 2);
  Subalgebra s = stabilizer_direct(g, {{1, 2, 3, 4}});
  CHECK(s.dim_even() == g.dim_even());
  CHECK(s.dim_odd() == g.dim_odd());
}

TEST_CASE("stabilizer dims for gl(2|2) type (1|1)") {
  const LieSuperAlgebra& g = get_algebra(Series::GL, 2, 2);
  FlagType ft = FlagType::make(Series::GL, 2, 2, {1}, {1});
  Subalgebra s = stabilizer_direct(g, base_point(ft));
  CHECK(s.dim_even() == 6);
  CHECK(s.dim_odd() == 6);
  Subalgebra p = parabolic_from_weights(g, weight_tuple(ft));
  CHECK(p.same_subspace(s));
}

TEST_CASE("both constructions are closed subalgebras containing the Cartan") {
  for (Series s : {Series::GL, Series::OSP, Series::PISP, Series::Q}) {
    int max_m = (s == Series::OSP) ? 4 : 3;
    auto sweep = enumerate_flag_types(s, max_m, 3, 2);
    // A deterministic spread across the sweep; closure is quadratic in the
    // subalgebra dimension, so checking every type would dominate the suite.
    for (size_t i = 0; i < sweep.size(); i += std::max<size_t>(1, sweep.size() / 6)) {
      const FlagType& ft = sweep[i];
      const LieSuperAlgebra& g = get_algebra(s, ft.m, ft.n);
      Subalgebra stab = stabilizer_direct(g, base_point(ft));
      Subalgebra par = parabolic_from_roots(g, get_root_system(s, ft.m, ft.n),
                                            weight_tuple(ft));
      for (const Subalgebra* sub : {&stab, &par}) {
        CHECK(sub->bracket_closed());
        CHECK(sub->contains_cartan());
      }
    }
  }
}

TEST_CASE("parabolic equals stabilizer across a small sweep") {
  for (Series s : {Series::GL, Series::OSP, Series::PISP, Series::Q}) {
    int max_m = (s == Series::OSP) ? 4 : 3;
    for (const FlagType& ft : enumerate_flag_types(s, max_m, 3, 2)) {
      if (!parabolic_window(ft)) continue;
      const LieSuperAlgebra& g = get_algebra(ft.series, ft.m, ft.n);
      Subalgebra par =
          parabolic_from_roots(g, get_root_system(ft.series, ft.m, ft.n), weight_tuple(ft));
      Subalgebra stab = stabilizer_direct(g, base_point(ft));
      CHECK(par.same_subspace(stab));
    }
  }
}

TEST_CASE("refining the flag never enlarges the stabilizer") {
  for (Series s : {Series::GL, Series::PISP, Series::Q}) {
    for (const FlagType& ft : enumerate_flag_types(s, 3, 3, 3)) {
      if (ft.stages() < 2) continue;
      FlagType coarse = FlagType::make(
          s, ft.m, ft.n, std::vector<int>(ft.k.begin(), ft.k.end() - 1),
          std::vector<int>(ft.l.begin(), ft.l.end() - 1));
      const LieSuperAlgebra& g = get_algebra(s, ft.m, ft.n);
      Subalgebra fine = stabilizer_direct(g, base_point(ft));
      Subalgebra wide = stabilizer_direct(g, base_point(coarse));
      CHECK(subspace_contains(wide.even_basis, fine.even_basis));
      CHECK(subspace_contains(wide.odd_basis, fine.odd_basis));
    }
  }
}

TEST_CASE("flag enumeration counts and determinism") {
  auto q_types = enumerate_flag_types(Series::Q, 4, 4, 3);
  CHECK(q_types.size() == 11);
  auto again = enumerate_flag_types(Series::Q, 4, 4, 3);
  CHECK(q_types == again);
  CHECK(enumerate_flag_types(Series::GL, 0, 0, 2).empty());
}
