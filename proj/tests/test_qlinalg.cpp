#include "superflag/qlinalg.hpp"

#include "doctest.h"

using namespace superflag;

namespace {

QMatrix from_rows(int rows, int cols, std::vector<long> vals) {
  QMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = vals[i * cols + j];
  return m;
}

}  // namespace

TEST_CASE("rref and rank") {
  QMatrix m = from_rows(3, 3, {1, 2, 3, 2, 4, 6, 1, 1, 1});
  CHECK(m.rank() == 2);
  CHECK(QMatrix::identity(4).rank() == 4);
  CHECK(QMatrix(3, 5).rank() == 0);
}

TEST_CASE("nullspace is exact kernel") {
  QMatrix m = from_rows(2, 3, {1, 2, 3, 0, 1, 1});
  QMatrix ker = m.nullspace();
  CHECK(ker.cols() == 1);
  CHECK(m.mul(ker).is_zero());
  // Kernel of a zero-row matrix is everything.
  CHECK(QMatrix(0, 4).nullspace().cols() == 4);
}

TEST_CASE("inverse multiplies back") {
  QMatrix m = from_rows(3, 3, {2, 1, 0, 1, 1, 1, 0, 3, 1});
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK(m.mul(*inv) == QMatrix::identity(3));
  CHECK(inv->mul(m) == QMatrix::identity(3));
  QMatrix sing = from_rows(2, 2, {1, 2, 2, 4});
  CHECK(!sing.inverse().has_value());
}

TEST_CASE("linear solver handles consistency") {
  QMatrix a = from_rows(3, 2, {1, 0, 0, 1, 1, 1});
  LinearSolver solver(a);
  auto x = solver.solve({Rational(2), Rational(3), Rational(5)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK(!solver.solve({Rational(2), Rational(3), Rational(4)}).has_value());
}

TEST_CASE("subspace comparisons are basis independent") {
  QMatrix a = from_rows(3, 2, {1, 0, 0, 1, 0, 0});
  QMatrix b = from_rows(3, 2, {1, 2, 1, 1, 0, 0});  // same plane, other basis
  CHECK(subspace_equal(a, b));
  CHECK(subspace_contains(a, b));
  QMatrix c = from_rows(3, 1, {0, 0, 1});
  CHECK(!subspace_equal(a, c));
  CHECK(subspace_intersect(a, c).cols() == 0);
  QMatrix d = from_rows(3, 2, {1, 0, 0, 0, 0, 1});
  CHECK(subspace_intersect(a, d).cols() == 1);
}

TEST_CASE("left annihilator complements the rank") {
  QMatrix a = from_rows(4, 2, {1, 0, 2, 0, 0, 1, 0, 0});
  QMatrix ann = left_annihilator(a);
  CHECK(ann.rows() == 2);
  CHECK(ann.mul(a).is_zero());
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == make_rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}
