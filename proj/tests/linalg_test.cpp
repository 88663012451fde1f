#include <doctest.h>

#include "dirackit/error.hpp"
#include "dirackit/expr.hpp"
#include "dirackit/linalg.hpp"
#include "dirackit/sample.hpp"

using namespace dirackit;

namespace {

Mat<Rational> from_rows(const std::vector<std::vector<Rational>>& rows) {
  Mat<Rational> m = rational_matrix(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("rref normalizes pivots and clears columns") {
  Mat<Rational> m = from_rows({{2, 4, 6}, {1, 2, 4}, {0, 0, 1}});
  std::vector<std::size_t> pivots = rref(m);
  CHECK(pivots == std::vector<std::size_t>{0, 2});
  CHECK(m.at(0, 0) == Rational(1));
  CHECK(m.at(0, 1) == Rational(2));
  CHECK(m.at(0, 2) == Rational(0));
  CHECK(m.at(1, 2) == Rational(1));
  for (std::size_t j = 0; j < 3; ++j) CHECK(m.at(2, j) == Rational(0));
}

TEST_CASE("rank of rational matrices") {
  CHECK(rank(from_rows({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(from_rows({{1, 2}, {3, 4}})) == 2);
  CHECK(rank(rational_matrix(3, 3)) == 0);
}

TEST_CASE("solve_linear returns verified particular and kernel") {
  SampleStream s(5);
  for (int trial = 0; trial < 25; ++trial) {
    Mat<Rational> A = rational_matrix(3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) A.at(i, j) = s.small_rational(3);
    // Build a consistent rhs from a known solution.
    std::vector<Rational> x0;
    for (std::size_t j = 0; j < 4; ++j) x0.push_back(s.small_rational(3));
    std::vector<Rational> b(3, Rational(0));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) b[i] += A.at(i, j) * x0[j];

    LinSolution<Rational> sol = solve_linear(A, b);
    REQUIRE(sol.consistent);
    for (std::size_t i = 0; i < 3; ++i) {
      Rational acc(0);
      for (std::size_t j = 0; j < 4; ++j) acc += A.at(i, j) * sol.particular[j];
      CHECK(acc == b[i]);
    }
    for (const auto& k : sol.kernel)
      for (std::size_t i = 0; i < 3; ++i) {
        Rational acc(0);
        for (std::size_t j = 0; j < 4; ++j) acc += A.at(i, j) * k[j];
        CHECK(acc == Rational(0));
      }
    CHECK(sol.kernel.size() == 4 - rank(A));
  }
}

TEST_CASE("solve_linear flags inconsistency") {
  Mat<Rational> A = from_rows({{1, 2}, {2, 4}});
  LinSolution<Rational> sol = solve_linear(A, {Rational(1), Rational(3)});
  CHECK_FALSE(sol.consistent);
  CHECK_THROWS_AS(solve_linear(A, {Rational(1)}), Error);
}

TEST_CASE("generic rank over the fraction field") {
  Chart c({"x"});
  Mat<RatFun> m = ratfun_matrix(2, 2, c);
  m.at(0, 0) = parse_expr("x", c);
  m.at(0, 1) = RatFun::one(c);
  m.at(1, 0) = parse_expr("x^2", c);
  m.at(1, 1) = parse_expr("x", c);
  CHECK(generic_rank(m) == 1);
  m.at(1, 1) = parse_expr("x + 1", c);
  CHECK(generic_rank(m) == 2);
}

TEST_CASE("row basis and row space comparison") {
  Mat<Rational> a = from_rows({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}});
  Mat<Rational> b = from_rows({{1, 1, 2}, {1, -1, 0}});
  CHECK(row_basis(a).size() == 2);
  CHECK(same_row_space(a, b));
  Mat<Rational> c = from_rows({{1, 0, 0}});
  CHECK_FALSE(same_row_space(a, c));
}

TEST_CASE("annihilator pairs to zero and has complementary rank") {
  Mat<Rational> a = from_rows({{1, 2, 3}, {0, 1, 1}});
  std::vector<std::vector<Rational>> ann = annihilator(a);
  CHECK(ann.size() == 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < a.cols; ++j) acc += a.at(i, j) * ann[0][j];
    CHECK(acc == Rational(0));
  }
}
