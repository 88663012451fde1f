#pragma once

#include <cstddef>
#include <vector>

#include "dirackit/error.hpp"
#include "dirackit/ratfun.hpp"

namespace dirackit {

// Dense matrix over an exact field F (Rational or RatFun). The field's zero
// and one are stored explicitly because RatFun constants carry a chart.
template <class F>
struct Mat {
  std::size_t rows = 0, cols = 0;
  F zero, one;
  std::vector<F> data;

  Mat(std::size_t r, std::size_t c, F z, F o)
      : rows(r), cols(c), zero(std::move(z)), one(std::move(o)),
        data(r * c, zero) {}

  F& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const F& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline Mat<Rational> rational_matrix(std::size_t r, std::size_t c) {
  return Mat<Rational>(r, c, Rational(0), Rational(1));
}
inline Mat<RatFun> ratfun_matrix(std::size_t r, std::size_t c, const Chart& chart) {
  return Mat<RatFun>(r, c, RatFun::zero(chart), RatFun::one(chart));
}

// In-place reduced row echelon form. Pivots are the first nonzero entry in
// each column sweep (deterministic). Returns the pivot columns in order.
template <class F>
std::vector<std::size_t> rref(Mat<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && is_zero(m.at(sel, col))) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols; ++j)
        std::swap(m.at(sel, j), m.at(row, j));
    F inv = m.one / m.at(row, col);
    for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || is_zero(m.at(i, col))) continue;
      F factor = m.at(i, col);
      for (std::size_t j = col; j < m.cols; ++j)
        m.at(i, j) = m.at(i, j) - factor * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(Mat<F> m) {
  return rref(m).size();
}

template <class F>
struct LinSolution {
  bool consistent = false;
  std::vector<F> particular;            // one solution, free variables set to 0
  std::vector<std::vector<F>> kernel;   // basis of the homogeneous solutions
};

// Solves A x = b exactly. The kernel basis vectors have a single free
// variable set to one each, in ascending column order (deterministic).
template <class F>
LinSolution<F> solve_linear(const Mat<F>& A, const std::vector<F>& b) {
  if (b.size() != A.rows) throw Error("solve_linear: rhs size mismatch");
  Mat<F> aug(A.rows, A.cols + 1, A.zero, A.one);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug);

  LinSolution<F> out;
  out.consistent = pivots.empty() || pivots.back() != A.cols;
  std::vector<bool> is_pivot(A.cols, false);
  for (std::size_t p : pivots)
    if (p < A.cols) is_pivot[p] = true;

  if (out.consistent) {
    out.particular.assign(A.cols, A.zero);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      out.particular[pivots[r]] = aug.at(r, A.cols);
  }
  for (std::size_t free = 0; free < A.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(A.cols, A.zero);
    v[free] = A.one;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (pivots[r] < A.cols) v[pivots[r]] = A.zero - aug.at(r, free);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// Rank over the fraction field: the rank attained at every point outside the
// union of denominator and minor-vanishing loci.
inline std::size_t generic_rank(const Mat<RatFun>& m) { return rank(m); }

// Row-space basis as the nonzero rows of the rref (canonical).
template <class F>
std::vector<std::vector<F>> row_basis(Mat<F> m) {
  std::size_t r = rref(m).size();
  std::vector<std::vector<F>> out;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<F> row(m.cols, m.zero);
    for (std::size_t j = 0; j < m.cols; ++j) row[j] = m.at(i, j);
    out.push_back(std::move(row));
  }
  return out;
}

// span(rows of a) == span(rows of b), both subspaces of F^cols.
template <class F>
bool same_row_space(const Mat<F>& a, const Mat<F>& b) {
  if (a.cols != b.cols) return false;
  Mat<F> stacked(a.rows + b.rows, a.cols, a.zero, a.one);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) stacked.at(i, j) = a.at(i, j);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) stacked.at(a.rows + i, j) = b.at(i, j);
  std::size_t ra = rank(a), rb = rank(b);
  return ra == rb && rank(stacked) == ra;
}

// Basis of { w : v . w = 0 for every row v } (the annihilator under the
// coordinate pairing).
template <class F>
std::vector<std::vector<F>> annihilator(const Mat<F>& m) {
  std::vector<F> zero_rhs(m.rows, m.zero);
  return solve_linear(m, zero_rhs).kernel;
}

}  // namespace dirackit
