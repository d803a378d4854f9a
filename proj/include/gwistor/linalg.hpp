#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gwistor/scalar.hpp"

namespace gwistor {

/// Dense matrix over either coefficient ring, just enough linear algebra for
/// the projection Gram systems, rank counts and exact null spaces.
template <class K>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<K> a;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, ring_traits<K>::zero()) {}

  K& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

namespace detail {

// Row echelon reduction in place; returns pivot column per pivot row.
// Pivoting: first nonzero for the exact ring, largest magnitude for floats.
template <class K>
std::vector<std::size_t> row_reduce(Matrix<K>& m, const K& tol) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t best = row;
    if constexpr (ring_traits<K>::exact) {
      while (best < m.rows && ring_traits<K>::is_zero(m(best, col), tol)) ++best;
      if (best == m.rows) continue;
    } else {
      for (std::size_t r = row + 1; r < m.rows; ++r)
        if (ring_traits<K>::abs_double(m(r, col)) > ring_traits<K>::abs_double(m(best, col)))
          best = r;
      if (ring_traits<K>::is_zero(m(best, col), tol)) continue;
    }
    if (best != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(row, j), m(best, j));
    K inv_pivot = m(row, col);
    for (std::size_t j = col; j < m.cols; ++j) m(row, j) = m(row, j) / inv_pivot;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == row) continue;
      K f = m(r, col);
      if (ring_traits<K>::is_zero(f, tol)) continue;
      for (std::size_t j = col; j < m.cols; ++j) m(r, j) = m(r, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <class K>
std::size_t rank(Matrix<K> m, const K& tol = ring_traits<K>::zero()) {
  return detail::row_reduce(m, tol).size();
}

/// Basis of the null space, one column vector per basis element.
template <class K>
std::vector<std::vector<K>> null_space(Matrix<K> m, const K& tol = ring_traits<K>::zero()) {
  auto pivots = detail::row_reduce(m, tol);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  for (std::size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(m.cols, ring_traits<K>::zero());
    v[free] = ring_traits<K>::from_int(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves the square system m x = b; throws on a singular matrix.
template <class K>
std::vector<K> solve(Matrix<K> m, std::vector<K> b, const K& tol = ring_traits<K>::zero()) {
  if (m.rows != m.cols || b.size() != m.rows) throw std::invalid_argument("solve: shape mismatch");
  Matrix<K> aug(m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  auto pivots = detail::row_reduce(aug, tol);
  if (pivots.size() != m.cols || pivots.back() == m.cols)
    throw std::runtime_error("solve: singular system");
  std::vector<K> x(m.cols, ring_traits<K>::zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols);
  return x;
}

}  // namespace gwistor
