#include "zdlab/exact_linalg.hpp"

#include <stdexcept>

namespace zdlab::linalg {

Echelon rref(RationalMatrix m) {
  Echelon out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t r = pivot_row;
    while (r < rows && is_zero(m(r, c))) ++r;
    if (r == rows) continue;
    if (r != pivot_row) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(r, k), m(pivot_row, k));
    }
    const Rational inv = 1 / m(pivot_row, c);
    for (std::size_t k = c; k < cols; ++k) m(pivot_row, k) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pivot_row || is_zero(m(i, c))) continue;
      const Rational factor = m(i, c);
      for (std::size_t k = c; k < cols; ++k) m(i, k) -= factor * m(pivot_row, k);
    }
    out.pivot_columns.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RationalMatrix& m) { return rref(m).pivot_columns.size(); }

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  const Echelon e = rref(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;

  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivot_columns.size(); ++i) {
      v[e.pivot_columns[i]] = -e.reduced(i, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RationalVector> left_nullspace(const RationalMatrix& m) {
  return nullspace(m.transposed());
}

bool in_span(const std::vector<RationalVector>& basis, const RationalVector& v) {
  if (basis.empty()) {
    for (const auto& q : v)
      if (!is_zero(q)) return false;
    return true;
  }
  const std::size_t len = v.size();
  RationalMatrix a(len, basis.size());
  RationalMatrix aug(len, basis.size() + 1);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != len) throw std::invalid_argument("in_span: length mismatch");
    for (std::size_t i = 0; i < len; ++i) {
      a(i, j) = basis[j][i];
      aug(i, j) = basis[j][i];
    }
  }
  for (std::size_t i = 0; i < len; ++i) aug(i, basis.size()) = v[i];
  return rank(a) == rank(aug);
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

}  // namespace zdlab::linalg
