#include "zdlab/kernels.hpp"

#include <omp.h>

#include <stdexcept>

namespace zdlab::kernels {

namespace {

void check_spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  if (x.size() != a.cols || y.size() != a.rows) throw std::invalid_argument("spmv: dimension mismatch");
}

void check_matmul(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
}

// One output row of a*b, skipping structural zeros of a.
void matmul_row(const RationalMatrix& a, const RationalMatrix& b, RationalMatrix& c, std::size_t i) {
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const Rational& aik = a(i, k);
    if (is_zero(aik)) continue;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (!is_zero(b(k, j))) c(i, j) += aik * b(k, j);
    }
  }
}

Rational dot_row(const RationalMatrix& a, const RationalVector& x, std::size_t i) {
  Rational s = 0;
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (!is_zero(a(i, k)) && !is_zero(x[k])) s += a(i, k) * x[k];
  }
  return s;
}

}  // namespace

CsrMatrix CsrMatrix::from_dense(const RationalMatrix& m) {
  CsrMatrix out;
  out.rows = m.rows();
  out.cols = m.cols();
  out.row_ptr.reserve(out.rows + 1);
  out.row_ptr.push_back(0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (is_zero(m(r, c))) continue;
      out.col_idx.push_back(c);
      out.values.push_back(to_double(m(r, c)));
    }
    out.row_ptr.push_back(out.col_idx.size());
  }
  return out;
}

CsrMatrix CsrMatrix::transposed() const {
  CsrMatrix t;
  t.rows = cols;
  t.cols = rows;
  std::vector<std::size_t> counts(cols + 1, 0);
  for (auto c : col_idx) ++counts[c + 1];
  for (std::size_t c = 0; c < cols; ++c) counts[c + 1] += counts[c];
  t.row_ptr = counts;
  t.col_idx.resize(col_idx.size());
  t.values.resize(values.size());
  std::vector<std::size_t> next(counts.begin(), counts.end() - 1);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const std::size_t dst = next[col_idx[k]]++;
      t.col_idx[dst] = r;
      t.values[dst] = values[k];
    }
  }
  return t;
}

namespace serial {

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  check_spmv(a, x, y);
  for (std::size_t r = 0; r < a.rows; ++r) {
    double s = 0.0;
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) s += a.values[k] * x[a.col_idx[k]];
    y[r] = s;
  }
}

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  check_matmul(a, b);
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
  return c;
}

RationalVector matvec(const RationalMatrix& a, const RationalVector& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("matvec: dimension mismatch");
  RationalVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot_row(a, x, i);
  return y;
}

}  // namespace serial

namespace parallel {

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  check_spmv(a, x, y);
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) s += a.values[k] * x[a.col_idx[k]];
    y[r] = s;
  }
}

RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b) {
  check_matmul(a, b);
  RationalMatrix c(a.rows(), b.cols());
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < rows; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

RationalVector matvec(const RationalMatrix& a, const RationalVector& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("matvec: dimension mismatch");
  RationalVector y(a.rows());
  const auto rows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) y[i] = dot_row(a, x, static_cast<std::size_t>(i));
  return y;
}

}  // namespace parallel

void spmv(Policy policy, const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  policy == Policy::Parallel ? parallel::spmv(a, x, y) : serial::spmv(a, x, y);
}

RationalMatrix matmul(Policy policy, const RationalMatrix& a, const RationalMatrix& b) {
  return policy == Policy::Parallel ? parallel::matmul(a, b) : serial::matmul(a, b);
}

RationalVector matvec(Policy policy, const RationalMatrix& a, const RationalVector& x) {
  return policy == Policy::Parallel ? parallel::matvec(a, x) : serial::matvec(a, x);
}

Policy default_policy(std::size_t work) {
  return (work >= 1u << 14 && omp_get_max_threads() > 1) ? Policy::Parallel : Policy::Serial;
}

}  // namespace zdlab::kernels
