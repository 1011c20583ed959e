#pragma once

#include <span>
#include <vector>

#include "zdlab/rational.hpp"

// Data-parallel inner loops. Every kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel with the same
// signature. Parallel versions split work by output row only, so each output
// entry is computed by the same sequence of floating-point operations as in
// the serial kernel and results are bitwise identical.
namespace zdlab::kernels {

/// Compressed sparse row matrix of doubles.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col_idx;
  std::vector<double> values;

  static CsrMatrix from_dense(const RationalMatrix& m);
  CsrMatrix transposed() const;
};

enum class Policy { Serial, Parallel };

namespace serial {
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b);
RationalVector matvec(const RationalMatrix& a, const RationalVector& x);
}  // namespace serial

namespace parallel {
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
RationalMatrix matmul(const RationalMatrix& a, const RationalMatrix& b);
RationalVector matvec(const RationalMatrix& a, const RationalVector& x);
}  // namespace parallel

void spmv(Policy policy, const CsrMatrix& a, std::span<const double> x, std::span<double> y);
RationalMatrix matmul(Policy policy, const RationalMatrix& a, const RationalMatrix& b);
RationalVector matvec(Policy policy, const RationalMatrix& a, const RationalVector& x);

/// Policy used by the library when none is given. Small problems run serially.
Policy default_policy(std::size_t work);

}  // namespace zdlab::kernels
