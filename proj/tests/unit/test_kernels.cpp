#include <doctest.h>

#include <cstring>
#include <random>

#include "zdlab/kernels.hpp"

using namespace zdlab;

namespace {

RationalMatrix sparse_random(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() % 5 == 0) m(i, j) = Rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7) + 1);
  return m;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("csr round trip and transpose") {
    RationalMatrix m(2, 3);
    m(0, 1) = Rational(1, 2);
    m(1, 0) = 3;
    m(1, 2) = -1;
    const auto a = kernels::CsrMatrix::from_dense(m);
    CHECK(a.values.size() == 3);
    CHECK(a.row_ptr == std::vector<std::size_t>{0, 1, 3});
    const auto t = a.transposed();
    CHECK(t.rows == 3);
    CHECK(t.cols == 2);
    std::vector<double> x{1.0, 2.0}, y(3);
    kernels::serial::spmv(t, x, y);
    CHECK(y == std::vector<double>{6.0, 0.5, -2.0});
  }

  TEST_CASE("parallel spmv is bitwise equal to serial") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 50 + rng() % 200;
      const auto a = kernels::CsrMatrix::from_dense(sparse_random(rng, n, n));
      std::vector<double> x(n), ys(n), yp(n);
      for (auto& v : x) v = d(rng);
      kernels::serial::spmv(a, x, ys);
      kernels::parallel::spmv(a, x, yp);
      CHECK(bitwise_equal(ys, yp));
    }
  }

  TEST_CASE("parallel rational kernels agree exactly with serial") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 5 + rng() % 20;
      const auto a = sparse_random(rng, n, n);
      const auto b = sparse_random(rng, n, n);
      CHECK(kernels::serial::matmul(a, b) == kernels::parallel::matmul(a, b));
      RationalVector x(n);
      for (auto& v : x) v = Rational(static_cast<long>(rng() % 11) - 5, 3);
      CHECK(kernels::serial::matvec(a, x) == kernels::parallel::matvec(a, x));
    }
  }

  TEST_CASE("policy dispatch") {
    CHECK(kernels::default_policy(10) == kernels::Policy::Serial);
    RationalMatrix i = RationalMatrix::identity(4);
    CHECK(kernels::matmul(kernels::Policy::Parallel, i, i) == i);
  }
}
