#include <doctest.h>

#include <random>

#include "support/random_spec.hpp"
#include "zdlab/exact_linalg.hpp"

using namespace zdlab;

namespace {

RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int zero_rate) {
  std::uniform_int_distribution<int> val(-4, 4), den(1, 3), z(0, 9);
  RationalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (z(rng) >= zero_rate) m(i, j) = testing::ratio(val(rng), den(rng));
  return m;
}

}  // namespace

TEST_SUITE("exact_linalg") {
  TEST_CASE("rref of a rank-deficient matrix") {
    RationalMatrix m(3, 3);
    m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
    m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
    m(2, 0) = 1; m(2, 1) = 0; m(2, 2) = 1;
    const auto e = linalg::rref(m);
    CHECK(e.pivot_columns == std::vector<std::size_t>{0, 1});
    CHECK(linalg::rank(m) == 2);
    const auto ns = linalg::nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == RationalVector{-1, -1, 1});
  }

  TEST_CASE("left nullspace annihilates from the left") {
    RationalMatrix m(3, 2);
    m(0, 0) = 1; m(1, 0) = 1; m(2, 1) = 5;
    const auto ln = linalg::left_nullspace(m);
    REQUIRE(ln.size() == 1);
    for (std::size_t c = 0; c < 2; ++c) {
      Rational s = 0;
      for (std::size_t r = 0; r < 3; ++r) s += ln[0][r] * m(r, c);
      CHECK(s == 0);
    }
  }

  TEST_CASE("rank-nullity and exact annihilation on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
      const auto m = random_matrix(rng, r, c, static_cast<int>(rng() % 8));
      const auto ns = linalg::nullspace(m);
      CHECK(linalg::rank(m) + ns.size() == c);
      for (const auto& v : ns) {
        for (std::size_t i = 0; i < r; ++i) {
          Rational s = 0;
          for (std::size_t j = 0; j < c; ++j) s += m(i, j) * v[j];
          CHECK(s == 0);
        }
      }
      CHECK(linalg::rank(m) == linalg::rank(m.transposed()));
    }
  }

  TEST_CASE("in_span") {
    std::vector<RationalVector> basis{{1, 0, 1}, {0, 1, 1}};
    CHECK(linalg::in_span(basis, {2, 3, 5}));
    CHECK_FALSE(linalg::in_span(basis, {0, 0, 1}));
    CHECK(linalg::in_span({}, {0, 0, 0}));
  }
}
