#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "support/random_spec.hpp"
#include "zdlab/lp_operators.hpp"

using namespace zdlab;

namespace {

RationalMatrix rows(std::initializer_list<std::initializer_list<int>> r) {
  RationalMatrix m(r.size(), r.begin()->size());
  std::size_t i = 0;
  for (const auto& row : r) {
    std::size_t j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

TruncatedOperator backward_shift3() { return assemble(OperatorSpec::composition(SelfMap::with_tail(ShiftTail{1})), 3); }

// Independent dense oracle: largest singular value via a symmetric eigensolve.
double eigen_spectral_norm(const RationalMatrix& m) {
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = to_double(m(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

RationalVector random_vector(testing::SpecGenerator& gen, std::size_t n) {
  RationalVector x(n);
  for (auto& v : x) v = gen.rational();
  return x;
}

}  // namespace

TEST_SUITE("lp_operators") {
  TEST_CASE("assemble examples") {
    CHECK(backward_shift3().matrix() == rows({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
    CHECK(assemble(OperatorSpec::composition(SelfMap::identity()), 3) == TruncatedOperator::identity(3));
    const auto d = assemble(OperatorSpec::multiplication(WeightSeq::with_tail(InverseWeight{1})), 3);
    CHECK(d == TruncatedOperator::diagonal({1, Rational(1, 2), Rational(1, 3)}));
    CHECK_THROWS_AS(assemble(OperatorSpec{}, 0), DimensionError);
  }

  TEST_CASE("at most one nonzero entry per row") {
    testing::SpecGenerator gen(5);
    for (int trial = 0; trial < 100; ++trial) {
      const auto spec = gen.spec();
      const auto t = assemble(spec, 16);
      for (std::size_t r = 0; r < 16; ++r) {
        int nz = 0;
        for (std::size_t c = 0; c < 16; ++c) nz += !is_zero(t.matrix()(r, c));
        CHECK(nz <= 1);
        const Index col = spec.phi(r + 1);
        if (col <= 16) CHECK(t.entry(r + 1, col) == spec.u(r + 1));
      }
    }
  }

  TEST_CASE("is_bounded examples") {
    CHECK(is_bounded(OperatorSpec::composition(SelfMap::with_tail(BlockTail{2, 0}))).bounded());
    CHECK(is_bounded(OperatorSpec::composition(SelfMap::with_tail(ConstTail{1}), Exponent::one())).status ==
          Boundedness::Status::Unbounded);
    for (auto p : {Exponent::one(), Exponent::two(), Exponent::finite(3.5), Exponent::infinity()}) {
      CHECK(is_bounded(OperatorSpec::composition(SelfMap::identity(), p)).bounded());
    }
    // A p-summable weight tames the infinite fiber.
    const OperatorSpec geo{WeightSeq::with_tail(GeometricWeight{1, Rational(1, 2)}), SelfMap::with_tail(ConstTail{1}),
                           Exponent::two()};
    CHECK(is_bounded(geo).bounded());
  }

  TEST_CASE("operator norm examples") {
    auto shift = backward_shift3();
    CHECK(operator_norm(TruncatedOperator(shift.matrix(), Exponent::infinity())).value() == 1.0);
    const auto b = assemble(OperatorSpec::composition(SelfMap::with_tail(BlockTail{2, 0})), 6);
    const auto est = operator_norm(b);
    CHECK(est.method == NormMethod::PowerIteration);
    CHECK(std::fabs(est.value() - std::sqrt(2.0)) <= 1e-10);
    CHECK(std::fabs(eigen_spectral_norm(b.matrix()) - std::sqrt(2.0)) <= 1e-10);
    for (auto p : {Exponent::one(), Exponent::two(), Exponent::finite(1.5), Exponent::infinity()}) {
      const auto e = operator_norm(TruncatedOperator::identity(7, p));
      CHECK(e.lower == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(e.upper == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("general p gives a certified interval") {
    testing::SpecGenerator gen(6);
    for (int trial = 0; trial < 40; ++trial) {
      const auto spec = gen.spec(Exponent::finite(3.0));
      const auto e = operator_norm(assemble(spec, 10));
      CHECK(e.is_interval());
      CHECK(e.lower <= e.upper + 1e-12);
      CHECK(e.lower >= 0.0);
    }
  }

  TEST_CASE("power iteration agrees with a dense eigensolver") {
    testing::SpecGenerator gen(7);
    for (int trial = 0; trial < 60; ++trial) {
      const auto t = assemble(gen.spec(), 12);
      const double oracle = eigen_spectral_norm(t.matrix());
      CHECK(operator_norm(t).value() == doctest::Approx(oracle).epsilon(1e-9));
    }
  }

  TEST_CASE("power iteration reports non-convergence") {
    RationalMatrix m = rows({{2, 1}, {1, 3}});
    NormOptions opts;
    opts.max_iterations = 1;
    try {
      spectral_norm(m, opts);
      FAIL("expected PowerIterationError");
    } catch (const PowerIterationError& e) {
      CHECK(e.iterations() == 1);
      CHECK(e.last_iterate().size() == 2);
      CHECK(e.residual() >= 0.0);
    }
  }

  TEST_CASE("apply examples") {
    CHECK(zdlab::apply(backward_shift3(), {1, 2, 3}) == RationalVector{2, 3, 0});
    CHECK(zdlab::apply(TruncatedOperator::identity(3), {Rational(1, 7), 2, -5}) == RationalVector{Rational(1, 7), 2, -5});
    CHECK(zdlab::apply(TruncatedOperator::diagonal({1, Rational(1, 2), Rational(1, 3)}), {6, 6, 6}) == RationalVector{6, 3, 2});
    CHECK_THROWS_AS(zdlab::apply(backward_shift3(), {1, 2}), DimensionError);
  }

  TEST_CASE("compose examples") {
    const auto b = backward_shift3();
    CHECK(compose(TruncatedOperator::identity(3), b) == b);
    CHECK(compose(TruncatedOperator::zero(3), b) == TruncatedOperator::zero(3));
    RationalMatrix e1(3, 3);
    e1(0, 0) = 1;
    CHECK(compose(TruncatedOperator(e1, Exponent::two()), b).matrix() == rows({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}));
    CHECK_THROWS_AS(compose(b, TruncatedOperator::identity(4)), DimensionError);
    CHECK_THROWS_AS(compose(b, TruncatedOperator::identity(3, Exponent::one())), DimensionError);
  }

  TEST_CASE("csv export") {
    CHECK(to_csv(TruncatedOperator::diagonal({1, Rational(-1, 2)})) == "1/1,0/1\n0/1,-1/2\n");
  }

  TEST_CASE("property: fiber-count norm identity") {
    testing::SpecGenerator gen(8);
    for (int trial = 0; trial < 100; ++trial) {
      const SelfMap phi = gen.self_map();
      const Index support = 6;
      const Index window = saturating_window(phi, support);
      RationalVector f(support);
      for (auto& v : f) v = gen.rational();
      for (unsigned p : {1u, 2u}) {
        Rational lhs = 0, rhs = 0;
        for (Index m = 1; m <= window; ++m) {
          const Index k = phi(m);
          if (k <= support) lhs += pow(abs(f[k - 1]), p);
        }
        for (Index n = 1; n <= support; ++n) {
          rhs += Rational(static_cast<unsigned long>(fiber(phi, n).finite_part.size())) * pow(abs(f[n - 1]), p);
        }
        CHECK(lhs == rhs);
      }
    }
  }

  TEST_CASE("property: linearity and associativity") {
    testing::SpecGenerator gen(9);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = assemble(gen.spec(), 9);
      const auto b = assemble(gen.spec(), 9);
      const auto c = assemble(gen.spec(), 9);
      const auto x = random_vector(gen, 9), y = random_vector(gen, 9);
      const Rational al = gen.rational(), be = gen.rational();
      RationalVector comb(9);
      for (std::size_t i = 0; i < 9; ++i) comb[i] = al * x[i] + be * y[i];
      const auto ax = zdlab::apply(a, x), ay = zdlab::apply(a, y), acomb = zdlab::apply(a, comb);
      for (std::size_t i = 0; i < 9; ++i) CHECK(acomb[i] == al * ax[i] + be * ay[i]);
      CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
  }

  TEST_CASE("property: truncated norms are nondecreasing in N") {
    testing::SpecGenerator gen(10);
    for (int trial = 0; trial < 25; ++trial) {
      for (auto p : {Exponent::one(), Exponent::two(), Exponent::infinity()}) {
        const auto spec = gen.spec(p);
        double prev = 0.0;
        for (std::size_t n : {8, 16, 32, 64, 128}) {
          const double v = operator_norm(assemble(spec, n)).value();
          CHECK(v >= prev - 1e-9 * std::max(1.0, prev));
          prev = v;
        }
      }
    }
  }

  TEST_CASE("window helpers") {
    const SelfMap s = SelfMap::with_tail(ShiftTail{2});
    CHECK(right_support_limit(s, 10) == 8);
    CHECK(left_support_limit(SelfMap::with_tail(BlockTail{2, 0}), 10) == 5);
    CHECK(saturating_window(SelfMap::with_tail(BlockTail{3, 0}), 4) == 12);
    CHECK_THROWS(saturating_window(SelfMap::with_tail(ConstTail{2}), 3));
  }
}
