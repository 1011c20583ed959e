#include <doctest.h>

#include "support/random_spec.hpp"
#include "zdlab/symbol_core.hpp"

using namespace zdlab;

namespace {

SelfMap hc31_map() { return SelfMap({{1, 1}}, 2, ShiftTail{1}); }
SelfMap block2() { return SelfMap::with_tail(BlockTail{2, 0}); }
SelfMap squares() { return SelfMap::with_tail(PowerTail{2}); }

// Every m with phi(m) = n lies below this bound for non-const tails.
Index brute_horizon(const SelfMap& phi, Index n) {
  Index h = phi.tail_start() + n + 1;
  if (const auto* b = std::get_if<BlockTail>(&phi.tail())) h += b->d * (n + 1);
  return h;
}

std::vector<Index> brute_fiber(const SelfMap& phi, Index n) {
  std::vector<Index> out;
  for (Index m = 1; m <= brute_horizon(phi, n); ++m)
    if (phi(m) == n) out.push_back(m);
  return out;
}

}  // namespace

TEST_SUITE("symbol_core") {
  TEST_CASE("fiber examples") {
    CHECK(fiber(hc31_map(), 2).empty());
    CHECK(fiber(SelfMap::identity(), 5).finite_part == std::vector<Index>{5});
    CHECK(fiber(block2(), 3).finite_part == std::vector<Index>{5, 6});
    const auto f = fiber(SelfMap({{1, 2}}, 2, ConstTail{1}), 1);
    CHECK(f.infinite());
    CHECK(f.tail_progression == Progression{2, 1});
    CHECK(f.cardinality() == Cardinal::aleph0());
  }

  TEST_CASE("injectivity examples") {
    CHECK(is_injective(SelfMap::identity()));
    CHECK_FALSE(is_injective(block2()));
    CHECK(is_injective(squares()));
  }

  TEST_CASE("surjectivity examples") {
    CHECK_FALSE(is_surjective(hc31_map()));
    CHECK(is_surjective(block2()));
    CHECK_FALSE(is_surjective(squares()));
    CHECK(first_empty_fiber(squares()) == Index{2});
    CHECK(first_empty_fiber(hc31_map()) == Index{2});
  }

  TEST_CASE("fiber bound examples") {
    CHECK(fiber_bound(SelfMap::identity()) == Cardinal::finite(1));
    CHECK(fiber_bound(block2()) == Cardinal::finite(2));
    CHECK(fiber_bound(SelfMap::with_tail(ConstTail{1})).infinite);
    CHECK(fiber_bound(SelfMap({{1, 3}, {2, 3}}, 3, BlockTail{3, 0})) == Cardinal::finite(5));
  }

  TEST_CASE("zero set examples") {
    const WeightSeq u1({{1, Rational(0)}}, 2, InverseWeight{1});
    CHECK(zero_set(u1).finite == std::vector<Index>{1});
    CHECK_FALSE(zero_set(u1).tail_from);
    CHECK(zero_set(WeightSeq::constant(1)).empty());
    const WeightSeq u2({{1, Rational(0)}, {2, Rational(0)}}, 3, ConstWeight{1});
    CHECK(zero_set(u2).finite == std::vector<Index>{1, 2});
    const WeightSeq u3({{1, Rational(1)}}, 2, ConstWeight{0});
    CHECK(zero_set(u3).tail_from == Index{2});
    CHECK(zero_set(WeightSeq::with_tail(ShiftedInverseWeight{1, -3})).finite == std::vector<Index>{3});
  }

  TEST_CASE("bounded away from zero examples") {
    CHECK(is_bounded_away_from_zero(WeightSeq::with_tail(ShiftedInverseWeight{1, 1})));
    CHECK_FALSE(is_bounded_away_from_zero(WeightSeq::with_tail(InverseWeight{1})));
    CHECK(is_bounded_away_from_zero(WeightSeq::constant(1)));
    CHECK_FALSE(is_bounded_away_from_zero(WeightSeq::with_tail(ShiftedInverseWeight{1, -2})));
    CHECK_FALSE(is_bounded_away_from_zero(WeightSeq::with_tail(GeometricWeight{1, Rational(1, 2)})));
  }

  TEST_CASE("construction rejects malformed symbols") {
    CHECK_THROWS_AS(SelfMap({{2, 1}}, 3, ShiftTail{0}), SymbolError);
    CHECK_THROWS_AS(SelfMap({{1, 0}}, 2, ShiftTail{0}), SymbolError);
    CHECK_THROWS_AS(SelfMap::with_tail(PowerTail{1}), SymbolError);
    CHECK_THROWS_AS(WeightSeq::with_tail(GeometricWeight{1, 1}), SymbolError);
  }

  TEST_CASE("property: symbolic fibers match enumeration") {
    testing::SpecGenerator gen(101);
    for (int trial = 0; trial < 300; ++trial) {
      const SelfMap phi = gen.self_map();
      for (Index n = 1; n <= 100; ++n) {
        const auto f = fiber(phi, n);
        REQUIRE_FALSE(f.infinite());
        CHECK(f.finite_part == brute_fiber(phi, n));
      }
    }
  }

  TEST_CASE("property: injectivity and surjectivity agree with enumeration on 1..200") {
    testing::SpecGenerator gen(202);
    for (int trial = 0; trial < 300; ++trial) {
      const SelfMap phi = gen.self_map();
      std::size_t worst = 0;
      bool empty_seen = false;
      for (Index n = 1; n <= 200; ++n) {
        const auto b = brute_fiber(phi, n);
        worst = std::max(worst, b.size());
        empty_seen = empty_seen || b.empty();
      }
      CHECK(is_injective(phi) == (worst <= 1));
      CHECK(is_injective(phi) == fiber_bound(phi).at_most(1));
      CHECK(fiber_bound(phi) == Cardinal::finite(worst));
      CHECK(is_surjective(phi) == !empty_seen);
    }
  }

  TEST_CASE("property: const tails have exactly one infinite fiber") {
    for (Index c = 1; c <= 4; ++c) {
      const SelfMap phi({{1, 3}, {2, c}}, 3, ConstTail{c});
      for (Index n = 1; n <= 6; ++n) {
        const auto f = fiber(phi, n);
        CHECK(f.infinite() == (n == c));
        for (Index m = 1; m <= 40; ++m) CHECK(f.contains(m) == (phi(m) == n));
      }
    }
  }

  TEST_CASE("property: zero set and bounded-away status are scale invariant") {
    testing::SpecGenerator gen(303);
    const Rational scales[] = {Rational(-1, 3), Rational(1, 3), Rational(2), Rational(-2), Rational(5)};
    for (int trial = 0; trial < 300; ++trial) {
      const WeightSeq u = gen.weight();
      for (const auto& c : scales) {
        const WeightSeq v = u.scaled(c);
        CHECK(zero_set(v) == zero_set(u));
        CHECK(is_bounded_away_from_zero(v) == is_bounded_away_from_zero(u));
        for (Index n = 1; n <= 20; ++n) CHECK(v(n) == c * u(n));
      }
    }
  }

  TEST_CASE("property: zero set matches pointwise evaluation") {
    testing::SpecGenerator gen(404);
    for (int trial = 0; trial < 300; ++trial) {
      const WeightSeq u = gen.weight();
      const ZeroSet z = zero_set(u);
      for (Index n = 1; n <= 150; ++n) CHECK(z.contains(n) == is_zero(u(n)));
    }
  }
}
