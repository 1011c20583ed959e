#pragma once

#include <random>

#include "zdlab/lp_operators.hpp"

namespace zdlab::testing {

// mpq_class(n, d) does not reduce; comparisons need canonical form.
inline Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

/// Random symbols: exceptions on 1..k (k <= 8), tails from {shift, block,
/// power}, rational weights with |numerator|, denominator <= 10.
class SpecGenerator {
 public:
  explicit SpecGenerator(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  Rational rational(bool allow_zero = true) {
    for (;;) {
      const int num = uniform(-10, 10);
      if (num == 0 && !allow_zero) continue;
      Rational q(num, uniform(1, 10));
      q.canonicalize();
      return q;
    }
  }

  SelfMap self_map() {
    const Index k = uniform(0, 8);
    std::map<Index, Index> exc;
    for (Index i = 1; i <= k; ++i) exc[i] = uniform(1, 10);
    MapTail tail;
    switch (uniform(0, 2)) {
      case 0: tail = ShiftTail{static_cast<Index>(uniform(0, 3))}; break;
      case 1: tail = BlockTail{static_cast<Index>(uniform(1, 3)), static_cast<Index>(uniform(0, 2))}; break;
      default: tail = PowerTail{static_cast<unsigned>(uniform(2, 3))}; break;
    }
    return SelfMap(std::move(exc), k + 1, tail);
  }

  WeightSeq weight() {
    const Index k = uniform(0, 8);
    std::map<Index, Rational> exc;
    const double zero_rate = coin(0.4) ? 0.3 : 0.0;
    for (Index i = 1; i <= k; ++i) exc[i] = coin(zero_rate) ? Rational(0) : rational(false);
    WeightTail tail;
    switch (uniform(0, 3)) {
      case 0: tail = ConstWeight{coin(0.1) ? Rational(0) : rational(false)}; break;
      case 1: tail = ShiftedInverseWeight{rational(false), rational(true)}; break;
      case 2: tail = InverseWeight{rational(false)}; break;
      default: tail = GeometricWeight{rational(false), Rational(uniform(-9, 9), 10)}; break;
    }
    return WeightSeq(std::move(exc), k + 1, tail);
  }

  OperatorSpec spec(Exponent p = Exponent::two()) { return {weight(), self_map(), p}; }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace zdlab::testing
