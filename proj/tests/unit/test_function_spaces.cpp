#include <doctest.h>

#include <random>

#include "support/random_spec.hpp"
#include "zdlab/exact_linalg.hpp"
#include "zdlab/function_spaces.hpp"

using namespace zdlab;

namespace {

AtomicMeasureSpace atoms(std::initializer_list<Rational> masses) {
  std::vector<Atom> v;
  int i = 0;
  for (const auto& m : masses) v.push_back({"a" + std::to_string(i++), m});
  return AtomicMeasureSpace(std::move(v));
}

GridFunction centered(std::size_t g) {
  return GridFunction::sample(0, 1, g, AffineTag{Rational(1), Rational(-1, 2)});
}

}  // namespace

TEST_SUITE("function_spaces") {
  TEST_CASE("grid sampling and sup norm") {
    const auto f = GridFunction::sample(-1, 1, 5, MonomialTag{2});
    CHECK(f.point(1) == Rational(-1, 2));
    CHECK(f.samples()[1] == Rational(1, 4));
    CHECK(f.sup_norm() == 1);
    CHECK_THROWS_AS(GridFunction(1, 0, RationalVector(4)), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction::sample(0, 1, 2, ConstTag{1}), std::invalid_argument);
  }

  TEST_CASE("cx_is_tdz finds sample zeros and sign changes") {
    const auto a = cx_is_tdz(centered(101));
    REQUIRE(a.tdz);
    CHECK(a.zero->at_sample);
    CHECK(a.zero->exact);
    CHECK(a.zero->x == Rational(1, 2));

    const auto b = cx_is_tdz(GridFunction::sample(0, 1, 101, AffineTag{Rational(1), Rational(-1, 3)}));
    REQUIRE(b.tdz);
    CHECK_FALSE(b.zero->at_sample);
    CHECK(b.zero->exact);
    CHECK(b.zero->index == 33);
    CHECK(b.zero->x == Rational(1, 3));

    // untagged samples fall back to interpolation
    const auto c = cx_is_tdz(GridFunction(0, 1, {Rational(-1), Rational(1), Rational(3)}));
    REQUIRE(c.tdz);
    CHECK_FALSE(c.zero->exact);
    CHECK(c.zero->x == Rational(1, 4));

    CHECK_FALSE(cx_is_tdz(GridFunction::sample(0, 1, 11, AffineTag{Rational(1), Rational(2)})).tdz);

    const auto small = GridFunction::sample(0, 1, 11, ConstTag{Rational(1, 1000)});
    CHECK_FALSE(cx_is_tdz(small).tdz);
    const auto d = cx_is_tdz(small, Rational(1, 100));
    REQUIRE(d.tdz);
    CHECK(d.zero->index == 0);
    CHECK_FALSE(d.zero->exact);
  }

  TEST_CASE("urysohn hat around x = 1/2") {
    const auto f = centered(1001);
    const auto h = urysohn_sequence(f, 500, 10);
    CHECK(h.sup_norm() == 1);
    CHECK(h.samples()[500] == 1);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!is_zero(h.samples()[i])) {
        CHECK(h.point(i) > Rational(2, 5));
        CHECK(h.point(i) < Rational(3, 5));
      }
      CHECK(sgn(h.samples()[i]) >= 0);
    }
    CHECK(f.times(h).sup_norm() < Rational(1, 10));
  }

  TEST_CASE("urysohn refuses coarse grids") {
    CHECK_THROWS_AS(urysohn_sequence(centered(3), 1, 10), GridTooCoarse);
    CHECK_THROWS_AS(urysohn_sequence(centered(101), 0, 10), GridTooCoarse);
    CHECK_THROWS_AS(urysohn_sequence(centered(101), 50, 0), std::invalid_argument);
  }

  TEST_CASE("multiplication operator on a grid") {
    const auto m = mult_op_tdz(centered(1001), 50);
    CHECK(m.tdz);
    REQUIRE(m.rows.size() == 50);
    for (const auto& r : m.rows) {
      CHECK(r.sequence_norm == 1);
      CHECK(r.product_norm < Rational(1, r.n));
    }
    const auto coarse = mult_op_tdz(centered(11), 50);
    CHECK(coarse.tdz);
    CHECK(coarse.rows.size() < 50);
    CHECK(coarse.note.find("stopped") != std::string::npos);
    CHECK_FALSE(mult_op_tdz(GridFunction::sample(0, 1, 11, ConstTag{1}), 5).tdz);
  }

  TEST_CASE("atomic spaces validate masses and ids") {
    CHECK_THROWS_AS(atoms({Rational(1), Rational(0)}), std::invalid_argument);
    CHECK_THROWS_AS(atoms({Rational(-1, 2)}), std::invalid_argument);
    CHECK_THROWS_AS(AtomicMeasureSpace({{"x", 1}, {"x", 2}}), std::invalid_argument);
    const auto s = atoms({Rational(1), Rational(2)});
    CHECK(s.index_of("a1") == 1);
    CHECK_THROWS_AS(s.index_of("zz"), std::invalid_argument);
  }

  TEST_CASE("essential range and L-infinity TDZ") {
    const auto s = atoms({Rational(1), Rational(1, 2), Rational(3)});
    const SimpleFunction h(s, {Rational(2), Rational(0), Rational(2)});
    CHECK(ess_range(h) == std::vector<Rational>{0, 2});
    const auto t = linf_is_tdz(h);
    CHECK(t.tdz);
    REQUIRE(t.witness);
    CHECK(t.witness->values == RationalVector{0, 1, 0});
    CHECK(t.product_norm == 0);
    CHECK_FALSE(linf_is_tdz(SimpleFunction(s, {1, -1, 3})).tdz);
  }

  TEST_CASE("polynomial witnesses") {
    const auto s = atoms({Rational(1), Rational(1)});
    const auto p = poly_tdz_witness(SimpleFunction(s, {Rational(3), Rational(-1)}));
    CHECK(p.alpha == 3);
    CHECK(p.p.to_string() == "x - 3/1");
    CHECK(p.p(Rational(3)) == 0);
    CHECK(p.holds);

    const auto g = poly_tdz_witness(GridFunction::sample(-1, 1, 21, MonomialTag{2}), 5);
    CHECK(g.alpha == Rational(1, 4));
    CHECK(g.holds);
    CHECK(Polynomial{{Rational(1), Rational(0), Rational(-2)}}.to_string() == "-2/1*x^2 + 1/1");
    CHECK(Polynomial{{}}.to_string() == "0");
  }

  TEST_CASE("multiplication operator on an atomic space") {
    const auto s = atoms({Rational(1), Rational(1)});
    const auto m = mult_op_tdz(SimpleFunction(s, {Rational(0), Rational(5)}), 4);
    CHECK(m.tdz);
    REQUIRE(m.rows.size() == 4);
    for (const auto& r : m.rows) {
      CHECK(r.sequence_norm == 1);
      CHECK(r.product_norm == 0);
    }
    CHECK_FALSE(mult_op_tdz(SimpleFunction(s, {Rational(1), Rational(5)}), 4).tdz);
  }

  TEST_CASE("Radon-Nikodym derivative of a pushforward") {
    const auto s = atoms({Rational(1), Rational(2), Rational(1)});
    const AtomMap phi(s, {0, 0, 2});
    CHECK(radon_nikodym(phi).values == RationalVector{3, 0, 1});
    CHECK(radon_nikodym(AtomMap::identity(s)).values == RationalVector{1, 1, 1});
  }

  TEST_CASE("composition operators on atomic spaces") {
    const auto s = atoms({Rational(1), Rational(1), Rational(1)});
    const auto one = SimpleFunction::constant(s, 1);

    const auto a = lp_comp_left_zd(AtomMap(s, {0, 0, 2}), one);
    CHECK(a.verdict.status == Status::Yes);
    CHECK(a.verdict.rule == Rule::LpLeftCharacterization);
    CHECK(a.atom == std::size_t{1});
    CHECK(a.witness_verified);

    const auto b = lp_comp_left_zd(AtomMap::identity(s), one);
    CHECK(b.verdict.status == Status::No);
    CHECK(b.verdict.rule == Rule::LpLeftCharacterization);

    const auto c = lp_comp_left_zd(AtomMap::identity(s), SimpleFunction(s, {1, 0, 1}));
    CHECK(c.verdict.status == Status::Yes);
    CHECK(c.verdict.rule == Rule::Amar1);
    CHECK(c.atom == std::size_t{1});

    const auto d = lp_comp_left_zd(AtomMap::identity(s), SimpleFunction(s, {1, 2, 3}));
    CHECK(d.verdict.status == Status::No);
    CHECK(d.verdict.rule == Rule::InjectiveCorollary);

    CHECK(l2_comp_surjective(AtomMap::identity(s)));
    CHECK_FALSE(l2_comp_surjective(AtomMap(s, {0, 0, 2})));
    CHECK(atomic_operator(AtomMap(s, {1, 1, 2}), SimpleFunction(s, {2, 3, 4}))(1, 1) == 3);
  }

  TEST_CASE("property: left verdict matches singularity of the operator") {
    // exhaustive over 3 atoms, u in {0, 1, 2}^3 and every self-map
    const auto s = atoms({Rational(1), Rational(2), Rational(1, 3)});
    for (int code = 0; code < 27; ++code) {
      for (int u_code = 0; u_code < 27; ++u_code) {
        const std::vector<std::size_t> img{std::size_t(code % 3), std::size_t(code / 3 % 3), std::size_t(code / 9)};
        const RationalVector uv{u_code % 3, u_code / 3 % 3, u_code / 9};
        const AtomMap phi(s, img);
        const SimpleFunction u(s, uv);
        const auto r = lp_comp_left_zd(phi, u);
        const bool singular = linalg::rank(atomic_operator(phi, u)) < 3;
        CHECK((r.verdict.status == Status::Yes) == singular);
        if (r.verdict.status == Status::Yes) CHECK(r.witness_verified);
      }
    }
  }

  TEST_CASE("property: L-infinity TDZ is zero in the range, exhaustively") {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<Atom> v;
      for (std::size_t i = 0; i < n; ++i) v.push_back({"x" + std::to_string(i), Rational(1, i + 1)});
      const AtomicMeasureSpace s(v);
      std::size_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= 5;
      for (std::size_t code = 0; code < total; ++code) {
        RationalVector vals(n);
        std::size_t c = code;
        bool has_zero = false;
        for (std::size_t i = 0; i < n; ++i, c /= 5) {
          vals[i] = static_cast<long>(c % 5) - 2;
          has_zero = has_zero || is_zero(vals[i]);
        }
        const SimpleFunction h(s, vals);
        const auto t = linf_is_tdz(h);
        CHECK(t.tdz == has_zero);
        if (t.tdz) {
          CHECK(t.product_norm == 0);
          CHECK(t.witness->sup_norm() == 1);
        }
        const auto p = poly_tdz_witness(h);
        CHECK(p.holds);
        CHECK(linf_is_tdz(SimpleFunction(s, [&] {
                RationalVector w(n);
                for (std::size_t i = 0; i < n; ++i) w[i] = p.p(vals[i]);
                return w;
              }())).tdz);
      }
    }
  }

  TEST_CASE("property: essential range ignores mass scaling") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> val(-3, 3), mass(1, 9);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Atom> v;
      RationalVector vals;
      for (int i = 0; i < 5; ++i) {
        v.push_back({std::to_string(i), testing::ratio(mass(rng), mass(rng))});
        vals.push_back(val(rng));
      }
      const AtomicMeasureSpace s(v);
      const SimpleFunction h(s, vals);
      for (const Rational& c : {Rational(1, 7), Rational(3), Rational(100)}) {
        const SimpleFunction hs(s.rescaled(c), vals);
        CHECK(ess_range(hs) == ess_range(h));
        CHECK(linf_is_tdz(hs).tdz == linf_is_tdz(h).tdz);
      }
    }
  }
}
