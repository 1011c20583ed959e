#include <doctest.h>

#include "zdlab/report.hpp"

using namespace zdlab;

namespace {

const char* kCollision = R"(id: collision
space: {kind: lp, p: 2}
symbols:
  u: inv(1)
  phi:
    exceptions: {1: 1, 2: 1}
    tail: shift(0)
tasks:
  - kind: classify_right
  - kind: witness
    side: right
  - verify_all
)";

ScenarioError parse_error(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioError& e) {
    return e;
  }
  FAIL("expected a ScenarioError");
  return ScenarioError({});
}

const SchemaError* find(const ScenarioError& e, const std::string& code) {
  for (const auto& x : e.errors())
    if (x.code == code) return &x;
  return nullptr;
}

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("minimal l^p scenario") {
    const auto s = parse_scenario(kCollision);
    CHECK(s.id == "collision");
    CHECK(s.space == SpaceKind::Lp);
    CHECK(s.p == Exponent::two());
    REQUIRE(s.phi);
    CHECK((*s.phi)(2) == 1);
    CHECK((*s.phi)(7) == 7);
    REQUIRE(s.u);
    CHECK((*s.u)(4) == Rational(1, 4));
    REQUIRE(s.tasks.size() == 3);
    CHECK(s.tasks[1].side == Side::Right);
    CHECK(s.tasks[2].kind == TaskKind::VerifyAll);
  }

  TEST_CASE("negative mass is reported at its line") {
    const auto e = parse_error(R"(id: bad
space:
  kind: atomic
  atoms:
    - {id: a, mass: 1}
    - {id: b, mass: -1/2}
symbols:
  u: {a: 1, b: 1}
  phi: {a: a, b: a}
tasks: [classify_left]
)");
    const auto* x = find(e, "NEGATIVE_MASS");
    REQUIRE(x);
    CHECK(x->line == 6);
    CHECK(e.has("NEGATIVE_MASS"));
  }

  TEST_CASE("schema error codes") {
    CHECK(parse_error("id: x\nspace: {kind: lp, p: 2}\nsymbols:\n  u: wobble(1)\n  phi: shift(0)\ntasks: []\n")
              .has("UNKNOWN_TAIL_KIND"));
    const auto undefined = parse_error("id: x\nspace: {kind: lp, p: 2}\nsymbols:\n  u: const(1)\ntasks:\n  - classify_left\n");
    const auto* x = find(undefined, "UNDEFINED_SYMBOL");
    REQUIRE(x);
    CHECK(x->line == 6);
    CHECK(parse_error("id: x\nspace: {kind: hilbert}\nsymbols: {}\ntasks: []\n").has("UNKNOWN_SPACE"));
    CHECK(parse_error("id: x\nspace: {kind: lp, p: 2}\nsymbols: {u: const(1), phi: shift(0)}\ntasks: [dance]\n")
              .has("UNKNOWN_TASK"));
    CHECK(parse_error("id: x\nspace: {kind: lp, p: 2}\nsymbols: {u: const(1), phi: shift(0)}\n"
                      "tasks:\n  - {kind: tdz_demo, N: 5, n_max: 5}\n")
              .has("PARAM_RANGE"));
    CHECK(parse_error("id: x\nspace: {kind: lp, p: 2}\nsymbols: {u: const(1), phi: power(1)}\ntasks: []\n")
              .has("BAD_SYMBOL"));
    const auto one = parse_error("id: x\nspace: {kind: lp, p: 2}\nsymbols: {u: const(1), phi: power(1)}\ntasks: [classify_zd]\n");
    CHECK(one.errors().size() == 1);
    CHECK_FALSE(one.has("UNDEFINED_SYMBOL"));
    CHECK(parse_error("space: {kind: lp, p: 2}\nsymbols: {}\ntasks: []\n").has("MISSING_FIELD"));
    CHECK(parse_error("id: [unclosed\n").has("MALFORMED"));
  }

  TEST_CASE("collision scenario runs with a verified functional tensor") {
    const auto r = run(parse_scenario(kCollision));
    CHECK(r.all_ok());
    REQUIRE(r.tasks.size() == 3);
    REQUIRE(r.tasks[0].verdicts.size() >= 1);
    CHECK(r.tasks[0].verdicts[0].status == Status::Yes);
    CHECK(rule_id(r.tasks[0].verdicts[0].rule) == "Thm-Anurag31");
    REQUIRE(r.tasks[1].witnesses.size() == 1);
    CHECK(r.tasks[1].witnesses[0].witness.kind == WitnessKind::FunctionalTensor);
    CHECK(r.tasks[1].witnesses[0].verified);
    CHECK_FALSE(r.tasks[2].oracle.empty());
    for (const auto& o : r.tasks[2].oracle) CHECK(o.passed);
    CHECK(emit_report(r, ReportFormat::Table).find("Thm-Anurag31") != std::string::npos);
  }

  TEST_CASE("empty task list yields an empty report") {
    const auto r = run(parse_scenario("id: empty\nspace: {kind: lp, p: 2}\nsymbols: {u: const(1), phi: shift(0)}\ntasks: []\n"));
    CHECK(r.tasks.empty());
    CHECK(r.all_ok());
    CHECK(parse_report(emit_report(r, ReportFormat::Structured)) == r);
  }

  TEST_CASE("csv tables carry the documented columns") {
    const auto r = run(parse_scenario(
        "id: diag\nspace: {kind: lp, p: 2}\nsymbols: {u: const(1), phi: shift(0), y: inv(1)}\n"
        "tasks:\n  - {kind: tdz_demo, rule: diagonal_tail, n_max: 10, N: 11}\n"));
    CHECK(r.all_ok());
    const auto files = csv_files(r);
    REQUIRE(files.size() == 1);
    CHECK(files[0].first == "diag_task1_tdz_demo.csv");
    CHECK(files[0].second.rfind("n,value,bound,exact_zero\n", 0) == 0);
    CHECK(emit_report(r, ReportFormat::Csv).find("# diag_task1_tdz_demo.csv") != std::string::npos);
  }

  TEST_CASE("unsupported tasks fail per task") {
    const auto r = run(parse_scenario(R"(id: cx
space: {kind: cx, a: 0, b: 1, grid: 11}
symbols:
  h: affine(1, -1/2)
tasks: [classify_zd, classify_left]
)"));
    REQUIRE(r.tasks.size() == 2);
    CHECK(r.tasks[0].ok);
    CHECK_FALSE(r.tasks[1].ok);
    CHECK_FALSE(r.tasks[1].error.empty());
    CHECK_FALSE(r.all_ok());
  }

  TEST_CASE("structured reports round-trip and are deterministic") {
    const char* texts[] = {
        kCollision,
        "id: sq\nspace: {kind: lp, p: inf}\nsymbols: {u: inv(1), phi: power(2)}\n"
        "tasks: [classify_left, classify_zd, {kind: norm, N: 9}, {kind: tdz_demo, n_max: 6}]\n",
        R"(id: at
space:
  kind: atomic
  p: 2
  atoms: [{id: a, mass: 1}, {id: b, mass: 1/3}, {id: c, mass: 2}]
symbols:
  u: {a: 1, b: 1, c: 1}
  phi: {a: a, b: a, c: c}
  h: {a: 0, b: 2, c: -1}
tasks: [classify_left, classify_zd, witness, tdz_demo, verify_all]
)",
    };
    for (const char* t : texts) {
      const auto s = parse_scenario(t);
      const auto r1 = run(s), r2 = run(s);
      CHECK(r1 == r2);
      const auto y = emit_report(r1, ReportFormat::Structured);
      CHECK(y == emit_report(r2, ReportFormat::Structured));
      const auto back = parse_report(y);
      CHECK(back == r1);
      CHECK(emit_report(back, ReportFormat::Structured) == y);
    }
  }

  TEST_CASE("quantize keeps twelve significant digits") {
    CHECK(quantize(1.0 / 3.0) == 0.333333333333);
    CHECK(quantize(0.0) == 0.0);
    CHECK(quantize(quantize(2.0 / 7.0)) == quantize(2.0 / 7.0));
  }
}
