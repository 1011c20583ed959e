#include "zdlab/report.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "zdlab/exact_linalg.hpp"

namespace zdlab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string method_name(NormMethod m) {
  switch (m) {
    case NormMethod::ColumnSum: return "column_sum";
    case NormMethod::RowSum: return "row_sum";
    case NormMethod::PowerIteration: return "power_iteration";
    case NormMethod::Interpolated: return "interpolated";
  }
  return "column_sum";
}

std::string boundedness_name(const Boundedness& b) {
  switch (b.status) {
    case Boundedness::Status::Bounded: return "bounded";
    case Boundedness::Status::Unbounded: return "unbounded";
    case Boundedness::Status::Undecidable: return "undecidable";
  }
  return "undecidable";
}

void quantize_all(TaskResult& r) {
  for (auto& t : r.tables) {
    for (auto& row : t.rows) {
      row.value = quantize(row.value);
      if (row.bound) row.bound = quantize(*row.bound);
    }
  }
  for (auto& n : r.norms) {
    n.lower = quantize(n.lower);
    n.upper = quantize(n.upper);
  }
  if (r.wall_ms) r.wall_ms = quantize(*r.wall_ms);
}

// Shape facts (decay, monotonicity) are read off the values the report prints,
// so that ulp-level noise in power iteration cannot flip them.
ConvergenceTable as_printed(ConvergenceTable t) {
  for (auto& row : t.rows) row.value = quantize(row.value);
  return t;
}

WitnessRecord witness_record(const OperatorSpec& spec, Side side) {
  WitnessRecord rec;
  try {
    rec.witness = synth_witness(spec, side);
  } catch (const WitnessError& e) {
    rec.witness.side = side;
    rec.detail = e.what();
    return rec;
  }
  const WitnessCheck c = verify_witness(spec, rec.witness);
  rec.verified = c.ok;
  rec.window = c.window;
  rec.failing = c.failing;
  rec.detail = c.detail;
  return rec;
}

WitnessRecord matrix_witness(const RationalMatrix& m, Side side, Rule rule, bool verified) {
  WitnessRecord rec;
  rec.witness.side = side;
  rec.witness.kind = WitnessKind::CoordinateProjection;
  rec.witness.rule = rule;
  rec.witness.required_window = m.rows();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!is_zero(m(r, c))) rec.witness.entries.push_back({r + 1, c + 1, m(r, c)});
  rec.verified = verified;
  rec.window = m.rows();
  rec.detail = verified ? "product is exactly zero" : "product is nonzero";
  return rec;
}

void add_verdict(TaskResult& r, const OperatorSpec& spec, const Verdict& v, Side side) {
  r.verdicts.push_back(v);
  if (v.status == Status::Yes) {
    r.witnesses.push_back(witness_record(spec, v.side.value_or(side)));
    r.passed = r.passed && r.witnesses.back().verified;
  }
}

Probe named_probe(const std::string& name, std::size_t dim) {
  if (name == "harmonic" || name == "geometric") {
    for (auto& p : default_probes(dim))
      if (p.name == name) return p;
  }
  return unit_probe(std::stoull(name.substr(1)), dim);
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "}";
}

std::string yesno(bool b) { return b ? "true" : "false"; }

// --- l^p -------------------------------------------------------------------

void run_lp(const Scenario& s, const Task& t, const RunOptions& opts, TaskResult& r) {
  const unsigned n_max_default = t.n_max.value_or(opts.n_max.value_or(20));
  switch (t.kind) {
    case TaskKind::ClassifyLeft:
      add_verdict(r, s.spec(), classify_left_zd(s.spec()), Side::Left);
      return;
    case TaskKind::ClassifyRight:
      add_verdict(r, s.spec(), classify_right_zd(s.spec()), Side::Right);
      return;
    case TaskKind::ClassifyZd:
      add_verdict(r, s.spec(), classify_zd(s.spec()), Side::Left);
      return;
    case TaskKind::Witness: {
      const OperatorSpec spec = s.spec();
      Verdict v;
      Side side = Side::Left;
      if (t.side) {
        side = *t.side;
        v = side == Side::Left ? classify_left_zd(spec) : classify_right_zd(spec);
      } else {
        v = classify_zd(spec);
        side = v.side.value_or(Side::Left);
      }
      r.verdicts.push_back(v);
      if (v.status != Status::Yes) {
        r.facts.push_back({"witness", "none: " + side_name(side) + " verdict is " + status_name(v.status)});
        return;
      }
      r.witnesses.push_back(witness_record(spec, side));
      r.passed = r.witnesses.back().verified;
      return;
    }
    case TaskKind::Norm: {
      const OperatorSpec spec = s.spec();
      const std::size_t n = t.dim.value_or(8);
      NormRecord rec;
      rec.dim = n;
      rec.p = spec.p.to_string();
      rec.boundedness = boundedness_name(is_bounded(spec));
      const NormEstimate e = operator_norm(assemble(spec, n), opts.norm);
      rec.method = method_name(e.method);
      rec.lower = e.lower;
      rec.upper = e.upper;
      rec.iterations = e.iterations;
      r.norms.push_back(rec);
      r.facts.push_back({"fiber_bound", fiber_bound(spec.phi).to_string()});
      return;
    }
    case TaskKind::TdzDemo: {
      const std::string rule = t.rule.value_or(s.y ? "diagonal_tail" : "tail_projection");
      const unsigned n_max = n_max_default;
      const std::size_t dim = t.dim.value_or(n_max + 1);
      if (dim <= n_max) throw std::invalid_argument("tdz_demo needs N > n_max");
      if (rule == "diagonal_tail") {
        if (!s.y) throw std::invalid_argument("diagonal_tail needs the sequence y");
        auto table = diagonal_tdz_demo(*s.y, n_max, dim, s.p, opts.norm);
        r.passed = table.bounds_hold(1e-12);
        r.facts.push_back({"nonincreasing", yesno(as_printed(table).nonincreasing())});
        r.facts.push_back({"bound", "sup_{k>=n+1} |y_k|"});
        r.tables.push_back(std::move(table));
        return;
      }
      const TruncatedOperator op = assemble(s.spec(), dim);
      std::vector<Probe> probes;
      if (t.probes.empty()) {
        probes = default_probes(dim);
      } else {
        for (const auto& name : t.probes) probes.push_back(named_probe(name, dim));
      }
      OperatorSequenceRule seq{parse_rule_kind(rule), std::nullopt};
      auto demo = strongly_tdz_demo(op, seq, probes, n_max, opts.norm);
      bool constant_one = !demo.operator_norms.rows.empty();
      for (const auto& row : demo.operator_norms.rows) constant_one = constant_one && std::fabs(row.value - 1.0) <= 1e-12;
      r.facts.push_back({"operator_norm_column_constant_one", yesno(constant_one)});
      r.facts.push_back({"operator_norm_column_decays", yesno(as_printed(demo.operator_norms).decays())});
      for (const auto& tab : demo.probes) {
        r.passed = r.passed && tab.bounds_hold(1e-12);
        r.facts.push_back({tab.label + " decays", yesno(as_printed(tab).decays())});
      }
      const double eps = t.eps.value_or(1e-6);
      const bool implied = check_tdz_implies_strong(op, seq, probes, n_max, eps, opts.norm);
      r.facts.push_back({"probe_bound_inequality", yesno(implied)});
      r.passed = r.passed && implied;
      r.tables.push_back(std::move(demo.operator_norms));
      for (auto& tab : demo.probes) r.tables.push_back(std::move(tab));
      return;
    }
    case TaskKind::VerifyAll: {
      const OperatorSpec spec = s.spec();
      add_verdict(r, spec, classify_left_zd(spec), Side::Left);
      add_verdict(r, spec, classify_right_zd(spec), Side::Right);
      r.verdicts.push_back(classify_zd(spec));
      const std::vector<std::size_t> windows = t.windows.empty() ? std::vector<std::size_t>{8, 12} : t.windows;
      for (Side side : {Side::Left, Side::Right}) {
        for (std::size_t n : windows) {
          const OracleCheck c = oracle_cross_check(spec, side, n);
          r.oracle.push_back({side, c.requested_window, c.window, c.verdict.status, c.verdict.rule, c.passed, c.detail});
          r.passed = r.passed && c.passed;
        }
      }
      return;
    }
  }
}

// --- C[a,b] ------------------------------------------------------------------

void run_cx(const Scenario& s, const Task& t, const RunOptions& opts, TaskResult& r) {
  const Rational tol = t.tol.value_or(opts.tol.value_or(Rational(0)));
  const GridFunction& h = *s.h_grid;
  switch (t.kind) {
    case TaskKind::ClassifyZd: {
      const GridTdz g = cx_is_tdz(h, tol);
      r.facts.push_back({"tdz", yesno(g.tdz)});
      if (g.zero) {
        r.facts.push_back({"zero", to_string(g.zero->x)});
        r.facts.push_back({"zero_exact", yesno(g.zero->exact)});
      }
      return;
    }
    case TaskKind::Witness: {
      const PolyTdzWitness w = poly_tdz_witness(h);
      r.facts.push_back({"alpha", to_string(w.alpha)});
      r.facts.push_back({"polynomial", w.p.to_string()});
      r.facts.push_back({"holds", yesno(w.holds)});
      r.facts.push_back({"evidence", w.evidence});
      r.passed = w.holds;
      return;
    }
    case TaskKind::TdzDemo: {
      const MultOpTdz m = mult_op_tdz(h, t.n_max.value_or(opts.n_max.value_or(50)), tol);
      r.facts.push_back({"tdz", yesno(m.tdz)});
      r.facts.push_back({"note", m.note});
      ConvergenceTable table;
      table.label = "||h h_n||_inf";
      for (const auto& row : m.rows) {
        table.rows.push_back({row.n, to_double(row.product_norm), 1.0 / row.n, is_zero(row.product_norm)});
        r.passed = r.passed && row.sequence_norm == 1 && row.product_norm < Rational(1, row.n);
      }
      r.tables.push_back(std::move(table));
      return;
    }
    default:
      throw std::invalid_argument(task_kind_name(t.kind) + " is not applicable on C[a,b]");
  }
}

// --- atomic L^p --------------------------------------------------------------

void run_atomic(const Scenario& s, const Task& t, const RunOptions& opts, TaskResult& r) {
  auto left = [&] {
    const AtomicLeftZd z = lp_comp_left_zd(*s.phi_atomic, *s.u_atomic);
    r.verdicts.push_back(z.verdict);
    if (z.verdict.status == Status::Yes) {
      r.witnesses.push_back(matrix_witness(*z.witness, Side::Left, z.verdict.rule, z.witness_verified));
      r.passed = r.passed && z.witness_verified;
    }
    return z;
  };
  switch (t.kind) {
    case TaskKind::ClassifyLeft:
      left();
      return;
    case TaskKind::ClassifyZd: {
      const SimpleFunction& h = *s.h_atomic;
      const LinfTdz z = linf_is_tdz(h);
      r.facts.push_back({"ess_range", join_rationals(ess_range(h))});
      r.facts.push_back({"tdz", yesno(z.tdz)});
      if (z.tdz) r.facts.push_back({"product_norm", to_string(z.product_norm)});
      r.passed = !z.tdz || is_zero(z.product_norm);
      return;
    }
    case TaskKind::Witness: {
      if (s.phi_atomic && s.u_atomic) {
        const auto z = left();
        if (z.verdict.status != Status::Yes) r.facts.push_back({"witness", "none: left verdict is No"});
        return;
      }
      const PolyTdzWitness w = poly_tdz_witness(*s.h_atomic);
      r.facts.push_back({"alpha", to_string(w.alpha)});
      r.facts.push_back({"polynomial", w.p.to_string()});
      r.facts.push_back({"holds", yesno(w.holds)});
      r.facts.push_back({"evidence", w.evidence});
      r.passed = w.holds;
      return;
    }
    case TaskKind::TdzDemo: {
      const MultOpTdz m = mult_op_tdz(*s.h_atomic, t.n_max.value_or(opts.n_max.value_or(10)));
      r.facts.push_back({"tdz", yesno(m.tdz)});
      r.facts.push_back({"note", m.note});
      ConvergenceTable table;
      table.label = "||h h_n||_inf";
      for (const auto& row : m.rows) {
        table.rows.push_back({row.n, to_double(row.product_norm), 0.0, is_zero(row.product_norm)});
        r.passed = r.passed && row.sequence_norm == 1 && is_zero(row.product_norm);
      }
      r.tables.push_back(std::move(table));
      return;
    }
    case TaskKind::VerifyAll: {
      const auto z = left();
      const RationalMatrix a = atomic_operator(*s.phi_atomic, *s.u_atomic);
      const bool singular = linalg::rank(a) < a.rows();
      const bool agree = singular == (z.verdict.status == Status::Yes);
      r.oracle.push_back({Side::Left, a.rows(), a.rows(), z.verdict.status, z.verdict.rule, agree,
                          std::string("operator is ") + (singular ? "singular" : "injective")});
      r.passed = r.passed && agree;
      r.facts.push_back({"radon_nikodym", join_rationals(radon_nikodym(*s.phi_atomic).values)});
      return;
    }
    default:
      throw std::invalid_argument(task_kind_name(t.kind) + " is not applicable on an atomic space");
  }
}

// --- structured form -----------------------------------------------------

void emit_pair(YAML::Emitter& e, Index a, Index b) {
  e << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
}

void emit_verdict(YAML::Emitter& e, const Verdict& v) {
  e << YAML::BeginMap;
  e << YAML::Key << "status" << YAML::Value << status_name(v.status);
  e << YAML::Key << "rule" << YAML::Value << rule_id(v.rule);
  e << YAML::Key << "explanation" << YAML::Value << v.explanation;
  if (v.pivot) e << YAML::Key << "pivot" << YAML::Value << *v.pivot;
  if (v.collision) {
    e << YAML::Key << "collision" << YAML::Value;
    emit_pair(e, v.collision->first, v.collision->second);
  }
  if (v.side) e << YAML::Key << "side" << YAML::Value << side_name(*v.side);
  e << YAML::EndMap;
}

void emit_witness(YAML::Emitter& e, const WitnessRecord& w) {
  e << YAML::BeginMap;
  e << YAML::Key << "side" << YAML::Value << side_name(w.witness.side);
  e << YAML::Key << "kind" << YAML::Value << witness_kind_name(w.witness.kind);
  e << YAML::Key << "rule" << YAML::Value << rule_id(w.witness.rule);
  e << YAML::Key << "required_window" << YAML::Value << w.witness.required_window;
  e << YAML::Key << "entries" << YAML::Value << YAML::BeginSeq;
  for (const auto& en : w.witness.entries) {
    e << YAML::Flow << YAML::BeginSeq << en.row << en.col << to_string(en.value) << YAML::EndSeq;
  }
  e << YAML::EndSeq;
  e << YAML::Key << "witness_verified" << YAML::Value << w.verified;
  e << YAML::Key << "window" << YAML::Value << w.window;
  if (w.failing) {
    e << YAML::Key << "failing" << YAML::Value;
    emit_pair(e, w.failing->first, w.failing->second);
  }
  e << YAML::Key << "detail" << YAML::Value << w.detail;
  e << YAML::EndMap;
}

void emit_table(YAML::Emitter& e, const ConvergenceTable& t) {
  e << YAML::BeginMap;
  e << YAML::Key << "label" << YAML::Value << t.label;
  e << YAML::Key << "columns" << YAML::Value << YAML::Flow << YAML::BeginSeq << "n" << "value" << "bound"
    << "exact_zero" << YAML::EndSeq;
  e << YAML::Key << "rows" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : t.rows) {
    e << YAML::Flow << YAML::BeginSeq << r.n << fmt(r.value);
    if (r.bound) {
      e << fmt(*r.bound);
    } else {
      e << YAML::Null;
    }
    e << r.exact_zero << YAML::EndSeq;
  }
  e << YAML::EndSeq << YAML::EndMap;
}

void emit_task(YAML::Emitter& e, const TaskResult& t) {
  e << YAML::BeginMap;
  e << YAML::Key << "index" << YAML::Value << t.index;
  e << YAML::Key << "kind" << YAML::Value << task_kind_name(t.kind);
  e << YAML::Key << "ok" << YAML::Value << t.ok;
  e << YAML::Key << "passed" << YAML::Value << t.passed;
  if (!t.error.empty()) e << YAML::Key << "error" << YAML::Value << t.error;
  if (t.wall_ms) e << YAML::Key << "wall_ms" << YAML::Value << fmt(*t.wall_ms);
  if (!t.verdicts.empty()) {
    e << YAML::Key << "verdicts" << YAML::Value << YAML::BeginSeq;
    for (const auto& v : t.verdicts) emit_verdict(e, v);
    e << YAML::EndSeq;
  }
  if (!t.witnesses.empty()) {
    e << YAML::Key << "witnesses" << YAML::Value << YAML::BeginSeq;
    for (const auto& w : t.witnesses) emit_witness(e, w);
    e << YAML::EndSeq;
  }
  if (!t.norms.empty()) {
    e << YAML::Key << "norms" << YAML::Value << YAML::BeginSeq;
    for (const auto& n : t.norms) {
      e << YAML::BeginMap;
      e << YAML::Key << "N" << YAML::Value << n.dim;
      e << YAML::Key << "p" << YAML::Value << n.p;
      e << YAML::Key << "method" << YAML::Value << n.method;
      e << YAML::Key << "lower" << YAML::Value << fmt(n.lower);
      e << YAML::Key << "upper" << YAML::Value << fmt(n.upper);
      e << YAML::Key << "iterations" << YAML::Value << n.iterations;
      e << YAML::Key << "boundedness" << YAML::Value << n.boundedness;
      e << YAML::EndMap;
    }
    e << YAML::EndSeq;
  }
  if (!t.oracle.empty()) {
    e << YAML::Key << "oracle" << YAML::Value << YAML::BeginSeq;
    for (const auto& o : t.oracle) {
      e << YAML::BeginMap;
      e << YAML::Key << "side" << YAML::Value << side_name(o.side);
      e << YAML::Key << "N" << YAML::Value << o.requested;
      e << YAML::Key << "window" << YAML::Value << o.window;
      e << YAML::Key << "status" << YAML::Value << status_name(o.status);
      e << YAML::Key << "rule" << YAML::Value << rule_id(o.rule);
      e << YAML::Key << "passed" << YAML::Value << o.passed;
      e << YAML::Key << "detail" << YAML::Value << o.detail;
      e << YAML::EndMap;
    }
    e << YAML::EndSeq;
  }
  if (!t.tables.empty()) {
    e << YAML::Key << "tables" << YAML::Value << YAML::BeginSeq;
    for (const auto& tab : t.tables) emit_table(e, tab);
    e << YAML::EndSeq;
  }
  if (!t.facts.empty()) {
    e << YAML::Key << "facts" << YAML::Value << YAML::BeginSeq;
    for (const auto& [k, v] : t.facts) e << YAML::Flow << YAML::BeginSeq << k << v << YAML::EndSeq;
    e << YAML::EndSeq;
  }
  e << YAML::EndMap;
}

std::string emit_structured(const Report& r) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "scenario" << YAML::Value << r.scenario_id;
  e << YAML::Key << "all_ok" << YAML::Value << r.all_ok();
  e << YAML::Key << "tasks" << YAML::Value << YAML::BeginSeq;
  for (const auto& t : r.tasks) emit_task(e, t);
  e << YAML::EndSeq << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

std::pair<Index, Index> read_pair(const YAML::Node& n) { return {n[0].as<Index>(), n[1].as<Index>()}; }

double read_double(const YAML::Node& n) { return std::strtod(n.as<std::string>().c_str(), nullptr); }

std::string read_string(const YAML::Node& n) { return n ? n.as<std::string>() : std::string(); }

TaskResult read_task(const YAML::Node& n) {
  TaskResult t;
  t.index = n["index"].as<std::size_t>();
  t.kind = parse_task_kind(n["kind"].as<std::string>());
  t.ok = n["ok"].as<bool>();
  t.passed = n["passed"].as<bool>();
  t.error = read_string(n["error"]);
  if (n["wall_ms"]) t.wall_ms = read_double(n["wall_ms"]);
  for (const auto& v : n["verdicts"]) {
    Verdict d;
    d.status = parse_status(v["status"].as<std::string>());
    d.rule = parse_rule_id(v["rule"].as<std::string>());
    d.explanation = read_string(v["explanation"]);
    if (v["pivot"]) d.pivot = v["pivot"].as<Index>();
    if (v["collision"]) d.collision = read_pair(v["collision"]);
    if (v["side"]) d.side = parse_side(v["side"].as<std::string>());
    t.verdicts.push_back(std::move(d));
  }
  for (const auto& w : n["witnesses"]) {
    WitnessRecord rec;
    rec.witness.side = parse_side(w["side"].as<std::string>());
    rec.witness.kind = parse_witness_kind(w["kind"].as<std::string>());
    rec.witness.rule = parse_rule_id(w["rule"].as<std::string>());
    rec.witness.required_window = w["required_window"].as<Index>();
    for (const auto& en : w["entries"]) {
      rec.witness.entries.push_back({en[0].as<Index>(), en[1].as<Index>(), parse_rational(en[2].as<std::string>())});
    }
    rec.verified = w["witness_verified"].as<bool>();
    rec.window = w["window"].as<Index>();
    if (w["failing"]) rec.failing = read_pair(w["failing"]);
    rec.detail = read_string(w["detail"]);
    t.witnesses.push_back(std::move(rec));
  }
  for (const auto& m : n["norms"]) {
    NormRecord rec;
    rec.dim = m["N"].as<std::size_t>();
    rec.p = m["p"].as<std::string>();
    rec.method = m["method"].as<std::string>();
    rec.lower = read_double(m["lower"]);
    rec.upper = read_double(m["upper"]);
    rec.iterations = m["iterations"].as<std::size_t>();
    rec.boundedness = m["boundedness"].as<std::string>();
    t.norms.push_back(std::move(rec));
  }
  for (const auto& o : n["oracle"]) {
    OracleRecord rec;
    rec.side = parse_side(o["side"].as<std::string>());
    rec.requested = o["N"].as<Index>();
    rec.window = o["window"].as<Index>();
    rec.status = parse_status(o["status"].as<std::string>());
    rec.rule = parse_rule_id(o["rule"].as<std::string>());
    rec.passed = o["passed"].as<bool>();
    rec.detail = read_string(o["detail"]);
    t.oracle.push_back(std::move(rec));
  }
  for (const auto& tab : n["tables"]) {
    ConvergenceTable c;
    c.label = read_string(tab["label"]);
    for (const auto& row : tab["rows"]) {
      ConvergenceRow cr;
      cr.n = row[0].as<unsigned>();
      cr.value = read_double(row[1]);
      if (!row[2].IsNull()) cr.bound = read_double(row[2]);
      cr.exact_zero = row[3].as<bool>();
      c.rows.push_back(cr);
    }
    t.tables.push_back(std::move(c));
  }
  for (const auto& f : n["facts"]) t.facts.push_back({f[0].as<std::string>(), f[1].as<std::string>()});
  return t;
}

// --- table form ------------------------------------------------------------

std::string emit_table_text(const Report& r) {
  std::ostringstream os;
  char line[512];
  os << "scenario " << r.scenario_id << "  (" << (r.all_ok() ? "all tasks passed" : "FAILURES") << ")\n";
  for (const auto& t : r.tasks) {
    std::snprintf(line, sizeof line, "\n[%zu] %-15s %s", t.index, task_kind_name(t.kind).c_str(),
                  !t.ok ? "ERROR" : (t.passed ? "ok" : "CHECK FAILED"));
    os << line;
    if (t.wall_ms) os << "  (" << fmt(*t.wall_ms) << " ms)";
    os << '\n';
    if (!t.error.empty()) os << "    error: " << t.error << '\n';
    for (const auto& v : t.verdicts) {
      std::snprintf(line, sizeof line, "    %-8s %-6s %-8s %-20s %s\n", "verdict",
                    v.side ? side_name(*v.side).c_str() : "-", status_name(v.status).c_str(),
                    rule_id(v.rule).c_str(), v.explanation.c_str());
      os << line;
    }
    for (const auto& w : t.witnesses) {
      std::snprintf(line, sizeof line, "    %-8s %-6s %-20s window %-5llu %s\n", "witness",
                    side_name(w.witness.side).c_str(), witness_kind_name(w.witness.kind).c_str(),
                    static_cast<unsigned long long>(w.window), w.verified ? "verified" : "NOT VERIFIED");
      os << line;
      for (const auto& en : w.witness.entries) {
        os << "             T(" << en.row << "," << en.col << ") = " << to_string(en.value) << '\n';
      }
    }
    for (const auto& n : t.norms) {
      std::snprintf(line, sizeof line, "    %-8s N=%-5zu p=%-5s %-16s [%s, %s]  %s\n", "norm", n.dim, n.p.c_str(),
                    n.method.c_str(), fmt(n.lower).c_str(), fmt(n.upper).c_str(), n.boundedness.c_str());
      os << line;
    }
    for (const auto& o : t.oracle) {
      std::snprintf(line, sizeof line, "    %-8s %-6s N=%-4llu window=%-4llu %-8s %-20s %s  %s\n", "oracle",
                    side_name(o.side).c_str(), static_cast<unsigned long long>(o.requested),
                    static_cast<unsigned long long>(o.window), status_name(o.status).c_str(),
                    rule_id(o.rule).c_str(), o.passed ? "pass" : "FAIL", o.detail.c_str());
      os << line;
    }
    for (const auto& [k, v] : t.facts) os << "    " << k << ": " << v << '\n';
    for (const auto& tab : t.tables) {
      std::istringstream in(tab.to_text());
      std::string l;
      while (std::getline(in, l)) os << "    " << l << '\n';
    }
  }
  return os.str();
}

}  // namespace

double quantize(double x) { return std::strtod(fmt(x).c_str(), nullptr); }

bool Report::all_ok() const {
  for (const auto& t : tasks)
    if (!t.ok || !t.passed) return false;
  return true;
}

Report run(const Scenario& s, const RunOptions& opts) {
  Report report;
  report.scenario_id = s.id;
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const Task& t = s.tasks[i];
    TaskResult r;
    r.index = i + 1;
    r.kind = t.kind;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (s.space) {
        case SpaceKind::Lp: run_lp(s, t, opts, r); break;
        case SpaceKind::Cx: run_cx(s, t, opts, r); break;
        case SpaceKind::Atomic: run_atomic(s, t, opts, r); break;
      }
    } catch (const std::exception& e) {
      r.ok = false;
      r.passed = false;
      r.error = e.what();
    }
    if (opts.timing) {
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    quantize_all(r);
    report.tasks.push_back(std::move(r));
  }
  return report;
}

ReportFormat parse_report_format(const std::string& s) {
  if (s == "table") return ReportFormat::Table;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "structured" || s == "yaml") return ReportFormat::Structured;
  throw std::invalid_argument("unknown report format '" + s + "'");
}

std::vector<std::pair<std::string, std::string>> csv_files(const Report& r) {
  std::string stem;
  for (char c : r.scenario_id) stem += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
  if (stem.empty()) stem = "report";
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& t : r.tasks) {
    for (std::size_t k = 0; k < t.tables.size(); ++k) {
      const std::string name = stem + "_task" + std::to_string(t.index) + "_" + task_kind_name(t.kind) +
                               (t.tables.size() > 1 ? "_" + std::to_string(k + 1) : "") + ".csv";
      out.emplace_back(name, t.tables[k].to_csv());
    }
  }
  return out;
}

std::string emit_report(const Report& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Table: return emit_table_text(r);
    case ReportFormat::Structured: return emit_structured(r);
    case ReportFormat::Csv: {
      std::string out;
      for (const auto& [name, text] : csv_files(r)) out += "# " + name + "\n" + text;
      return out;
    }
  }
  return {};
}

Report parse_report(const std::string& text) {
  const YAML::Node root = YAML::Load(text);
  Report r;
  r.scenario_id = root["scenario"].as<std::string>();
  for (const auto& t : root["tasks"]) r.tasks.push_back(read_task(t));
  return r;
}

}  // namespace zdlab
