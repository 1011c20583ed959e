#include "zdlab/tdz_sequences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace zdlab {

namespace {

void check_index(Index n, std::size_t dim, const char* what) {
  if (n < 1 || n >= dim) {
    throw std::invalid_argument(std::string(what) + ": need 1 <= n < N (n = " + std::to_string(n) +
                                ", N = " + std::to_string(dim) + ")");
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// T diag(d), exact.
RationalMatrix times_diagonal(const RationalMatrix& t, const RationalMatrix& d) {
  RationalMatrix out(t.rows(), t.cols());
  for (std::size_t c = 0; c < t.cols(); ++c) {
    if (is_zero(d(c, c))) continue;
    for (std::size_t r = 0; r < t.rows(); ++r)
      if (!is_zero(t(r, c))) out(r, c) = t(r, c) * d(c, c);
  }
  return out;
}

bool is_diagonal(const RationalMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c && !is_zero(m(r, c))) return false;
  return true;
}

// An upper bound for ||m||_p: exact at p = 1, inf; Riesz-Thorin otherwise.
double certified_upper(const RationalMatrix& m, const Exponent& p) {
  if (p.is_one()) return max_column_sum(m);
  if (p.is_infinite()) return max_row_sum(m);
  return std::pow(max_column_sum(m), 1.0 / p.value()) * std::pow(max_row_sum(m), 1.0 - 1.0 / p.value());
}

}  // namespace

TruncatedOperator tail_projection(Index n, std::size_t dim, Exponent p) {
  check_index(n, dim, "tail_projection");
  RationalMatrix m(dim, dim);
  for (std::size_t k = n; k < dim; ++k) m(k, k) = 1;
  return TruncatedOperator(std::move(m), p);
}

TruncatedOperator single_hole(Index n, std::size_t dim, Exponent p) {
  check_index(n, dim, "single_hole");
  RationalMatrix m(dim, dim);
  m(n, n) = 1;
  return TruncatedOperator(std::move(m), p);
}

bool certify_unit_norm(const TruncatedOperator& t, Index n) {
  const auto& m = t.matrix();
  if (n >= t.dim() || !is_diagonal(m)) return false;
  for (std::size_t k = 0; k < t.dim(); ++k)
    if (!is_zero(m(k, k)) && m(k, k) != 1) return false;
  return m(n, n) == 1;
}

// ---------------------------------------------------------------------------

C0Sequence::C0Sequence(WeightSeq y) : y_(std::move(y)) {
  if (!std::holds_alternative<InverseWeight>(y_.tail()) && !std::holds_alternative<GeometricWeight>(y_.tail())) {
    throw SymbolError("c0 sequence: tail must be inv or geom");
  }
}

Rational C0Sequence::tail_sup(Index m) const {
  if (m < 1) m = 1;
  Rational best = 0;
  for (const auto& [k, v] : y_.exceptions())
    if (k >= m && abs(v) > best) best = abs(v);
  const Index from = std::max(m, y_.tail_start());
  // Both catalog tails are nonincreasing in modulus.
  const Rational t = abs(y_.tail_value(from));
  return t > best ? t : best;
}

Index C0Sequence::tail_argmax(Index m) const {
  if (m < 1) m = 1;
  const Rational s = tail_sup(m);
  if (is_zero(s)) return m;
  for (const auto& [k, v] : y_.exceptions())
    if (k >= m && abs(v) == s) return k;
  return std::max(m, y_.tail_start());
}

// ---------------------------------------------------------------------------

TruncatedOperator OperatorSequenceRule::instantiate(Index n, std::size_t dim, Exponent p) const {
  switch (kind) {
    case Kind::TailProjection: return tail_projection(n, dim, p);
    case Kind::SingleHole: return single_hole(n, dim, p);
    case Kind::DiagonalTail: {
      if (!y) throw std::invalid_argument("diagonal_tail rule needs a sequence");
      check_index(n, dim, "diagonal_tail");
      RationalMatrix m(dim, dim);
      for (std::size_t k = n; k < dim; ++k) m(k, k) = (*y)(k + 1);
      return TruncatedOperator(std::move(m), p);
    }
  }
  throw std::logic_error("unreachable");
}

std::string OperatorSequenceRule::name() const {
  if (kind == Kind::DiagonalTail && y) return "diagonal_tail(" + y->describe() + ")";
  return rule_kind_name(kind);
}

std::string rule_kind_name(OperatorSequenceRule::Kind k) {
  switch (k) {
    case OperatorSequenceRule::Kind::TailProjection: return "tail_projection";
    case OperatorSequenceRule::Kind::SingleHole: return "single_hole";
    case OperatorSequenceRule::Kind::DiagonalTail: return "diagonal_tail";
  }
  return "tail_projection";
}

OperatorSequenceRule::Kind parse_rule_kind(const std::string& s) {
  if (s == "tail_projection") return OperatorSequenceRule::Kind::TailProjection;
  if (s == "single_hole") return OperatorSequenceRule::Kind::SingleHole;
  if (s == "diagonal_tail") return OperatorSequenceRule::Kind::DiagonalTail;
  throw std::invalid_argument("unknown sequence rule '" + s + "'");
}

// ---------------------------------------------------------------------------

bool ConvergenceTable::bounds_hold(double slack) const {
  return std::all_of(rows.begin(), rows.end(),
                     [&](const ConvergenceRow& r) { return !r.bound || r.value <= *r.bound + slack; });
}

bool ConvergenceTable::nonincreasing() const {
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].value > rows[i - 1].value) return false;
  return true;
}

bool ConvergenceTable::decays() const {
  if (rows.empty()) return false;
  if (rows.back().exact_zero) return true;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].value > rows[peak].value) peak = i;
  for (std::size_t i = peak + 1; i < rows.size(); ++i)
    if (rows[i].value > rows[i - 1].value) return false;
  return rows.back().value < rows[peak].value;
}

bool ConvergenceTable::below(double threshold) const {
  return !rows.empty() && (rows.back().exact_zero || rows.back().value < threshold);
}

std::string ConvergenceTable::to_csv() const {
  std::ostringstream os;
  os << "n,value,bound,exact_zero\n";
  for (const auto& r : rows) {
    os << r.n << ',' << fmt(r.value) << ',' << (r.bound ? fmt(*r.bound) : "") << ','
       << (r.exact_zero ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string ConvergenceTable::to_text() const {
  std::ostringstream os;
  if (!label.empty()) os << label << '\n';
  char line[128];
  std::snprintf(line, sizeof line, "%6s  %20s  %20s  %s\n", "n", "value", "bound", "exact_zero");
  os << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%6u  %20s  %20s  %s\n", r.n, fmt(r.value).c_str(),
                  r.bound ? fmt(*r.bound).c_str() : "-", r.exact_zero ? "yes" : "no");
    os << line;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

Probe unit_probe(Index k, std::size_t dim) {
  if (k < 1 || k > dim) throw DimensionError("unit probe e_" + std::to_string(k) + " outside the window");
  RationalVector x(dim);
  x[k - 1] = 1;
  return {"e" + std::to_string(k), std::move(x), true};
}

std::vector<Probe> default_probes(std::size_t dim) {
  std::vector<Probe> out;
  for (Index k : {1, 5, 10})
    if (k <= dim) out.push_back(unit_probe(k, dim));
  RationalVector h(dim), g(dim);
  Rational half(1, 2), power(1, 2);
  for (std::size_t i = 0; i < dim; ++i) {
    h[i] = Rational(1, static_cast<unsigned long>(i + 1));
    g[i] = power;
    power *= half;
  }
  out.push_back({"harmonic", std::move(h), false});
  out.push_back({"geometric", std::move(g), false});
  return out;
}

StrongTdzDemo strongly_tdz_demo(const TruncatedOperator& t, const OperatorSequenceRule& rule,
                                const std::vector<Probe>& probes, unsigned n_max, const NormOptions& opts) {
  for (const auto& pr : probes) {
    if (pr.x.size() != t.dim()) throw DimensionError("probe '" + pr.name + "' does not match the dimension");
  }
  StrongTdzDemo out;
  out.operator_norms.label = "||T T_n|| (" + rule.name() + ")";
  std::vector<double> probe_norms;
  for (const auto& pr : probes) {
    out.probes.push_back({"||T T_n x||, x = " + pr.name, {}});
    probe_norms.push_back(vector_norm(pr.x, t.p()));
  }
  const unsigned last = static_cast<unsigned>(std::min<std::size_t>(n_max, t.dim() - 1));
  for (unsigned n = 1; n <= last; ++n) {
    const TruncatedOperator tn = rule.instantiate(n, t.dim(), t.p());
    const RationalMatrix prod = is_diagonal(tn.matrix()) ? times_diagonal(t.matrix(), tn.matrix())
                                                         : compose(t, tn).matrix();
    const TruncatedOperator m(prod, t.p());
    const double op = operator_norm(m, opts).value();
    const double upper = certified_upper(prod, t.p());
    out.operator_norms.rows.push_back({n, op, std::nullopt, prod.is_zero()});
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const RationalVector v = apply(m, probes[i].x);
      const bool zero = std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_zero(q); });
      out.probes[i].rows.push_back({n, zero ? 0.0 : vector_norm(v, t.p()), upper * probe_norms[i], zero});
    }
  }
  return out;
}

ConvergenceTable diagonal_tdz_demo(const C0Sequence& y, unsigned n_max, std::size_t dim, Exponent p,
                                   const NormOptions& opts) {
  if (dim <= n_max) throw DimensionError("diagonal_tdz_demo: need N > n_max");
  ConvergenceTable table;
  table.label = "||T_n T||, T = diag(" + y.describe() + ")";
  for (unsigned n = 1; n <= n_max; ++n) {
    RationalMatrix m(dim, dim);
    bool zero = true;
    for (std::size_t k = n; k < dim; ++k) {
      m(k, k) = y(k + 1);
      zero = zero && is_zero(m(k, k));
    }
    const double measured = zero ? 0.0 : operator_norm(TruncatedOperator(std::move(m), p), opts).value();
    table.rows.push_back({n, measured, to_double(y.tail_sup(n + 1)), zero});
  }
  return table;
}

bool check_tdz_implies_strong(const TruncatedOperator& t, const OperatorSequenceRule& rule,
                              const std::vector<Probe>& probes, unsigned n_max, double eps,
                              const NormOptions& opts) {
  constexpr double slack = 1e-9;
  const StrongTdzDemo demo = strongly_tdz_demo(t, rule, probes, n_max, opts);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double xn = vector_norm(probes[i].x, t.p());
    for (std::size_t r = 0; r < demo.operator_norms.rows.size(); ++r) {
      const double op = demo.operator_norms.rows[r].value;
      const double v = demo.probes[i].rows[r].value;
      if (v > op * xn + slack) return false;
      if (op < eps && v > eps * xn + slack) return false;
    }
  }
  return true;
}

}  // namespace zdlab
