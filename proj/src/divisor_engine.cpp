#include "zdlab/divisor_engine.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "zdlab/exact_linalg.hpp"

namespace zdlab {

std::string witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::CoordinateProjection: return "coordinate_projection";
    case WitnessKind::SpanProjection: return "span_projection";
    case WitnessKind::FunctionalTensor: return "functional_tensor";
    case WitnessKind::KernelTensor: return "kernel_tensor";
  }
  return "coordinate_projection";
}

WitnessKind parse_witness_kind(const std::string& s) {
  for (auto k : {WitnessKind::CoordinateProjection, WitnessKind::SpanProjection,
                 WitnessKind::FunctionalTensor, WitnessKind::KernelTensor}) {
    if (witness_kind_name(k) == s) return k;
  }
  throw std::invalid_argument("unknown witness kind '" + s + "'");
}

RationalMatrix Witness::matrix(std::size_t n) const {
  RationalMatrix m(n, n);
  for (const auto& e : entries) {
    if (e.row > n || e.col > n) throw WitnessError("witness entry outside the window");
    m(e.row - 1, e.col - 1) += e.value;
  }
  return m;
}

std::vector<Index> Witness::row_support() const {
  std::set<Index> s;
  for (const auto& e : entries)
    if (!is_zero(e.value)) s.insert(e.row);
  return {s.begin(), s.end()};
}

std::vector<Index> Witness::column_support() const {
  std::set<Index> s;
  for (const auto& e : entries)
    if (!is_zero(e.value)) s.insert(e.col);
  return {s.begin(), s.end()};
}

namespace {

void require_bounded(const OperatorSpec& spec) {
  const auto b = is_bounded(spec);
  if (!b.bounded()) throw UnboundedOperatorError("operator is not bounded: " + b.reason);
}

bool fiber_inside(const FiberDescriptor& f, const ZeroSet& z) {
  for (auto m : f.finite_part)
    if (!z.contains(m)) return false;
  if (f.tail_progression) {
    // Catalog progressions have stride 1.
    if (!z.contains_all_from(f.tail_progression->first)) return false;
  }
  return true;
}

std::string join(const std::vector<Index>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

std::optional<Index> fiber_inside_zero_set(const SelfMap& phi, const ZeroSet& z, bool allow_infinite) {
  if (z.empty()) return std::nullopt;
  // Any qualifying n0 is an exception value or the image of a tail point below
  // this horizon: past it, tail fibers are disjoint from the exception region
  // and enough distinct tail images exist to avoid every exception value.
  std::set<Index> values;
  for (const auto& [m, v] : phi.exceptions()) values.insert(v);
  const Cardinal mult = phi.tail_multiplicity();
  const Index d = mult.infinite ? 1 : std::max<Index>(mult.count, 1);
  Index horizon = std::max(phi.tail_start(), z.tail_from.value_or(1));
  if (!z.finite.empty()) horizon = std::max(horizon, z.finite.back());
  horizon += (values.size() + 2) * d + 2;

  std::set<Index> candidates = values;
  for (Index m = phi.tail_start(); m <= horizon; ++m) {
    const Index v = phi(m);
    if (v != kBeyond) candidates.insert(v);
  }
  for (Index n0 : candidates) {
    const auto f = fiber(phi, n0);
    if (f.empty() || (f.infinite() && !allow_infinite)) continue;
    if (fiber_inside(f, z)) return n0;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Classification

Verdict classify_right_zd(const OperatorSpec& spec) {
  require_bounded(spec);
  const ZeroSet z = zero_set(spec.u);
  Verdict v;
  if (z.empty()) {
    v.rule = Rule::Anurag31;
    if (auto c = first_collision(spec.phi)) {
      v.status = Status::Yes;
      v.collision = c;
      v.pivot = spec.phi(c->first);
      v.explanation = "u has no zeros and phi is not injective: phi(" + std::to_string(c->first) +
                      ") = phi(" + std::to_string(c->second) + ") = " + std::to_string(*v.pivot);
    } else {
      v.status = Status::No;
      v.explanation = "u has no zeros and phi is injective";
    }
    return v;
  }
  if (auto n0 = fiber_inside_zero_set(spec.phi, z, false)) {
    v.status = Status::Yes;
    v.rule = Rule::Hc31;
    v.pivot = n0;
    v.explanation = "fiber of " + std::to_string(*n0) + " = {" + join(fiber(spec.phi, *n0).finite_part) +
                    "} lies in Z(u)";
    return v;
  }
  // Z(u) is nonempty here, so the zero-weight rule always applies.
  v.status = Status::Yes;
  v.rule = Rule::ZeroWeight;
  v.pivot = z.smallest();
  v.explanation = "u(" + std::to_string(*v.pivot) + ") = 0, so coordinate " + std::to_string(*v.pivot) +
                  " of every vector in the range vanishes";
  return v;
}

Verdict classify_left_zd(const OperatorSpec& spec) {
  require_bounded(spec);
  const ZeroSet z = zero_set(spec.u);
  Verdict v;
  const auto empty = first_empty_fiber(spec.phi);
  if (z.empty()) {
    v.rule = Rule::Anurag13;
    if (empty) {
      v.status = Status::Yes;
      v.pivot = empty;
      v.explanation = "u has no zeros and phi misses " + std::to_string(*empty);
    } else {
      v.status = Status::No;
      v.explanation = "u has no zeros and phi is surjective";
    }
    return v;
  }
  if (empty) {
    v.status = Status::Yes;
    v.rule = Rule::HCsir1;
    v.pivot = empty;
    v.explanation = "phi is not surjective: fiber of " + std::to_string(*empty) + " is empty";
    return v;
  }
  if (auto n0 = fiber_inside_zero_set(spec.phi, z, true)) {
    v.status = Status::Yes;
    v.rule = Rule::FiberZero;
    v.pivot = n0;
    v.explanation = "u vanishes on the whole fiber of " + std::to_string(*n0);
    return v;
  }
  // phi is surjective and no fiber lies inside Z(u): every fiber carries a
  // point where u is nonzero, so u C_phi is injective.
  v.status = Status::No;
  v.rule = Rule::InjectiveCorollary;
  v.explanation = "phi is surjective and every fiber has a point where u is nonzero";
  return v;
}

Verdict classify_zd(const OperatorSpec& spec) {
  require_bounded(spec);
  const ZeroSet z = zero_set(spec.u);
  const bool invertible = is_invertible(spec.phi);
  Verdict v;
  if (z.empty() && !invertible) {
    v.status = Status::Yes;
    v.rule = Rule::Anurag34;
    v.side = is_injective(spec.phi) ? Side::Left : Side::Right;
    v.explanation = "u has no zeros and phi is not invertible";
    return v;
  }
  if (is_bounded_away_from_zero(spec.u)) {
    // Reached only with phi invertible: the Yes case was decided above.
    v.status = Status::No;
    v.rule = Rule::TdzUC;
    v.explanation = "u is bounded away from zero and phi is invertible";
    return v;
  }
  const Verdict right = classify_right_zd(spec);
  const Verdict left = classify_left_zd(spec);
  v.rule = Rule::LeftRightCombined;
  if (right.status == Status::Yes || left.status == Status::Yes) {
    v.status = Status::Yes;
    v.side = right.status == Status::Yes ? Side::Right : Side::Left;
    const Verdict& used = right.status == Status::Yes ? right : left;
    v.pivot = used.pivot;
    v.collision = used.collision;
    v.explanation = side_name(*v.side) + " zero divisor by " + rule_id(used.rule) + ": " + used.explanation;
  } else if (right.status == Status::Unknown || left.status == Status::Unknown) {
    v.status = Status::Unknown;
    v.explanation = "one-sided verdicts: right " + status_name(right.status) + ", left " +
                    status_name(left.status);
  } else {
    v.status = Status::No;
    v.explanation = "neither a right (" + rule_id(right.rule) + ") nor a left (" + rule_id(left.rule) +
                    ") zero divisor";
  }
  return v;
}

// ---------------------------------------------------------------------------
// Witness synthesis

namespace {

Index left_window(const OperatorSpec& spec, const Witness& w) {
  Index n = 1;
  for (const auto& e : w.entries) n = std::max({n, e.row, e.col});
  const ZeroSet z = zero_set(spec.u);
  for (Index i : w.row_support()) {
    const auto f = fiber(spec.phi, i);
    if (!f.finite_part.empty()) n = std::max(n, f.finite_part.back());
    if (f.tail_progression) {
      if (!z.contains_all_from(f.tail_progression->first)) {
        throw WitnessError("cannot bound the support: infinite fiber of " + std::to_string(i) +
                           " is not inside Z(u)");
      }
      n = std::max(n, f.tail_progression->first);
    }
  }
  return n;
}

Index right_window(const OperatorSpec& spec, const Witness& w) {
  Index n = 1;
  for (const auto& e : w.entries) n = std::max({n, e.row, e.col});
  for (Index m : w.column_support()) n = std::max(n, spec.phi(m));
  return n;
}

void finish(const OperatorSpec& spec, Witness& w) {
  w.required_window = w.side == Side::Left ? left_window(spec, w) : right_window(spec, w);
  if (w.required_window > kMaxWitnessWindow) {
    throw WitnessError("required window " + std::to_string(w.required_window) + " exceeds " +
                       std::to_string(kMaxWitnessWindow));
  }
  const auto check = verify_witness(spec, w);
  if (!check.ok) throw WitnessError("synthesized witness failed verification: " + check.detail);
}

}  // namespace

Witness synth_left_witness(const OperatorSpec& spec) {
  const Verdict v = classify_left_zd(spec);
  if (v.status != Status::Yes) {
    throw WitnessError("no left witness: classify_left_zd is " + status_name(v.status));
  }
  Witness w;
  w.side = Side::Left;
  w.rule = v.rule;
  const Index n0 = *v.pivot;
  if (v.rule == Rule::Anurag13 && !spec.u.is_identically(1)) {
    // T f = f(1) chi_{n0}; u C_phi chi_{n0} = u chi_{fiber(n0)} = 0.
    w.kind = WitnessKind::KernelTensor;
    w.entries = {{n0, 1, Rational(1)}};
  } else {
    // Projection onto [chi_{n0}]: the fiber of n0 is empty or inside Z(u).
    w.kind = WitnessKind::CoordinateProjection;
    w.entries = {{n0, n0, Rational(1)}};
  }
  finish(spec, w);
  return w;
}

Witness synth_right_witness(const OperatorSpec& spec) {
  const Verdict v = classify_right_zd(spec);
  if (v.status != Status::Yes) {
    throw WitnessError("no right witness: classify_right_zd is " + status_name(v.status));
  }
  Witness w;
  w.side = Side::Right;
  w.rule = v.rule;
  switch (v.rule) {
    case Rule::Hc31: {
      const auto f = fiber(spec.phi, *v.pivot);
      w.kind = f.finite_part.size() == 1 ? WitnessKind::CoordinateProjection : WitnessKind::SpanProjection;
      for (Index m : f.finite_part) w.entries.push_back({m, m, Rational(1)});
      break;
    }
    case Rule::ZeroWeight:
      w.kind = WitnessKind::CoordinateProjection;
      w.entries = {{*v.pivot, *v.pivot, Rational(1)}};
      break;
    case Rule::Anurag31: {
      // lambda(g) = u(b) g(a) - u(a) g(b) kills the range: (u C_phi f)(a) and
      // (u C_phi f)(b) are u(a) f(n0) and u(b) f(n0).
      const auto [a, b] = *v.collision;
      w.kind = WitnessKind::FunctionalTensor;
      w.entries = {{1, a, spec.u(b)}, {1, b, Rational(-spec.u(a))}};
      break;
    }
    default:
      throw WitnessError("no right witness construction for rule " + rule_id(v.rule));
  }
  finish(spec, w);
  return w;
}

Witness synth_witness(const OperatorSpec& spec, Side side) {
  return side == Side::Left ? synth_left_witness(spec) : synth_right_witness(spec);
}

// ---------------------------------------------------------------------------
// Verification

WitnessCheck verify_witness(const OperatorSpec& spec, const Witness& w) {
  WitnessCheck out;
  const Index n = w.required_window;
  out.window = n;
  if (n < 1 || n > kMaxWitnessWindow) {
    out.detail = "window " + std::to_string(n) + " out of range";
    return out;
  }
  bool nonzero = false;
  for (const auto& e : w.entries) {
    if (e.row < 1 || e.col < 1 || e.row > n || e.col > n) {
      out.detail = "entry (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") outside window";
      out.failing = std::make_pair(e.row, e.col);
      return out;
    }
    nonzero = nonzero || !is_zero(e.value);
  }
  if (!nonzero) {
    out.detail = "witness is the zero operator";
    return out;
  }

  const TruncatedOperator a = assemble(spec, n);
  const TruncatedOperator t(w.matrix(n), spec.p);
  const TruncatedOperator product = w.side == Side::Left ? compose(a, t) : compose(t, a);
  out.product_zero = true;
  for (std::size_t r = 0; r < n && out.product_zero; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!is_zero(product.matrix()(r, c))) {
        out.product_zero = false;
        out.failing = std::make_pair(static_cast<Index>(r + 1), static_cast<Index>(c + 1));
        out.detail = "product entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                     ") = " + to_string(product.matrix()(r, c));
        break;
      }
    }
  }

  // Beyond the window: rows/columns of the infinite product that the
  // truncation cannot see.
  out.tail_certified = true;
  if (w.side == Side::Left) {
    // (u C_phi T)[m][j] = u(m) T[phi(m)][j]; rows m > n matter only when
    // phi(m) is a row of T.
    const ZeroSet z = zero_set(spec.u);
    for (Index i : w.row_support()) {
      const auto f = fiber(spec.phi, i);
      for (Index m : f.finite_part) {
        if (m > n && !z.contains(m)) {
          out.tail_certified = false;
          out.failing = std::make_pair(m, i);
          out.detail = "row " + std::to_string(m) + " beyond the window maps onto witness row " +
                       std::to_string(i) + " with u nonzero";
        }
      }
      if (f.tail_progression && !z.contains_all_from(std::max(f.tail_progression->first, n + 1))) {
        out.tail_certified = false;
        out.detail = "infinite fiber of " + std::to_string(i) + " is not inside Z(u)";
      }
    }
  } else {
    // (T u C_phi)[i][k] = sum over m with phi(m) = k of T[i][m] u(m); columns
    // k > n collect the witness columns mapped out of the window.
    std::map<Index, std::vector<Index>> outside;
    for (Index m : w.column_support()) {
      const Index k = spec.phi(m);
      if (k > n) outside[k].push_back(m);
    }
    for (const auto& [k, ms] : outside) {
      for (Index i : w.row_support()) {
        Rational s = 0;
        for (const auto& e : w.entries)
          if (e.row == i && std::find(ms.begin(), ms.end(), e.col) != ms.end()) s += e.value * spec.u(e.col);
        if (!is_zero(s)) {
          out.tail_certified = false;
          out.failing = std::make_pair(i, k);
          out.detail = "column " + std::to_string(k) + " beyond the window is not annihilated";
        }
      }
    }
  }
  out.ok = out.product_zero && out.tail_certified;
  if (out.ok) {
    out.detail = "product zero on window " + std::to_string(n) + "; tail certified";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle

std::optional<RationalMatrix> oracle_annihilator(const TruncatedOperator& a, Side side) {
  const std::size_t n = a.dim();
  const auto basis = side == Side::Left ? linalg::nullspace(a.matrix()) : linalg::left_nullspace(a.matrix());
  if (basis.empty()) return std::nullopt;
  RationalMatrix t(n, n);
  for (std::size_t j = 0; j < std::min(n, basis.size()); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (side == Side::Left) {
        t(i, j) = basis[j][i];
      } else {
        t(j, i) = basis[j][i];
      }
    }
  }
  const RationalMatrix check = side == Side::Left ? linalg::multiply(a.matrix(), t) : linalg::multiply(t, a.matrix());
  if (!check.is_zero()) throw std::logic_error("oracle_annihilator: elimination produced a non-annihilator");
  return t;
}

OracleCheck oracle_cross_check(const OperatorSpec& spec, Side side, Index n) {
  OracleCheck out;
  out.side = side;
  out.requested_window = n;
  out.window = n;
  out.verdict = side == Side::Left ? classify_left_zd(spec) : classify_right_zd(spec);

  if (out.verdict.status == Status::Yes) {
    const Witness w = synth_witness(spec, side);
    const auto check = verify_witness(spec, w);
    out.window = std::max(n, w.required_window);
    const TruncatedOperator a = assemble(spec, out.window);
    const auto basis = side == Side::Left ? linalg::nullspace(a.matrix()) : linalg::left_nullspace(a.matrix());
    const auto oracle = oracle_annihilator(a, side);
    if (!check.ok || !oracle) {
      out.detail = !check.ok ? "witness failed: " + check.detail : "oracle found no annihilator";
      return out;
    }
    // Each nonzero column (left) or row (right) of the witness must lie in
    // the annihilator space found by elimination.
    const RationalMatrix wm = w.matrix(out.window);
    for (std::size_t k = 0; k < out.window; ++k) {
      RationalVector v = side == Side::Left ? wm.column(k) : wm.row(k);
      if (std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_zero(q); })) continue;
      if (!linalg::in_span(basis, v)) {
        out.detail = "witness vector " + std::to_string(k + 1) + " is outside the oracle annihilator space";
        return out;
      }
    }
    out.passed = true;
    out.detail = "oracle annihilator space has dimension " + std::to_string(basis.size()) +
                 " and contains the witness";
    return out;
  }

  if (out.verdict.status == Status::No) {
    const TruncatedOperator a = assemble(spec, n);
    if (side == Side::Left) {
      const Index k = left_support_limit(spec.phi, n);
      RationalMatrix sub(n, k);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = a.matrix()(r, c);
      const auto ns = linalg::nullspace(sub);
      out.passed = ns.empty();
      out.detail = "admissible support {1.." + std::to_string(k) + "}: " +
                   (ns.empty() ? "no annihilator" : "annihilator of dimension " + std::to_string(ns.size()));
    } else {
      const Index k = right_support_limit(spec.phi, n);
      RationalMatrix sub(k, n);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c) sub(r, c) = a.matrix()(r, c);
      const auto ns = linalg::left_nullspace(sub);
      out.passed = ns.empty();
      out.detail = "admissible support {1.." + std::to_string(k) + "}: " +
                   (ns.empty() ? "no annihilator" : "annihilator of dimension " + std::to_string(ns.size()));
    }
    return out;
  }

  out.passed = true;
  out.detail = "verdict Unknown: nothing to cross-check";
  return out;
}

}  // namespace zdlab
