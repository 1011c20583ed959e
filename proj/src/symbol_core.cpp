#include "zdlab/symbol_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zdlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Index sat_add(Index a, Index b) { return a > kBeyond - b ? kBeyond : a + b; }

Index sat_mul(Index a, Index b) {
  if (a == 0 || b == 0) return 0;
  return a > kBeyond / b ? kBeyond : a * b;
}

Index sat_pow(Index base, unsigned k) {
  Index r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r = sat_mul(r, base);
    if (r == kBeyond) return kBeyond;
  }
  return r;
}

template <class V>
void check_table(const std::map<Index, V>& exceptions, Index tail_start, const char* what) {
  if (tail_start < 1) throw SymbolError(std::string(what) + ": tail_start must be >= 1");
  if (exceptions.size() != tail_start - 1 ||
      (!exceptions.empty() && (exceptions.begin()->first != 1 ||
                               exceptions.rbegin()->first != tail_start - 1))) {
    throw SymbolError(std::string(what) +
                      ": exceptions must define every n in [1, tail_start)");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SelfMap

SelfMap::SelfMap(std::map<Index, Index> exceptions, Index tail_start, MapTail tail)
    : exceptions_(std::move(exceptions)), tail_start_(tail_start), tail_(tail) {
  check_table(exceptions_, tail_start_, "self-map");
  for (const auto& [n, v] : exceptions_) {
    if (v < 1) throw SymbolError("self-map: value at " + std::to_string(n) + " is not positive");
  }
  std::visit(overloaded{
                 [](const ShiftTail&) {},
                 [](const BlockTail& b) {
                   if (b.d < 1) throw SymbolError("self-map: block divisor must be >= 1");
                 },
                 [](const PowerTail& p) {
                   if (p.k < 2) throw SymbolError("self-map: power exponent must be >= 2");
                 },
                 [](const ConstTail& c) {
                   if (c.c < 1) throw SymbolError("self-map: constant must be >= 1");
                 },
             },
             tail_);
}

Index SelfMap::tail_value(Index n) const {
  return std::visit(overloaded{
                        [n](const ShiftTail& t) { return sat_add(n, t.s); },
                        [n](const BlockTail& t) { return sat_add((n - 1) / t.d + 1, t.c); },
                        [n](const PowerTail& t) { return sat_pow(n, t.k); },
                        [](const ConstTail& t) { return t.c; },
                    },
                    tail_);
}

Index SelfMap::operator()(Index n) const {
  if (n < tail_start_) return exceptions_.at(n);
  return tail_value(n);
}

Cardinal SelfMap::tail_multiplicity() const {
  return std::visit(overloaded{
                        [](const ShiftTail&) { return Cardinal::finite(1); },
                        [](const BlockTail& t) { return Cardinal::finite(t.d); },
                        [](const PowerTail&) { return Cardinal::finite(1); },
                        [](const ConstTail&) { return Cardinal::aleph0(); },
                    },
                    tail_);
}

std::string SelfMap::describe() const {
  std::ostringstream os;
  os << "{";
  for (const auto& [n, v] : exceptions_) os << n << "->" << v << "; ";
  os << "n>=" << tail_start_ << ": ";
  std::visit(overloaded{
                 [&](const ShiftTail& t) { os << "n+" << t.s; },
                 [&](const BlockTail& t) { os << "ceil(n/" << t.d << ")+" << t.c; },
                 [&](const PowerTail& t) { os << "n^" << t.k; },
                 [&](const ConstTail& t) { os << t.c; },
             },
             tail_);
  os << "}";
  return os.str();
}

bool operator==(const SelfMap& a, const SelfMap& b) {
  if (a.exceptions_ != b.exceptions_ || a.tail_start_ != b.tail_start_) return false;
  if (a.tail_.index() != b.tail_.index()) return false;
  return std::visit(overloaded{
                        [&](const ShiftTail& t) { return t.s == std::get<ShiftTail>(b.tail_).s; },
                        [&](const BlockTail& t) {
                          const auto& o = std::get<BlockTail>(b.tail_);
                          return t.d == o.d && t.c == o.c;
                        },
                        [&](const PowerTail& t) { return t.k == std::get<PowerTail>(b.tail_).k; },
                        [&](const ConstTail& t) { return t.c == std::get<ConstTail>(b.tail_).c; },
                    },
                    a.tail_);
}

bool FiberDescriptor::contains(Index m) const {
  if (std::binary_search(finite_part.begin(), finite_part.end(), m)) return true;
  if (!tail_progression) return false;
  const auto& p = *tail_progression;
  return m >= p.first && (m - p.first) % p.stride == 0;
}

std::vector<Index> FiberDescriptor::members_up_to(Index limit) const {
  std::vector<Index> out;
  for (auto m : finite_part)
    if (m <= limit) out.push_back(m);
  if (tail_progression) {
    for (Index m = tail_progression->first; m <= limit; m += tail_progression->stride) {
      out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Index> FiberDescriptor::smallest() const {
  std::optional<Index> best;
  if (!finite_part.empty()) best = finite_part.front();
  if (tail_progression && (!best || tail_progression->first < *best)) best = tail_progression->first;
  return best;
}

std::optional<Index> exact_root(Index n, unsigned k) {
  if (n == 0) return std::nullopt;
  auto guess = static_cast<Index>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
  for (Index r = guess > 2 ? guess - 2 : 1; r <= guess + 2; ++r) {
    const Index v = sat_pow(r, k);
    if (v == n) return r;
    if (v > n) break;
  }
  return std::nullopt;
}

FiberDescriptor fiber(const SelfMap& phi, Index n) {
  FiberDescriptor f;
  for (const auto& [m, v] : phi.exceptions()) {
    if (v == n) f.finite_part.push_back(m);
  }
  const Index ts = phi.tail_start();
  std::visit(overloaded{
                 [&](const ShiftTail& t) {
                   if (n > t.s && n - t.s >= ts) f.finite_part.push_back(n - t.s);
                 },
                 [&](const BlockTail& t) {
                   if (n <= t.c) return;
                   const Index q = n - t.c;
                   const Index hi = sat_mul(q, t.d);
                   if (hi == kBeyond) return;
                   const Index lo = std::max(hi - t.d + 1, ts);
                   for (Index m = lo; m <= hi; ++m) f.finite_part.push_back(m);
                 },
                 [&](const PowerTail& t) {
                   if (auto r = exact_root(n, t.k); r && *r >= ts) f.finite_part.push_back(*r);
                 },
                 [&](const ConstTail& t) {
                   if (n == t.c) f.tail_progression = Progression{ts, 1};
                 },
             },
             phi.tail());
  std::sort(f.finite_part.begin(), f.finite_part.end());
  return f;
}

Cardinal fiber_bound(const SelfMap& phi) {
  Cardinal best = phi.tail_multiplicity();
  if (best.infinite) return best;
  for (const auto& [m, v] : phi.exceptions()) {
    const Cardinal c = fiber(phi, v).cardinality();
    if (c.infinite) return c;
    best.count = std::max(best.count, c.count);
  }
  return best;
}

bool is_injective(const SelfMap& phi) { return fiber_bound(phi).at_most(1); }

bool is_surjective(const SelfMap& phi) {
  if (std::holds_alternative<PowerTail>(phi.tail()) || phi.has_const_tail()) return false;
  // Shift and block tails hit every integer from phi(tail_start) on.
  const Index first_tail = phi.tail_value(phi.tail_start());
  std::vector<bool> hit(first_tail, false);
  for (const auto& [m, v] : phi.exceptions()) {
    if (v < first_tail) hit[v] = true;
  }
  for (Index n = 1; n < first_tail; ++n) {
    if (!hit[n]) return false;
  }
  return true;
}

bool is_invertible(const SelfMap& phi) { return is_injective(phi) && is_surjective(phi); }

std::optional<Index> first_empty_fiber(const SelfMap& phi) {
  if (is_surjective(phi)) return std::nullopt;
  // Non-surjective maps in the catalog miss an integer within a short distance
  // of the exception values; the cap only guards against a logic error.
  for (Index n = 1; n < 10'000'000; ++n) {
    if (fiber(phi, n).empty()) return n;
  }
  throw std::logic_error("first_empty_fiber: search cap reached");
}

std::optional<std::pair<Index, Index>> first_collision(const SelfMap& phi) {
  if (is_injective(phi)) return std::nullopt;
  for (Index a = 1; a < 10'000'000; ++a) {
    const Index v = phi(a);
    if (v == kBeyond) continue;
    const FiberDescriptor f = fiber(phi, v);
    for (Index b : f.finite_part)
      if (b > a) return std::make_pair(a, b);
    if (f.tail_progression) {
      const auto& p = *f.tail_progression;
      Index b = p.first;
      while (b <= a) b += p.stride;
      return std::make_pair(a, b);
    }
  }
  throw std::logic_error("first_collision: search cap reached");
}

// ---------------------------------------------------------------------------
// WeightSeq

WeightSeq::WeightSeq(std::map<Index, Rational> exceptions, Index tail_start, WeightTail tail)
    : exceptions_(std::move(exceptions)), tail_start_(tail_start), tail_(std::move(tail)) {
  check_table(exceptions_, tail_start_, "weight");
  if (const auto* g = std::get_if<GeometricWeight>(&tail_)) {
    if (abs(g->r) >= 1) throw SymbolError("weight: geometric ratio must satisfy |r| < 1");
  }
}

Rational WeightSeq::tail_value(Index n) const {
  return std::visit(overloaded{
                        [](const ConstWeight& t) { return t.c; },
                        [n](const ShiftedInverseWeight& t) {
                          return Rational(t.c + t.a / Rational(static_cast<unsigned long>(n)));
                        },
                        [n](const InverseWeight& t) {
                          return Rational(t.a / Rational(static_cast<unsigned long>(n)));
                        },
                        [n](const GeometricWeight& t) {
                          if (n > 1'000'000) throw SymbolError("weight: geometric index too large");
                          return Rational(t.a * pow(t.r, static_cast<unsigned>(n)));
                        },
                    },
                    tail_);
}

Rational WeightSeq::operator()(Index n) const {
  if (n < tail_start_) return exceptions_.at(n);
  return tail_value(n);
}

WeightSeq WeightSeq::scaled(const Rational& c) const {
  std::map<Index, Rational> ex;
  for (const auto& [n, v] : exceptions_) ex.emplace(n, c * v);
  WeightTail t = std::visit(overloaded{
                                [&](const ConstWeight& w) -> WeightTail { return ConstWeight{c * w.c}; },
                                [&](const ShiftedInverseWeight& w) -> WeightTail {
                                  return ShiftedInverseWeight{c * w.c, c * w.a};
                                },
                                [&](const InverseWeight& w) -> WeightTail { return InverseWeight{c * w.a}; },
                                [&](const GeometricWeight& w) -> WeightTail {
                                  return GeometricWeight{c * w.a, w.r};
                                },
                            },
                            tail_);
  return WeightSeq(std::move(ex), tail_start_, std::move(t));
}

bool WeightSeq::is_identically(const Rational& c) const {
  for (const auto& [n, v] : exceptions_)
    if (v != c) return false;
  return std::visit(overloaded{
                        [&](const ConstWeight& w) { return w.c == c; },
                        [&](const ShiftedInverseWeight& w) { return is_zero(w.a) && w.c == c; },
                        [&](const InverseWeight& w) { return is_zero(w.a) && is_zero(c); },
                        [&](const GeometricWeight& w) {
                          return (is_zero(w.a) || is_zero(w.r)) && is_zero(c);
                        },
                    },
                    tail_);
}

std::string WeightSeq::describe() const {
  std::ostringstream os;
  os << "{";
  for (const auto& [n, v] : exceptions_) os << n << "->" << to_string(v) << "; ";
  os << "n>=" << tail_start_ << ": ";
  std::visit(overloaded{
                 [&](const ConstWeight& w) { os << to_string(w.c); },
                 [&](const ShiftedInverseWeight& w) { os << to_string(w.c) << "+" << to_string(w.a) << "/n"; },
                 [&](const InverseWeight& w) { os << to_string(w.a) << "/n"; },
                 [&](const GeometricWeight& w) { os << to_string(w.a) << "*(" << to_string(w.r) << ")^n"; },
             },
             tail_);
  os << "}";
  return os.str();
}

bool operator==(const WeightSeq& a, const WeightSeq& b) {
  if (a.exceptions_ != b.exceptions_ || a.tail_start_ != b.tail_start_) return false;
  if (a.tail_.index() != b.tail_.index()) return false;
  return std::visit(overloaded{
                        [&](const ConstWeight& w) { return w.c == std::get<ConstWeight>(b.tail_).c; },
                        [&](const ShiftedInverseWeight& w) {
                          const auto& o = std::get<ShiftedInverseWeight>(b.tail_);
                          return w.c == o.c && w.a == o.a;
                        },
                        [&](const InverseWeight& w) { return w.a == std::get<InverseWeight>(b.tail_).a; },
                        [&](const GeometricWeight& w) {
                          const auto& o = std::get<GeometricWeight>(b.tail_);
                          return w.a == o.a && w.r == o.r;
                        },
                    },
                    a.tail_);
}

bool ZeroSet::contains(Index n) const {
  if (tail_from && n >= *tail_from) return true;
  return std::binary_search(finite.begin(), finite.end(), n);
}

std::optional<Index> ZeroSet::smallest() const {
  if (!finite.empty()) return finite.front();
  return tail_from;
}

bool ZeroSet::contains_all_from(Index from) const {
  if (!tail_from) return false;
  for (Index n = from; n < *tail_from; ++n)
    if (!contains(n)) return false;
  return true;
}

ZeroSet zero_set(const WeightSeq& u) {
  ZeroSet z;
  for (const auto& [n, v] : u.exceptions())
    if (is_zero(v)) z.finite.push_back(n);
  const Index ts = u.tail_start();
  std::visit(overloaded{
                 [&](const ConstWeight& w) {
                   if (is_zero(w.c)) z.tail_from = ts;
                 },
                 [&](const ShiftedInverseWeight& w) {
                   if (is_zero(w.c)) {
                     if (is_zero(w.a)) z.tail_from = ts;
                     return;
                   }
                   const Rational root = -w.a / w.c;
                   if (root.get_den() == 1 && sgn(root) > 0 && root.get_num().fits_ulong_p()) {
                     const Index n = root.get_num().get_ui();
                     if (n >= ts) z.finite.push_back(n);
                   }
                 },
                 [&](const InverseWeight& w) {
                   if (is_zero(w.a)) z.tail_from = ts;
                 },
                 [&](const GeometricWeight& w) {
                   if (is_zero(w.a) || is_zero(w.r)) z.tail_from = ts;
                 },
             },
             u.tail());
  std::sort(z.finite.begin(), z.finite.end());
  if (z.tail_from) {
    while (!z.finite.empty() && z.finite.back() + 1 == *z.tail_from) {
      z.tail_from = z.finite.back();
      z.finite.pop_back();
    }
  }
  return z;
}

bool is_bounded_away_from_zero(const WeightSeq& u) {
  for (const auto& [n, v] : u.exceptions())
    if (is_zero(v)) return false;
  return std::visit(overloaded{
                        [](const ConstWeight& w) { return !is_zero(w.c); },
                        [&](const ShiftedInverseWeight& w) {
                          // inf over the tail tends to |c| and no term vanishes.
                          return !is_zero(w.c) && zero_set(u).empty();
                        },
                        [](const InverseWeight&) { return false; },
                        [](const GeometricWeight&) { return false; },
                    },
                    u.tail());
}

bool tail_is_p_summable(const WeightSeq& u, double p, bool p_is_infinite) {
  if (p_is_infinite) return true;
  return std::visit(overloaded{
                        [](const ConstWeight& w) { return is_zero(w.c); },
                        [&](const ShiftedInverseWeight& w) {
                          if (!is_zero(w.c)) return false;
                          return is_zero(w.a) || p > 1.0;
                        },
                        [&](const InverseWeight& w) { return is_zero(w.a) || p > 1.0; },
                        [](const GeometricWeight&) { return true; },
                    },
                    u.tail());
}

}  // namespace zdlab
