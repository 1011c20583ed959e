#include "zdlab/function_spaces.hpp"

#include <algorithm>
#include <set>

namespace zdlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool tags_equal(const GridTag& x, const GridTag& y) {
  if (x.index() != y.index()) return false;
  return std::visit(overloaded{
                        [&](const AffineTag& t) {
                          const auto& o = std::get<AffineTag>(y);
                          return t.slope == o.slope && t.intercept == o.intercept;
                        },
                        [&](const MonomialTag& t) { return t.k == std::get<MonomialTag>(y).k; },
                        [&](const ConstTag& t) { return t.c == std::get<ConstTag>(y).c; },
                    },
                    x);
}

std::string set_string(const std::vector<Rational>& values) {
  std::string s = "{";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + to_string(values[i]);
  return s + "}";
}

}  // namespace

std::string describe(const GridTag& tag) {
  return std::visit(overloaded{
                        [](const AffineTag& t) { return to_string(t.slope) + "*x+" + to_string(t.intercept); },
                        [](const MonomialTag& t) { return "x^" + std::to_string(t.k); },
                        [](const ConstTag& t) { return to_string(t.c); },
                    },
                    tag);
}

Rational evaluate(const GridTag& tag, const Rational& x) {
  return std::visit(overloaded{
                        [&](const AffineTag& t) { return Rational(t.slope * x + t.intercept); },
                        [&](const MonomialTag& t) { return pow(x, t.k); },
                        [](const ConstTag& t) { return t.c; },
                    },
                    tag);
}

GridFunction::GridFunction(Rational a, Rational b, RationalVector samples, std::optional<GridTag> tag)
    : a_(std::move(a)), b_(std::move(b)), samples_(std::move(samples)), tag_(std::move(tag)) {
  if (!(a_ < b_)) throw std::invalid_argument("grid function: need a < b");
  if (samples_.size() < 3) throw std::invalid_argument("grid function: need at least 3 samples");
}

GridFunction GridFunction::sample(Rational a, Rational b, std::size_t g, const GridTag& tag) {
  if (g < 3) throw std::invalid_argument("grid function: need at least 3 samples");
  RationalVector s(g);
  const Rational h = (b - a) / Rational(static_cast<unsigned long>(g - 1));
  for (std::size_t i = 0; i < g; ++i) s[i] = evaluate(tag, a + h * Rational(static_cast<unsigned long>(i)));
  return GridFunction(std::move(a), std::move(b), std::move(s), tag);
}

Rational GridFunction::point(std::size_t i) const {
  return a_ + (b_ - a_) * Rational(static_cast<unsigned long>(i)) /
                  Rational(static_cast<unsigned long>(samples_.size() - 1));
}

Rational GridFunction::sup_norm() const {
  Rational m = 0;
  for (const auto& v : samples_)
    if (abs(v) > m) m = abs(v);
  return m;
}

GridFunction GridFunction::times(const GridFunction& other) const {
  if (a_ != other.a_ || b_ != other.b_ || size() != other.size()) {
    throw std::invalid_argument("grid function: product needs a common grid");
  }
  RationalVector s(size());
  for (std::size_t i = 0; i < size(); ++i) s[i] = samples_[i] * other.samples_[i];
  return GridFunction(a_, b_, std::move(s));
}

bool operator==(const GridFunction& x, const GridFunction& y) {
  if (x.a_ != y.a_ || x.b_ != y.b_ || x.samples_ != y.samples_) return false;
  if (x.tag_.has_value() != y.tag_.has_value()) return false;
  return !x.tag_ || tags_equal(*x.tag_, *y.tag_);
}

GridTdz cx_is_tdz(const GridFunction& f, const Rational& tol) {
  GridTdz out;
  const auto& s = f.samples();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (abs(s[i]) <= tol) {
      out.tdz = true;
      out.zero = GridZero{i, f.point(i), true, is_zero(s[i])};
      return out;
    }
    if (i + 1 < s.size() && sgn(s[i]) * sgn(s[i + 1]) < 0) {
      GridZero z{i, Rational(0), false, false};
      const Rational x0 = f.point(i);
      const Rational x1 = f.point(i + 1);
      if (f.tag()) {
        // Closed forms with a sign change have a certified root.
        std::visit(overloaded{
                       [&](const AffineTag& t) {
                         z.x = -t.intercept / t.slope;
                         z.exact = true;
                       },
                       [&](const MonomialTag&) {
                         z.x = 0;
                         z.exact = true;
                       },
                       [](const ConstTag&) {},
                   },
                   *f.tag());
      }
      if (!z.exact) z.x = x0 - s[i] * (x1 - x0) / (s[i + 1] - s[i]);
      out.tdz = true;
      out.zero = z;
      return out;
    }
  }
  return out;
}

GridFunction urysohn_sequence(const GridFunction& f, std::size_t i0, unsigned n) {
  if (n == 0) throw std::invalid_argument("urysohn_sequence: n must be positive");
  const auto& s = f.samples();
  if (i0 >= s.size()) throw std::invalid_argument("urysohn_sequence: grid index out of range");
  const Rational bound(1, n);
  if (!(abs(s[i0]) < bound)) {
    throw GridTooCoarse("|f| >= 1/" + std::to_string(n) + " at the chosen grid point");
  }
  std::size_t lo = i0;
  std::size_t hi = i0;
  while (lo > 0 && abs(s[lo - 1]) < bound) --lo;
  while (hi + 1 < s.size() && abs(s[hi + 1]) < bound) ++hi;
  if (lo == i0 && hi == i0) {
    throw GridTooCoarse("no grid neighbour of the zero has |f| < 1/" + std::to_string(n) + "; refine the grid");
  }
  // Ramps reach 0 one grid step outside [lo, hi]; at the interval ends the
  // anchor is a virtual point beyond the grid.
  const long left_anchor = static_cast<long>(lo) - 1;
  const long right_anchor = static_cast<long>(hi) + 1;
  const long c = static_cast<long>(i0);
  RationalVector hat(s.size());
  for (std::size_t j = lo; j <= hi; ++j) {
    const long jj = static_cast<long>(j);
    if (jj <= c) {
      hat[j] = Rational(jj - left_anchor, c - left_anchor);
    } else {
      hat[j] = Rational(right_anchor - jj, right_anchor - c);
    }
    hat[j].canonicalize();
  }
  return GridFunction(f.a(), f.b(), std::move(hat));
}

// ---------------------------------------------------------------------------

AtomicMeasureSpace::AtomicMeasureSpace(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("atomic space: no atoms");
  std::set<std::string> ids;
  for (const auto& a : atoms_) {
    if (sgn(a.mass) <= 0) throw std::invalid_argument("atomic space: mass of '" + a.id + "' is not positive");
    if (!ids.insert(a.id).second) throw std::invalid_argument("atomic space: duplicate atom '" + a.id + "'");
  }
}

std::size_t AtomicMeasureSpace::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].id == id) return i;
  throw std::invalid_argument("atomic space: unknown atom '" + id + "'");
}

AtomicMeasureSpace AtomicMeasureSpace::rescaled(const Rational& factor) const {
  auto atoms = atoms_;
  for (auto& a : atoms) a.mass *= factor;
  return AtomicMeasureSpace(std::move(atoms));
}

SimpleFunction::SimpleFunction(AtomicMeasureSpace s, RationalVector v) : space(std::move(s)), values(std::move(v)) {
  if (values.size() != space.size()) throw std::invalid_argument("simple function: one value per atom required");
}

SimpleFunction SimpleFunction::constant(const AtomicMeasureSpace& s, const Rational& c) {
  return SimpleFunction(s, RationalVector(s.size(), c));
}

Rational SimpleFunction::sup_norm() const {
  Rational m = 0;
  for (const auto& v : values)
    if (abs(v) > m) m = abs(v);
  return m;
}

SimpleFunction SimpleFunction::times(const SimpleFunction& other) const {
  if (!(space == other.space)) throw std::invalid_argument("simple function: spaces differ");
  RationalVector v(values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values[i] * other.values[i];
  return SimpleFunction(space, std::move(v));
}

bool SimpleFunction::is_identically(const Rational& c) const {
  return std::all_of(values.begin(), values.end(), [&](const Rational& v) { return v == c; });
}

AtomMap::AtomMap(AtomicMeasureSpace s, std::vector<std::size_t> img) : space(std::move(s)), image(std::move(img)) {
  if (image.size() != space.size()) throw std::invalid_argument("atom map: one image per atom required");
  for (auto i : image)
    if (i >= space.size()) throw std::invalid_argument("atom map: image outside the space");
}

AtomMap AtomMap::identity(const AtomicMeasureSpace& s) {
  std::vector<std::size_t> img(s.size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
  return AtomMap(s, std::move(img));
}

std::vector<std::size_t> AtomMap::preimage(std::size_t atom) const {
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < image.size(); ++y)
    if (image[y] == atom) out.push_back(y);
  return out;
}

bool AtomMap::injective() const {
  std::set<std::size_t> seen(image.begin(), image.end());
  return seen.size() == image.size();
}

bool AtomMap::surjective() const {
  std::set<std::size_t> seen(image.begin(), image.end());
  return seen.size() == space.size();
}

std::vector<Rational> ess_range(const SimpleFunction& h) {
  std::vector<Rational> v = h.values;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

LinfTdz linf_is_tdz(const SimpleFunction& h) {
  LinfTdz out;
  RationalVector chi(h.values.size());
  bool any = false;
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (is_zero(h.values[i])) {
      chi[i] = 1;
      any = true;
    }
  }
  out.tdz = any;
  if (any) {
    SimpleFunction w(h.space, std::move(chi));
    out.product_norm = h.times(w).sup_norm();
    out.witness = std::move(w);
  }
  return out;
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string Polynomial::to_string() const {
  std::string s;
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    const Rational& c = coefficients[k];
    if (is_zero(c)) continue;
    const bool neg = sgn(c) < 0;
    const Rational mag = abs(c);
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    const bool unit = mag == 1 && k > 0;
    if (!unit) s += zdlab::to_string(mag);
    if (k > 0) s += (unit ? "" : "*") + std::string("x") + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s.empty() ? "0" : s;
}

PolyTdzWitness poly_tdz_witness(const SimpleFunction& h) {
  PolyTdzWitness out;
  out.alpha = h.values.front();
  out.p = Polynomial{{Rational(-out.alpha), Rational(1)}};
  RationalVector shifted(h.values.size());
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = out.p(h.values[i]);
  const auto range = ess_range(SimpleFunction(h.space, shifted));
  out.holds = std::binary_search(range.begin(), range.end(), Rational(0));
  out.evidence = "ess.range(p(h)) = " + set_string(range);
  return out;
}

PolyTdzWitness poly_tdz_witness(const GridFunction& h, std::size_t x0_index) {
  if (x0_index >= h.size()) throw std::invalid_argument("poly_tdz_witness: grid index out of range");
  PolyTdzWitness out;
  out.alpha = h.samples()[x0_index];
  out.p = Polynomial{{Rational(-out.alpha), Rational(1)}};
  RationalVector shifted(h.size());
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = out.p(h.samples()[i]);
  const auto check = cx_is_tdz(GridFunction(h.a(), h.b(), std::move(shifted)));
  out.holds = check.tdz;
  out.evidence = check.tdz ? "(p o h) vanishes at x = " + to_string(check.zero->x) : "p o h has no zero";
  return out;
}

MultOpTdz mult_op_tdz(const SimpleFunction& h, unsigned n_max) {
  MultOpTdz out;
  const auto t = linf_is_tdz(h);
  out.tdz = t.tdz;
  if (!t.tdz) {
    out.note = "0 is not in the essential range; M_h is invertible";
    return out;
  }
  // h_n = chi_E for every n.
  for (unsigned n = 1; n <= n_max; ++n) {
    out.rows.push_back({n, t.witness->sup_norm(), t.product_norm});
  }
  out.note = "h_n = indicator of {h = 0}";
  return out;
}

MultOpTdz mult_op_tdz(const GridFunction& h, unsigned n_max, const Rational& tol) {
  MultOpTdz out;
  const auto t = cx_is_tdz(h, tol);
  out.tdz = t.tdz;
  if (!t.tdz) {
    out.note = "h has no zero on the grid; M_h is invertible";
    return out;
  }
  std::size_t i0 = t.zero->index;
  if (!t.zero->at_sample && abs(h.samples()[i0 + 1]) < abs(h.samples()[i0])) ++i0;
  for (unsigned n = 1; n <= n_max; ++n) {
    try {
      const GridFunction hn = urysohn_sequence(h, i0, n);
      out.rows.push_back({n, hn.sup_norm(), h.times(hn).sup_norm()});
    } catch (const GridTooCoarse& e) {
      out.note = "stopped at n = " + std::to_string(n) + ": " + e.what();
      return out;
    }
  }
  out.note = "h_n = piecewise-linear hat at x0 = " + to_string(h.point(i0));
  return out;
}

SimpleFunction radon_nikodym(const AtomMap& phi) {
  const auto& atoms = phi.space.atoms();
  RationalVector v(atoms.size());
  for (std::size_t y = 0; y < atoms.size(); ++y) v[phi.image[y]] += atoms[y].mass;
  for (std::size_t x = 0; x < atoms.size(); ++x) v[x] /= atoms[x].mass;
  return SimpleFunction(phi.space, std::move(v));
}

RationalMatrix atomic_operator(const AtomMap& phi, const SimpleFunction& u) {
  const std::size_t n = phi.space.size();
  RationalMatrix m(n, n);
  for (std::size_t y = 0; y < n; ++y) m(y, phi.image[y]) = u.values[y];
  return m;
}

AtomicLeftZd lp_comp_left_zd(const AtomMap& phi, const SimpleFunction& u) {
  if (!(phi.space == u.space)) throw std::invalid_argument("lp_comp_left_zd: spaces differ");
  AtomicLeftZd out;
  const bool unweighted = u.is_identically(1);
  std::optional<std::size_t> e0;
  for (std::size_t x = 0; x < phi.space.size() && !e0; ++x) {
    const auto pre = phi.preimage(x);
    if (unweighted ? pre.empty()
                   : std::all_of(pre.begin(), pre.end(), [&](std::size_t y) { return is_zero(u.values[y]); })) {
      e0 = x;
    }
  }
  auto& v = out.verdict;
  v.rule = unweighted ? Rule::LpLeftCharacterization : Rule::Amar1;
  if (!e0) {
    v.status = Status::No;
    if (!unweighted) v.rule = Rule::InjectiveCorollary;
    v.explanation = unweighted ? "every atom has a nonempty preimage, so C_phi is injective"
                               : "phi is onto and every preimage has an atom where u is nonzero";
    return out;
  }
  const auto& id = phi.space.atoms()[*e0].id;
  v.status = Status::Yes;
  v.pivot = *e0 + 1;
  v.explanation = unweighted ? "atom '" + id + "' has empty preimage"
                             : "u vanishes on the preimage of atom '" + id + "'";
  out.atom = e0;
  const std::size_t n = phi.space.size();
  RationalMatrix t(n, n);
  t(*e0, *e0) = 1;
  const RationalMatrix a = atomic_operator(phi, u);
  RationalMatrix product(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!is_zero(a(i, k)))
        for (std::size_t j = 0; j < n; ++j) product(i, j) += a(i, k) * t(k, j);
  out.witness_verified = product.is_zero();
  out.witness = std::move(t);
  return out;
}

bool l2_comp_surjective(const AtomMap& phi) { return phi.injective(); }

}  // namespace zdlab
