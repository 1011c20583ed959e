#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "zdlab/rational.hpp"
#include "zdlab/verdict.hpp"

// Finite models of C[a,b] (uniform grids with the sup norm over grid points)
// and of L^p(mu) for finite atomic measures with positive masses.
namespace zdlab {

class GridTooCoarse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AffineTag { Rational slope, intercept; };  // slope * x + intercept
struct MonomialTag { unsigned k = 1; };           // x^k
struct ConstTag { Rational c; };

using GridTag = std::variant<AffineTag, MonomialTag, ConstTag>;

std::string describe(const GridTag& tag);

class GridFunction {
 public:
  GridFunction(Rational a, Rational b, RationalVector samples, std::optional<GridTag> tag = std::nullopt);

  /// Samples a catalog function at g uniform points.
  static GridFunction sample(Rational a, Rational b, std::size_t g, const GridTag& tag);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::size_t size() const { return samples_.size(); }
  const RationalVector& samples() const { return samples_; }
  const std::optional<GridTag>& tag() const { return tag_; }

  Rational point(std::size_t i) const;
  Rational sup_norm() const;
  GridFunction times(const GridFunction& other) const;

  friend bool operator==(const GridFunction&, const GridFunction&);

 private:
  Rational a_, b_;
  RationalVector samples_;
  std::optional<GridTag> tag_;
};

Rational evaluate(const GridTag& tag, const Rational& x);

struct GridZero {
  std::size_t index = 0;  // grid point at (or left of) the zero
  Rational x;             // location
  bool at_sample = false; // |f| <= tol at the grid point itself
  bool exact = false;     // location is an exact root
};

struct GridTdz {
  bool tdz = false;
  std::optional<GridZero> zero;
};

/// f is a TDZ of C(X) iff it vanishes somewhere: a sample with |f| <= tol or
/// a sign change between neighbouring samples.
GridTdz cx_is_tdz(const GridFunction& f, const Rational& tol = 0);

/// Norm-one hat at grid index i0, vanishing outside the maximal grid interval
/// around i0 on which |f| < 1/n.
GridFunction urysohn_sequence(const GridFunction& f, std::size_t i0, unsigned n);

// ---------------------------------------------------------------------------

struct Atom {
  std::string id;
  Rational mass;
  friend bool operator==(const Atom&, const Atom&) = default;
};

class AtomicMeasureSpace {
 public:
  explicit AtomicMeasureSpace(std::vector<Atom> atoms);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t index_of(const std::string& id) const;
  AtomicMeasureSpace rescaled(const Rational& factor) const;

  friend bool operator==(const AtomicMeasureSpace&, const AtomicMeasureSpace&) = default;

 private:
  std::vector<Atom> atoms_;
};

struct SimpleFunction {
  AtomicMeasureSpace space;
  RationalVector values;

  SimpleFunction(AtomicMeasureSpace s, RationalVector v);
  static SimpleFunction constant(const AtomicMeasureSpace& s, const Rational& c);

  Rational sup_norm() const;
  SimpleFunction times(const SimpleFunction& other) const;
  bool is_identically(const Rational& c) const;
  friend bool operator==(const SimpleFunction&, const SimpleFunction&) = default;
};

struct AtomMap {
  AtomicMeasureSpace space;
  std::vector<std::size_t> image;  // image[i] = index of phi(atom i)

  AtomMap(AtomicMeasureSpace s, std::vector<std::size_t> img);
  static AtomMap identity(const AtomicMeasureSpace& s);

  std::vector<std::size_t> preimage(std::size_t atom) const;
  bool injective() const;
  bool surjective() const;
};

/// Essential range; every atom has positive mass, so this is the value set.
std::vector<Rational> ess_range(const SimpleFunction& h);

struct LinfTdz {
  bool tdz = false;
  std::optional<SimpleFunction> witness;  // chi_E on E = {h = 0}
  Rational product_norm;                  // ||h chi_E||_inf
};

LinfTdz linf_is_tdz(const SimpleFunction& h);

/// Ascending coefficients.
struct Polynomial {
  RationalVector coefficients;

  Rational operator()(const Rational& x) const;
  std::string to_string() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

struct PolyTdzWitness {
  Rational alpha;
  Polynomial p;        // x - alpha
  bool holds = false;  // p(h) passes the TDZ check of its space
  std::string evidence;
};

PolyTdzWitness poly_tdz_witness(const SimpleFunction& h);
PolyTdzWitness poly_tdz_witness(const GridFunction& h, std::size_t x0_index = 0);

struct MultOpRow {
  unsigned n = 0;
  Rational sequence_norm;  // ||h_n|| = ||M_{h_n}||
  Rational product_norm;   // ||h h_n|| = ||M_h M_{h_n}||
};

struct MultOpTdz {
  bool tdz = false;
  std::vector<MultOpRow> rows;
  std::string note;
};

MultOpTdz mult_op_tdz(const SimpleFunction& h, unsigned n_max = 10);
MultOpTdz mult_op_tdz(const GridFunction& h, unsigned n_max = 50, const Rational& tol = 0);

/// mu(phi^{-1}{x}) / mu{x} per atom.
SimpleFunction radon_nikodym(const AtomMap& phi);

struct AtomicLeftZd {
  Verdict verdict;
  std::optional<std::size_t> atom;   // E0 = {atom}
  std::optional<RationalMatrix> witness;  // projection onto [chi_{E0}]
  bool witness_verified = false;
};

/// u C_phi on L^p of a finite atomic space (u = 1 gives C_phi).
AtomicLeftZd lp_comp_left_zd(const AtomMap& phi, const SimpleFunction& u);

/// Matrix of u C_phi on the atoms: row y has u(y) at column phi(y).
RationalMatrix atomic_operator(const AtomMap& phi, const SimpleFunction& u);

bool l2_comp_surjective(const AtomMap& phi);

}  // namespace zdlab
