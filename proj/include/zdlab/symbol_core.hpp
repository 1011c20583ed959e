#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "zdlab/rational.hpp"

namespace zdlab {

class SymbolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cardinality of a set of positive integers: finite, or countably infinite.
struct Cardinal {
  bool infinite = false;
  std::size_t count = 0;

  static Cardinal finite(std::size_t n) { return {false, n}; }
  static Cardinal aleph0() { return {true, 0}; }

  friend bool operator==(const Cardinal&, const Cardinal&) = default;
  bool at_most(std::size_t n) const { return !infinite && count <= n; }
  std::string to_string() const { return infinite ? "inf" : std::to_string(count); }
};

// ---------------------------------------------------------------------------
// Self-maps of the positive integers
// ---------------------------------------------------------------------------

struct ShiftTail { Index s = 0; };          // n -> n + s
struct BlockTail { Index d = 1; Index c = 0; };  // n -> ceil(n/d) + c
struct PowerTail { unsigned k = 2; };       // n -> n^k
struct ConstTail { Index c = 1; };          // n -> c

using MapTail = std::variant<ShiftTail, BlockTail, PowerTail, ConstTail>;

/// phi: N -> N given by an explicit table on {1, ..., tail_start-1} and a
/// closed-form rule from tail_start on. The table must cover exactly those
/// integers.
class SelfMap {
 public:
  SelfMap(std::map<Index, Index> exceptions, Index tail_start, MapTail tail);

  static SelfMap identity() { return SelfMap({}, 1, ShiftTail{0}); }
  static SelfMap with_tail(MapTail tail) { return SelfMap({}, 1, tail); }

  /// phi(n); saturates to kBeyond on overflow.
  Index operator()(Index n) const;
  Index tail_value(Index n) const;

  const std::map<Index, Index>& exceptions() const { return exceptions_; }
  Index tail_start() const { return tail_start_; }
  const MapTail& tail() const { return tail_; }

  bool has_const_tail() const { return std::holds_alternative<ConstTail>(tail_); }

  /// Largest number of tail-region points sharing one image (infinite for const).
  Cardinal tail_multiplicity() const;

  std::string describe() const;

  friend bool operator==(const SelfMap& a, const SelfMap& b);

 private:
  std::map<Index, Index> exceptions_;
  Index tail_start_;
  MapTail tail_;
};

/// Arithmetic progression {first, first+stride, ...}.
struct Progression {
  Index first = 1;
  Index stride = 1;
  friend bool operator==(const Progression&, const Progression&) = default;
};

/// Exact preimage phi^{-1}(n).
struct FiberDescriptor {
  std::vector<Index> finite_part;           // ascending
  std::optional<Progression> tail_progression;

  bool empty() const { return finite_part.empty() && !tail_progression; }
  bool infinite() const { return tail_progression.has_value(); }
  Cardinal cardinality() const {
    return infinite() ? Cardinal::aleph0() : Cardinal::finite(finite_part.size());
  }
  bool contains(Index m) const;
  /// Finite part plus the progression members up to `limit`.
  std::vector<Index> members_up_to(Index limit) const;
  std::optional<Index> smallest() const;

  friend bool operator==(const FiberDescriptor&, const FiberDescriptor&) = default;
};

FiberDescriptor fiber(const SelfMap& phi, Index n);
bool is_injective(const SelfMap& phi);
bool is_surjective(const SelfMap& phi);
bool is_invertible(const SelfMap& phi);
Cardinal fiber_bound(const SelfMap& phi);

/// Smallest n whose fiber is empty, if phi is not surjective.
std::optional<Index> first_empty_fiber(const SelfMap& phi);

/// Smallest pair a < b with phi(a) = phi(b), if phi is not injective.
std::optional<std::pair<Index, Index>> first_collision(const SelfMap& phi);

/// Integer k-th root of n when n is a perfect k-th power.
std::optional<Index> exact_root(Index n, unsigned k);

// ---------------------------------------------------------------------------
// Weight sequences
// ---------------------------------------------------------------------------

struct ConstWeight { Rational c; };                 // c
struct ShiftedInverseWeight { Rational c, a; };     // c + a/n
struct InverseWeight { Rational a; };               // a/n
struct GeometricWeight { Rational a, r; };          // a r^n, |r| < 1

using WeightTail = std::variant<ConstWeight, ShiftedInverseWeight, InverseWeight, GeometricWeight>;

class WeightSeq {
 public:
  WeightSeq(std::map<Index, Rational> exceptions, Index tail_start, WeightTail tail);

  static WeightSeq constant(const Rational& c) { return WeightSeq({}, 1, ConstWeight{c}); }
  static WeightSeq with_tail(WeightTail tail) { return WeightSeq({}, 1, std::move(tail)); }

  Rational operator()(Index n) const;
  Rational tail_value(Index n) const;

  const std::map<Index, Rational>& exceptions() const { return exceptions_; }
  Index tail_start() const { return tail_start_; }
  const WeightTail& tail() const { return tail_; }

  /// c * u, same catalog shape.
  WeightSeq scaled(const Rational& c) const;

  bool is_identically(const Rational& c) const;
  std::string describe() const;

  friend bool operator==(const WeightSeq& a, const WeightSeq& b);

 private:
  std::map<Index, Rational> exceptions_;
  Index tail_start_;
  WeightTail tail_;
};

/// Z(u): a finite set, optionally together with every n >= tail_from.
struct ZeroSet {
  std::vector<Index> finite;            // ascending, all < tail_from when set
  std::optional<Index> tail_from;

  bool empty() const { return finite.empty() && !tail_from; }
  bool contains(Index n) const;
  std::optional<Index> smallest() const;
  /// True iff every n >= from belongs to the set.
  bool contains_all_from(Index from) const;

  friend bool operator==(const ZeroSet&, const ZeroSet&) = default;
};

ZeroSet zero_set(const WeightSeq& u);
bool is_bounded_away_from_zero(const WeightSeq& u);

/// Whether the tail of u is p-summable, decided from the catalog.
/// p_is_infinite selects l^infinity (always true).
bool tail_is_p_summable(const WeightSeq& u, double p, bool p_is_infinite);

}  // namespace zdlab
