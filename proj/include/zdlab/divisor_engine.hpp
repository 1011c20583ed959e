#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zdlab/lp_operators.hpp"
#include "zdlab/verdict.hpp"

namespace zdlab {

class UnboundedOperatorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class WitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Windows above this size are refused; verification is dense.
inline constexpr Index kMaxWitnessWindow = 1024;

enum class WitnessKind { CoordinateProjection, SpanProjection, FunctionalTensor, KernelTensor };
std::string witness_kind_name(WitnessKind k);
WitnessKind parse_witness_kind(const std::string& s);

/// One nonzero entry T[row][col] of a finite-rank operator (1-based indices).
struct WitnessEntry {
  Index row = 1;
  Index col = 1;
  Rational value;
  friend bool operator==(const WitnessEntry&, const WitnessEntry&) = default;
};

/// Finite-rank T with u C_phi o T = 0 (left) or T o u C_phi = 0 (right).
struct Witness {
  Side side = Side::Left;
  WitnessKind kind = WitnessKind::CoordinateProjection;
  Rule rule = Rule::None;
  std::vector<WitnessEntry> entries;
  Index required_window = 1;

  RationalMatrix matrix(std::size_t n) const;
  std::vector<Index> row_support() const;
  std::vector<Index> column_support() const;
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct WitnessCheck {
  bool ok = false;
  bool product_zero = false;
  bool tail_certified = false;
  Index window = 0;
  /// First nonzero entry of the product (1-based), on failure.
  std::optional<std::pair<Index, Index>> failing;
  std::string detail;
};

Verdict classify_right_zd(const OperatorSpec& spec);
Verdict classify_left_zd(const OperatorSpec& spec);
Verdict classify_zd(const OperatorSpec& spec);

Witness synth_left_witness(const OperatorSpec& spec);
Witness synth_right_witness(const OperatorSpec& spec);
Witness synth_witness(const OperatorSpec& spec, Side side);

WitnessCheck verify_witness(const OperatorSpec& spec, const Witness& w);

/// Independent oracle: nonzero T with A T = 0 (left) or T A = 0 (right) from
/// exact elimination, or nothing when the relevant nullspace is trivial.
std::optional<RationalMatrix> oracle_annihilator(const TruncatedOperator& a, Side side);

/// Smallest n0 with a nonempty fiber contained in Z(u). With
/// allow_infinite = false only finite fibers qualify.
std::optional<Index> fiber_inside_zero_set(const SelfMap& phi, const ZeroSet& z, bool allow_infinite);

/// Truncation-level agreement between a one-sided verdict and the oracle.
struct OracleCheck {
  Side side = Side::Left;
  Index requested_window = 0;
  Index window = 0;
  Verdict verdict;
  bool passed = false;
  std::string detail;
};

OracleCheck oracle_cross_check(const OperatorSpec& spec, Side side, Index n);

}  // namespace zdlab
