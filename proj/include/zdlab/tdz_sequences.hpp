#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zdlab/lp_operators.hpp"

namespace zdlab {

/// Keeps coordinates n+1..N.
TruncatedOperator tail_projection(Index n, std::size_t dim, Exponent p = Exponent::two());
/// Keeps only coordinate n+1.
TruncatedOperator single_hole(Index n, std::size_t dim, Exponent p = Exponent::two());

/// True iff t is a 0/1 diagonal fixing e_{n+1}, which pins its norm to 1 for every p.
bool certify_unit_norm(const TruncatedOperator& t, Index n);

/// y in c_0: inv(a) or geom(a, r) tail plus finitely many exceptions.
class C0Sequence {
 public:
  explicit C0Sequence(WeightSeq y);

  static C0Sequence inverse(const Rational& a) { return C0Sequence(WeightSeq::with_tail(InverseWeight{a})); }
  static C0Sequence geometric(const Rational& a, const Rational& r) {
    return C0Sequence(WeightSeq::with_tail(GeometricWeight{a, r}));
  }

  Rational operator()(Index k) const { return y_(k); }
  const WeightSeq& weights() const { return y_; }

  /// sup_{k >= m} |y_k|, exact.
  Rational tail_sup(Index m) const;
  /// Smallest k >= m with |y_k| = tail_sup(m).
  Index tail_argmax(Index m) const;

  std::string describe() const { return y_.describe(); }
  friend bool operator==(const C0Sequence&, const C0Sequence&) = default;

 private:
  WeightSeq y_;
};

struct OperatorSequenceRule {
  enum class Kind { TailProjection, SingleHole, DiagonalTail };
  Kind kind = Kind::TailProjection;
  std::optional<C0Sequence> y;  // DiagonalTail only

  static OperatorSequenceRule tail() { return {Kind::TailProjection, std::nullopt}; }
  static OperatorSequenceRule hole() { return {Kind::SingleHole, std::nullopt}; }
  static OperatorSequenceRule diagonal_tail(C0Sequence y) { return {Kind::DiagonalTail, std::move(y)}; }

  /// T_n on an N-dimensional window.
  TruncatedOperator instantiate(Index n, std::size_t dim, Exponent p = Exponent::two()) const;
  std::string name() const;
};

std::string rule_kind_name(OperatorSequenceRule::Kind k);
OperatorSequenceRule::Kind parse_rule_kind(const std::string& s);

struct ConvergenceRow {
  unsigned n = 0;
  double value = 0.0;
  std::optional<double> bound;
  bool exact_zero = false;
  friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct ConvergenceTable {
  std::string label;
  std::vector<ConvergenceRow> rows;

  /// value <= bound + slack on every row carrying a bound.
  bool bounds_hold(double slack = 1e-12) const;
  bool nonincreasing() const;
  /// Exactly zero at the end, or nonincreasing after the peak and ending strictly below it.
  bool decays() const;
  bool below(double threshold) const;

  std::string to_csv() const;
  std::string to_text() const;
  friend bool operator==(const ConvergenceTable&, const ConvergenceTable&) = default;
};

struct Probe {
  std::string name;
  RationalVector x;
  bool finitely_supported = true;
};

/// e_1, e_5, e_10 (those fitting in dim), (1/k) and (2^-k).
std::vector<Probe> default_probes(std::size_t dim);
Probe unit_probe(Index k, std::size_t dim);

struct StrongTdzDemo {
  std::vector<ConvergenceTable> probes;  // ||T T_n x||, bound ||T T_n|| ||x||
  ConvergenceTable operator_norms;       // ||T T_n|| measured
};

StrongTdzDemo strongly_tdz_demo(const TruncatedOperator& t, const OperatorSequenceRule& rule,
                                const std::vector<Probe>& probes, unsigned n_max,
                                const NormOptions& opts = {});

/// Rows (n, ||T_n T||, sup_{k >= n+1} |y_k|) with T = diag(y) and T_n the tail projection.
ConvergenceTable diagonal_tdz_demo(const C0Sequence& y, unsigned n_max, std::size_t dim,
                                   Exponent p = Exponent::two(), const NormOptions& opts = {});

/// ||T T_n x|| <= ||T T_n|| ||x|| + 1e-9 on every row, and probes fall below
/// eps ||x|| + 1e-9 wherever ||T T_n|| < eps.
bool check_tdz_implies_strong(const TruncatedOperator& t, const OperatorSequenceRule& rule,
                              const std::vector<Probe>& probes, unsigned n_max, double eps = 1e-6,
                              const NormOptions& opts = {});

}  // namespace zdlab
