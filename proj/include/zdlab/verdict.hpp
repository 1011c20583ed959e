#pragma once

#include <optional>
#include <string>
#include <utility>

#include "zdlab/rational.hpp"

namespace zdlab {

enum class Status { Yes, No, Unknown };

/// Which classification rule produced a verdict. The identifier strings are
/// stable and appear in reports.
enum class Rule {
  None,
  Anurag31,           // right ZD iff phi not injective (u nowhere zero)
  Hc31,               // a nonempty finite fiber inside Z(u) gives a right ZD
  ZeroWeight,         // u(n0) = 0 gives a right ZD
  Anurag13,           // left ZD iff phi not surjective (u nowhere zero)
  HCsir1,             // phi not surjective gives a left ZD
  FiberZero,          // u vanishing on a nonempty fiber gives a left ZD
  InjectiveCorollary, // u C_phi injective, so not a left ZD
  Anurag34,           // u nowhere zero and phi not invertible gives a ZD
  TdzUC,              // u bounded away from zero: ZD iff phi not invertible
  LeftRightCombined,  // ZD status assembled from the one-sided verdicts
  LpLeftCharacterization,  // C_phi on atomic L^p: left ZD iff some atom is unhit
  Amar1,              // u C_phi on atomic L^p: preimage of an atom inside Z(u)
};

std::string rule_id(Rule r);
Rule parse_rule_id(const std::string& id);
std::string status_name(Status s);
Status parse_status(const std::string& s);

enum class Side { Left, Right };
std::string side_name(Side s);
Side parse_side(const std::string& s);

struct Verdict {
  Status status = Status::Unknown;
  Rule rule = Rule::None;
  std::string explanation;
  /// The point n0 a rule fired at, when there is one.
  std::optional<Index> pivot;
  /// A collision phi(a) = phi(b), a < b, for rules that use one.
  std::optional<std::pair<Index, Index>> collision;
  /// For two-sided verdicts: the side that decided a Yes.
  std::optional<Side> side;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

}  // namespace zdlab
