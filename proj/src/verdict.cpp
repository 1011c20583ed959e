#include "zdlab/verdict.hpp"

#include <array>
#include <stdexcept>

namespace zdlab {

namespace {

constexpr std::array<std::pair<Rule, const char*>, 13> kRuleIds{{
    {Rule::None, "none"},
    {Rule::Anurag31, "Thm-Anurag31"},
    {Rule::Hc31, "Thm-hc31"},
    {Rule::ZeroWeight, "Thm-ZeroWeight"},
    {Rule::Anurag13, "Thm-anurag13"},
    {Rule::HCsir1, "Thm-HCsir1"},
    {Rule::FiberZero, "Thm-FiberZero"},
    {Rule::InjectiveCorollary, "Cor-InjectiveWCO"},
    {Rule::Anurag34, "Thm-Anurag34"},
    {Rule::TdzUC, "Thm-TDZ-UC"},
    {Rule::LeftRightCombined, "Combined-LeftRight"},
    {Rule::LpLeftCharacterization, "Thm-LpLeftZD"},
    {Rule::Amar1, "Thm-amar1"},
}};

}  // namespace

std::string rule_id(Rule r) {
  for (const auto& [rule, id] : kRuleIds)
    if (rule == r) return id;
  return "none";
}

Rule parse_rule_id(const std::string& id) {
  for (const auto& [rule, name] : kRuleIds)
    if (id == name) return rule;
  throw std::invalid_argument("unknown rule id '" + id + "'");
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Yes: return "Yes";
    case Status::No: return "No";
    case Status::Unknown: return "Unknown";
  }
  return "Unknown";
}

Status parse_status(const std::string& s) {
  if (s == "Yes") return Status::Yes;
  if (s == "No") return Status::No;
  if (s == "Unknown") return Status::Unknown;
  throw std::invalid_argument("unknown status '" + s + "'");
}

std::string side_name(Side s) { return s == Side::Left ? "left" : "right"; }

Side parse_side(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw std::invalid_argument("unknown side '" + s + "'");
}

}  // namespace zdlab
