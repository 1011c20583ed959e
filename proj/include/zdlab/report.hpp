#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zdlab/scenario.hpp"

namespace zdlab {

struct WitnessRecord {
  Witness witness;
  bool verified = false;
  Index window = 0;
  std::optional<std::pair<Index, Index>> failing;
  std::string detail;
  friend bool operator==(const WitnessRecord&, const WitnessRecord&) = default;
};

struct NormRecord {
  std::size_t dim = 0;
  std::string p;
  std::string method;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t iterations = 0;
  std::string boundedness;
  friend bool operator==(const NormRecord&, const NormRecord&) = default;
};

struct OracleRecord {
  Side side = Side::Left;
  Index requested = 0;
  Index window = 0;
  Status status = Status::Unknown;
  Rule rule = Rule::None;
  bool passed = false;
  std::string detail;
  friend bool operator==(const OracleRecord&, const OracleRecord&) = default;
};

/// Free-form key/value evidence (polynomials, essential ranges, summaries).
using Fact = std::pair<std::string, std::string>;

struct TaskResult {
  std::size_t index = 0;
  TaskKind kind = TaskKind::ClassifyZd;
  bool ok = true;       // ran without error
  bool passed = true;   // every check inside the task held
  std::string error;
  std::vector<Verdict> verdicts;
  std::vector<WitnessRecord> witnesses;
  std::vector<ConvergenceTable> tables;
  std::vector<NormRecord> norms;
  std::vector<OracleRecord> oracle;
  std::vector<Fact> facts;
  std::optional<double> wall_ms;
  friend bool operator==(const TaskResult&, const TaskResult&) = default;
};

struct Report {
  std::string scenario_id;
  std::vector<TaskResult> tasks;

  bool all_ok() const;
  friend bool operator==(const Report&, const Report&) = default;
};

struct RunOptions {
  bool timing = false;
  std::optional<unsigned> n_max;
  std::optional<Rational> tol;
  NormOptions norm;
};

Report run(const Scenario& s, const RunOptions& opts = {});

enum class ReportFormat { Table, Csv, Structured };
ReportFormat parse_report_format(const std::string& s);

std::string emit_report(const Report& r, ReportFormat format);
/// One (file name, CSV text) pair per convergence table.
std::vector<std::pair<std::string, std::string>> csv_files(const Report& r);
/// Inverse of emit_report(r, Structured).
Report parse_report(const std::string& text);

/// Rounds to 12 significant digits, the precision reports carry.
double quantize(double x);

}  // namespace zdlab
