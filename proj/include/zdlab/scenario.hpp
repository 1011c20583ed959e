#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zdlab/divisor_engine.hpp"
#include "zdlab/function_spaces.hpp"
#include "zdlab/tdz_sequences.hpp"

namespace zdlab {

/// One schema problem; line is 1-based, 0 when unknown.
struct SchemaError {
  std::string code;
  int line = 0;
  std::string message;
};

class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<SchemaError> errors);
  const std::vector<SchemaError>& errors() const { return errors_; }
  bool has(const std::string& code) const;

 private:
  std::vector<SchemaError> errors_;
};

enum class SpaceKind { Lp, Cx, Atomic };
std::string space_kind_name(SpaceKind k);

enum class TaskKind { ClassifyLeft, ClassifyRight, ClassifyZd, Witness, TdzDemo, Norm, VerifyAll };
std::string task_kind_name(TaskKind k);
TaskKind parse_task_kind(const std::string& s);

struct Task {
  TaskKind kind = TaskKind::ClassifyZd;
  int line = 0;
  std::optional<std::size_t> dim;      // N
  std::optional<unsigned> n_max;
  std::optional<Rational> tol;
  std::optional<double> eps;
  std::vector<std::string> probes;     // e<k>, harmonic, geometric
  std::optional<std::string> rule;     // tdz_demo sequence rule
  std::optional<Side> side;
  std::vector<std::size_t> windows;    // verify_all truncation sizes
};

struct Scenario {
  std::string id;
  SpaceKind space = SpaceKind::Lp;
  Exponent p = Exponent::two();

  // l^p symbols
  std::optional<WeightSeq> u;
  std::optional<SelfMap> phi;
  std::optional<C0Sequence> y;

  // C[a,b]
  Rational a = 0, b = 1;
  std::size_t grid = 101;
  std::optional<GridFunction> h_grid;

  // atomic L^p
  std::optional<AtomicMeasureSpace> atoms;
  std::optional<SimpleFunction> u_atomic;
  std::optional<AtomMap> phi_atomic;
  std::optional<SimpleFunction> h_atomic;

  std::vector<Task> tasks;

  OperatorSpec spec() const;
};

/// Parses and validates; throws ScenarioError listing every problem found.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace zdlab
