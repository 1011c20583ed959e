#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zdlab/kernels.hpp"
#include "zdlab/rational.hpp"
#include "zdlab/symbol_core.hpp"

namespace zdlab {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exponent p of l^p: a real number >= 1, or infinity.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent one() { return finite(1.0); }
  static Exponent two() { return finite(2.0); }
  static Exponent infinity() { return Exponent(0.0, true); }
  /// "1", "2", "1.5", "inf".
  static Exponent parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  bool is_one() const { return !infinite_ && value_ == 1.0; }
  bool is_two() const { return !infinite_ && value_ == 2.0; }
  double value() const { return value_; }
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// u C_phi on l^p: (u C_phi f)(m) = u(m) f(phi(m)).
struct OperatorSpec {
  WeightSeq u = WeightSeq::constant(1);
  SelfMap phi = SelfMap::identity();
  Exponent p = Exponent::two();

  static OperatorSpec composition(SelfMap phi, Exponent p = Exponent::two()) {
    return {WeightSeq::constant(1), std::move(phi), p};
  }
  static OperatorSpec multiplication(WeightSeq u, Exponent p = Exponent::two()) {
    return {std::move(u), SelfMap::identity(), p};
  }
};

/// N x N window of an operator on l^p. Row/column r holds sequence index r+1.
class TruncatedOperator {
 public:
  TruncatedOperator(RationalMatrix m, Exponent p);

  static TruncatedOperator identity(std::size_t n, Exponent p = Exponent::two());
  static TruncatedOperator zero(std::size_t n, Exponent p = Exponent::two());
  static TruncatedOperator diagonal(const RationalVector& d, Exponent p = Exponent::two());

  std::size_t dim() const { return m_.rows(); }
  const RationalMatrix& matrix() const { return m_; }
  const Exponent& p() const { return p_; }

  /// Entry at 1-based sequence indices.
  const Rational& entry(Index row, Index col) const { return m_(row - 1, col - 1); }

  friend bool operator==(const TruncatedOperator&, const TruncatedOperator&) = default;

 private:
  RationalMatrix m_;
  Exponent p_;
};

TruncatedOperator assemble(const OperatorSpec& spec, std::size_t n);

struct Boundedness {
  enum class Status { Bounded, Unbounded, Undecidable };
  Status status = Status::Undecidable;
  std::string reason;
  bool bounded() const { return status == Status::Bounded; }
};

Boundedness is_bounded(const OperatorSpec& spec);

enum class NormMethod { ColumnSum, RowSum, PowerIteration, Interpolated };

/// ||T||_p of a truncation. Point values have lower == upper.
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  NormMethod method = NormMethod::ColumnSum;
  std::size_t iterations = 0;

  bool is_interval() const { return method == NormMethod::Interpolated; }
  double value() const { return upper; }
};

struct NormOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 10'000;
  kernels::Policy policy = kernels::Policy::Serial;
  bool auto_policy = true;
};

class PowerIterationError : public std::runtime_error {
 public:
  PowerIterationError(std::vector<double> last_iterate, double residual, std::size_t iterations);
  const std::vector<double>& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }
  std::size_t iterations() const { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
  std::size_t iterations_;
};

NormEstimate operator_norm(const TruncatedOperator& t, const NormOptions& opts = {});

/// Largest singular value of m by power iteration on m^T m.
NormEstimate spectral_norm(const RationalMatrix& m, const NormOptions& opts = {});

double max_column_sum(const RationalMatrix& m);
double max_row_sum(const RationalMatrix& m);

double vector_norm(const RationalVector& x, const Exponent& p);
double vector_norm(const std::vector<double>& x, const Exponent& p);

RationalVector apply(const TruncatedOperator& t, const RationalVector& x);
TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b);

/// Row-major CSV with one "p/q" cell per entry.
std::string to_csv(const TruncatedOperator& t);

/// Largest K <= n with phi(m) <= n for all m <= K.
Index right_support_limit(const SelfMap& phi, Index n);
/// Largest K <= n such that every fiber of 1..K is finite and inside [1, n].
Index left_support_limit(const SelfMap& phi, Index n);
/// Smallest window containing every fiber of 1..n_max (n_max itself included).
Index saturating_window(const SelfMap& phi, Index n_max);

}  // namespace zdlab
