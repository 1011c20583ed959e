#include "zdlab/lp_operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace zdlab {

Exponent Exponent::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("exponent must be >= 1");
  return Exponent(p, false);
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed exponent '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("malformed exponent '" + text + "'");
  return finite(v);
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value_);
  return buf;
}

TruncatedOperator::TruncatedOperator(RationalMatrix m, Exponent p) : m_(std::move(m)), p_(p) {
  if (m_.rows() != m_.cols()) throw DimensionError("truncated operator must be square");
}

TruncatedOperator TruncatedOperator::identity(std::size_t n, Exponent p) {
  return TruncatedOperator(RationalMatrix::identity(n), p);
}

TruncatedOperator TruncatedOperator::zero(std::size_t n, Exponent p) {
  return TruncatedOperator(RationalMatrix(n, n), p);
}

TruncatedOperator TruncatedOperator::diagonal(const RationalVector& d, Exponent p) {
  RationalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return TruncatedOperator(std::move(m), p);
}

TruncatedOperator assemble(const OperatorSpec& spec, std::size_t n) {
  if (n < 1) throw DimensionError("assemble: dimension must be >= 1");
  RationalMatrix m(n, n);
  for (Index row = 1; row <= n; ++row) {
    const Index col = spec.phi(row);
    if (col <= n) m(row - 1, col - 1) = spec.u(row);
  }
  return TruncatedOperator(std::move(m), spec.p);
}

Boundedness is_bounded(const OperatorSpec& spec) {
  using S = Boundedness::Status;
  if (spec.p.is_infinite()) {
    return {S::Bounded, "on l^inf every bounded weight gives a bounded operator"};
  }
  if (spec.phi.has_const_tail()) {
    const Index c = std::get<ConstTail>(spec.phi.tail()).c;
    if (tail_is_p_summable(spec.u, spec.p.value(), false)) {
      return {S::Bounded, "infinite fiber at " + std::to_string(c) + " carries a p-summable weight"};
    }
    return {S::Unbounded, "infinite fiber at " + std::to_string(c) +
                              " makes sum of |u|^p over the fiber diverge"};
  }
  const Cardinal b = fiber_bound(spec.phi);
  return {S::Bounded, "fibers have at most " + b.to_string() + " points and u is bounded"};
}

PowerIterationError::PowerIterationError(std::vector<double> last_iterate, double residual,
                                         std::size_t iterations)
    : std::runtime_error("power iteration did not converge after " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")"),
      last_iterate_(std::move(last_iterate)),
      residual_(residual),
      iterations_(iterations) {}

double max_column_sum(const RationalMatrix& m) {
  Rational best = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    Rational s = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) s += abs(m(r, c));
    if (s > best) best = s;
  }
  return to_double(best);
}

double max_row_sum(const RationalMatrix& m) {
  Rational best = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += abs(m(r, c));
    if (s > best) best = s;
  }
  return to_double(best);
}

double vector_norm(const std::vector<double>& x, const Exponent& p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
  }
  if (p.is_one()) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return s;
  }
  if (p.is_two()) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::fabs(v), p.value());
  return std::pow(s, 1.0 / p.value());
}

double vector_norm(const RationalVector& x, const Exponent& p) {
  if (p.is_infinite() || p.is_one() || p.is_two()) {
    Rational acc = 0;
    for (const auto& v : x) {
      if (p.is_infinite()) {
        if (abs(v) > acc) acc = abs(v);
      } else if (p.is_one()) {
        acc += abs(v);
      } else {
        acc += v * v;
      }
    }
    return p.is_two() ? std::sqrt(to_double(acc)) : to_double(acc);
  }
  std::vector<double> d(x.size());
  std::transform(x.begin(), x.end(), d.begin(), [](const Rational& q) { return to_double(q); });
  return vector_norm(d, p);
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> start_vector(std::size_t n) {
  // Fixed seed and explicit bit mapping so every platform sees the same start.
  std::mt19937_64 gen(0x5eed2024ULL);
  std::vector<double> x(n);
  for (auto& v : x) v = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return x;
}

kernels::Policy pick_policy(const NormOptions& opts, std::size_t work) {
  return opts.auto_policy ? kernels::default_policy(work) : opts.policy;
}

}  // namespace

NormEstimate spectral_norm(const RationalMatrix& m, const NormOptions& opts) {
  NormEstimate out;
  out.method = NormMethod::PowerIteration;
  const auto a = kernels::CsrMatrix::from_dense(m);
  if (a.values.empty()) return out;
  const auto at = a.transposed();
  const auto policy = pick_policy(opts, a.values.size());

  std::vector<double> x = start_vector(m.cols());
  std::vector<double> y(m.rows());
  std::vector<double> z(m.cols());
  const double x0 = std::sqrt(dot(x, x));
  for (auto& v : x) v /= x0;

  double lambda = 0.0;
  double residual = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    kernels::spmv(policy, a, x, y);
    kernels::spmv(policy, at, y, z);
    const double next = dot(x, z);
    const double zn = std::sqrt(dot(z, z));
    if (zn == 0.0) {
      out.iterations = it;
      return out;
    }
    residual = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) residual += (z[i] - next * x[i]) * (z[i] - next * x[i]);
    residual = std::sqrt(residual);
    for (std::size_t i = 0; i < z.size(); ++i) x[i] = z[i] / zn;
    if (it > 1 && std::fabs(next - lambda) <= opts.tolerance * next) {
      kernels::spmv(policy, a, x, y);
      const double value = std::sqrt(std::max(dot(y, y), next));
      out.lower = out.upper = value;
      out.iterations = it;
      return out;
    }
    lambda = next;
  }
  throw PowerIterationError(x, residual, opts.max_iterations);
}

namespace {

// Lower bound for ||m||_p from unit vectors, the constant vector and a few
// steps of the dual-vector power method for p-norms.
double pnorm_lower_bound(const RationalMatrix& m, const Exponent& p) {
  const auto a = kernels::CsrMatrix::from_dense(m);
  const auto at = a.transposed();
  const std::size_t n = m.cols();
  const double pv = p.value();
  const double qv = pv / (pv - 1.0);
  const Exponent q = Exponent::finite(qv);
  double best = 0.0;

  std::vector<double> y(m.rows());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(m.rows(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) col[r] = to_double(m(r, j));
    best = std::max(best, vector_norm(col, p));
  }

  std::vector<double> x(n, 1.0);
  const double xn = vector_norm(x, p);
  for (auto& v : x) v /= xn;
  std::vector<double> z(n);
  for (int it = 0; it < 100; ++it) {
    kernels::serial::spmv(a, x, y);
    const double yn = vector_norm(y, p);
    if (yn == 0.0) break;
    best = std::max(best, yn);
    std::vector<double> dual(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      dual[i] = std::copysign(std::pow(std::fabs(y[i]) / yn, pv - 1.0), y[i]);
    }
    kernels::serial::spmv(at, dual, z);
    const double zn = vector_norm(z, q);
    if (zn == 0.0 || zn <= dot(z, x) * (1.0 + 1e-14)) break;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::copysign(std::pow(std::fabs(z[i]) / zn, qv - 1.0), z[i]);
    }
  }
  return best;
}

}  // namespace

NormEstimate operator_norm(const TruncatedOperator& t, const NormOptions& opts) {
  const auto& p = t.p();
  NormEstimate out;
  if (p.is_one()) {
    out.lower = out.upper = max_column_sum(t.matrix());
    out.method = NormMethod::ColumnSum;
    return out;
  }
  if (p.is_infinite()) {
    out.lower = out.upper = max_row_sum(t.matrix());
    out.method = NormMethod::RowSum;
    return out;
  }
  if (p.is_two()) return spectral_norm(t.matrix(), opts);

  // Riesz-Thorin: ||T||_p <= ||T||_1^{1/p} ||T||_inf^{1-1/p}.
  const double c1 = max_column_sum(t.matrix());
  const double cinf = max_row_sum(t.matrix());
  out.method = NormMethod::Interpolated;
  out.upper = std::pow(c1, 1.0 / p.value()) * std::pow(cinf, 1.0 - 1.0 / p.value());
  out.lower = std::min(pnorm_lower_bound(t.matrix(), p), out.upper);
  return out;
}

RationalVector apply(const TruncatedOperator& t, const RationalVector& x) {
  if (x.size() != t.dim()) {
    throw DimensionError("apply: vector length " + std::to_string(x.size()) + " != dimension " +
                         std::to_string(t.dim()));
  }
  return kernels::matvec(kernels::default_policy(t.dim() * t.dim()), t.matrix(), x);
}

TruncatedOperator compose(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.dim() != b.dim()) throw DimensionError("compose: dimension mismatch");
  if (!(a.p() == b.p())) throw DimensionError("compose: exponent mismatch");
  const std::size_t n = a.dim();
  return TruncatedOperator(kernels::matmul(kernels::default_policy(n * n * n), a.matrix(), b.matrix()),
                           a.p());
}

std::string to_csv(const TruncatedOperator& t) {
  std::ostringstream os;
  for (std::size_t r = 0; r < t.dim(); ++r) {
    for (std::size_t c = 0; c < t.dim(); ++c) {
      if (c) os << ',';
      os << to_string(t.matrix()(r, c));
    }
    os << '\n';
  }
  return os.str();
}

Index right_support_limit(const SelfMap& phi, Index n) {
  Index k = 0;
  while (k < n && phi(k + 1) <= n) ++k;
  return k;
}

Index left_support_limit(const SelfMap& phi, Index n) {
  Index k = 0;
  while (k < n) {
    const auto f = fiber(phi, k + 1);
    if (f.infinite() || (!f.finite_part.empty() && f.finite_part.back() > n)) break;
    ++k;
  }
  return k;
}

Index saturating_window(const SelfMap& phi, Index n_max) {
  Index n = n_max;
  for (Index k = 1; k <= n_max; ++k) {
    const auto f = fiber(phi, k);
    if (f.infinite()) throw std::invalid_argument("saturating_window: infinite fiber at " + std::to_string(k));
    if (!f.finite_part.empty()) n = std::max(n, f.finite_part.back());
  }
  return n;
}

}  // namespace zdlab
