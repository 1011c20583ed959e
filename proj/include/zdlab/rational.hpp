#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zdlab {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Positive integers (the index set of sequences). Values that would overflow
/// saturate to kBeyond, which lies outside every truncation window.
using Index = std::uint64_t;
inline constexpr Index kBeyond = ~Index{0};

/// Canonical "p/q" form. Integers are written with denominator 1.
std::string to_string(const Rational& q);

/// Accepts "p/q", "p" and a leading sign. Throws std::invalid_argument on
/// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Nearest double when numerator and denominator fit in 53 bits; mpq's own
/// conversion truncates.
double to_double(const Rational& q);

Rational abs(const Rational& q);
Rational pow(const Rational& base, unsigned exponent);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Dense row-major rational matrix. Indices are 0-based.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  RationalMatrix transposed() const;
  RationalVector row(std::size_t r) const;
  RationalVector column(std::size_t c) const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace zdlab
