#pragma once

#include <vector>

#include "zdlab/rational.hpp"

// Exact Gauss-Jordan elimination over the rationals. Used by the annihilator
// oracle, so nothing here depends on how operators are assembled.
namespace zdlab::linalg {

struct Echelon {
  RationalMatrix reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivot_columns; // ascending
};

Echelon rref(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Basis of { x : m x = 0 }, one vector per free column.
std::vector<RationalVector> nullspace(const RationalMatrix& m);

/// Basis of { y : y^T m = 0 }.
std::vector<RationalVector> left_nullspace(const RationalMatrix& m);

/// True iff v lies in the span of basis (all vectors of equal length).
bool in_span(const std::vector<RationalVector>& basis, const RationalVector& v);

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace zdlab::linalg
