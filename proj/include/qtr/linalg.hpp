#pragma once
// Exact linear algebra over the rationals and over multivariate polynomials.
//
// Matrices are dense Eigen types instantiated with exact scalars.  Gaussian
// elimination over the rationals uses plain field arithmetic with a
// sparsity-aware pivot choice; elimination over polynomials uses
// fraction-free Bareiss steps so intermediate entries stay polynomial.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "qtr/poly.hpp"
#include "qtr/rational.hpp"

namespace Eigen {

// Let Eigen matrices carry exact multivariate polynomial entries.
template <>
struct NumTraits<qtr::Poly> : GenericNumTraits<qtr::Poly> {
  typedef qtr::Poly Real;
  typedef qtr::Poly NonInteger;
  typedef qtr::Poly Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64
  };
  static inline Real epsilon() { return qtr::Poly(0); }
  static inline Real dummy_precision() { return qtr::Poly(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qtr {

using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using PolyMat = Eigen::Matrix<Poly, Eigen::Dynamic, Eigen::Dynamic>;
using PolyVec = Eigen::Matrix<Poly, Eigen::Dynamic, 1>;

// Row-reduced snapshot of a rational matrix: the echelon form, the pivot
// column of each pivot row, and the rank.  Reduction is full (identity on
// pivot columns), so kernels and solutions read off directly.
struct RatEchelon {
  RatMat reduced;               // rank rows of the RREF, pivots normalized to 1
  std::vector<int> pivot_cols;  // column index of each pivot row
  int rank = 0;
  int cols = 0;
};

// Reduced row echelon form over the rationals.
RatEchelon rref(const RatMat& m);

int rank(const RatMat& m);

// Basis of the right kernel {v : m v = 0}; one column per basis vector.
// The basis is the canonical RREF kernel basis (free variable = 1 slots).
RatMat kernel_basis(const RatMat& m);

// Solve m x = b exactly.  Empty optional when the system is inconsistent.
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

// Solve m X = B column by column with a single elimination of m.  Every
// column of B must be consistent; throws std::runtime_error otherwise.
RatMat solve_many(const RatMat& m, const RatMat& b);

// Rank of a polynomial matrix via fraction-free (Bareiss) elimination.
int rank(const PolyMat& m);

// Right kernel of a polynomial matrix over the rational function field,
// cleared to polynomial entries: each returned column v has m v = 0 with
// polynomial coordinates (common denominators removed via exact division).
PolyMat kernel_basis(const PolyMat& m);

}  // namespace qtr
