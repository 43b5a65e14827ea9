#include "qtr/linalg.hpp"

#include <stdexcept>

namespace qtr {

namespace {

// Number of nonzero entries of row i at or after column c; used to pick
// pivots that keep fill-in (and coefficient growth) small.
long row_weight(const RatMat& a, int i, int c) {
  long w = 0;
  for (int j = c; j < a.cols(); ++j)
    if (a(i, j) != 0) ++w;
  return w;
}

}  // namespace

RatEchelon rref(const RatMat& m) {
  RatMat a = m;
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    long best_weight = 0;
    for (int i = r; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      const long w = row_weight(a, i, c);
      if (best == -1 || w < best_weight) {
        best = i;
        best_weight = w;
      }
    }
    if (best == -1) continue;
    if (best != r) a.row(r).swap(a.row(best));
    const Rational pivot = a(r, c);
    if (pivot != 1)
      for (int j = c; j < cols; ++j)
        if (a(r, j) != 0) a(r, j) /= pivot;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Rational factor = a(i, c);
      if (factor == 0) continue;
      for (int j = c; j < cols; ++j) {
        if (a(r, j) == 0) continue;
        a(i, j) -= factor * a(r, j);
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  RatEchelon out;
  out.reduced = a.topRows(r);
  out.pivot_cols = std::move(pivot_cols);
  out.rank = r;
  out.cols = cols;
  return out;
}

int rank(const RatMat& m) { return rref(m).rank; }

RatMat kernel_basis(const RatMat& m) {
  const RatEchelon e = rref(m);
  std::vector<int> free_cols;
  {
    std::size_t p = 0;
    for (int c = 0; c < e.cols; ++c) {
      if (p < e.pivot_cols.size() && e.pivot_cols[p] == c)
        ++p;
      else
        free_cols.push_back(c);
    }
  }
  RatMat basis = RatMat::Zero(e.cols, static_cast<int>(free_cols.size()));
  for (int k = 0; k < static_cast<int>(free_cols.size()); ++k) {
    const int f = free_cols[k];
    basis(f, k) = 1;
    for (int i = 0; i < e.rank; ++i) basis(e.pivot_cols[i], k) = -e.reduced(i, f);
  }
  return basis;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  RatMat aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  const RatEchelon e = rref(aug);
  for (int i = 0; i < e.rank; ++i)
    if (e.pivot_cols[i] == static_cast<int>(m.cols())) return std::nullopt;
  RatVec x = RatVec::Zero(m.cols());
  for (int i = 0; i < e.rank; ++i) x(e.pivot_cols[i]) = e.reduced(i, m.cols());
  return x;
}

RatMat solve_many(const RatMat& m, const RatMat& b) {
  if (m.rows() != b.rows()) throw std::invalid_argument("solve_many: row mismatch");
  RatMat aug(m.rows(), m.cols() + b.cols());
  aug.leftCols(m.cols()) = m;
  aug.rightCols(b.cols()) = b;
  const RatEchelon e = rref(aug);
  for (int i = 0; i < e.rank; ++i)
    if (e.pivot_cols[i] >= static_cast<int>(m.cols()))
      throw std::runtime_error("solve_many: inconsistent right-hand side");
  RatMat x = RatMat::Zero(m.cols(), b.cols());
  for (int k = 0; k < b.cols(); ++k)
    for (int i = 0; i < e.rank; ++i)
      x(e.pivot_cols[i], k) = e.reduced(i, static_cast<int>(m.cols()) + k);
  return x;
}

namespace {

// Fraction-free Gauss-Jordan elimination (Bareiss/Montante one-step rule).
// All rows except the pivot row are updated each step as
//   a(i,j) <- (pivot * a(i,j) - a(i,c) * a(r,j)) / previous_pivot
// and every division is exact, so entries stay polynomial throughout.
// Afterwards the first `rank` rows carry det * RREF, where det is the last
// pivot (the determinant of the pivot submatrix).
struct PolyEchelon {
  PolyMat reduced;
  std::vector<int> pivot_cols;
  int rank = 0;
  Poly det;
};

long poly_weight(const Poly& p) { return static_cast<long>(p.terms().size()); }

PolyEchelon poly_eliminate(const PolyMat& m) {
  PolyMat a = m;
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  std::vector<int> pivot_cols;
  Poly prev(1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    long best_weight = 0;
    for (int i = r; i < rows; ++i) {
      if (a(i, c).is_zero()) continue;
      const long w = poly_weight(a(i, c));
      if (best == -1 || w < best_weight) {
        best = i;
        best_weight = w;
      }
    }
    if (best == -1) continue;
    if (best != r) a.row(r).swap(a.row(best));
    const Poly pivot = a(r, c);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Poly factor = a(i, c);
      for (int j = 0; j < cols; ++j) {
        if (j == c) continue;
        Poly num = pivot * a(i, j) - factor * a(r, j);
        if (num.is_zero()) {
          a(i, j) = Poly();
          continue;
        }
        Poly q;
        if (!num.divide_exact(prev, q))
          throw std::logic_error("fraction-free elimination: inexact division");
        a(i, j) = std::move(q);
      }
      a(i, c) = Poly();
    }
    prev = pivot;
    pivot_cols.push_back(c);
    ++r;
  }
  PolyEchelon out;
  out.reduced = std::move(a);
  out.pivot_cols = std::move(pivot_cols);
  out.rank = r;
  out.det = prev;
  return out;
}

}  // namespace

int rank(const PolyMat& m) { return poly_eliminate(m).rank; }

PolyMat kernel_basis(const PolyMat& m) {
  const PolyEchelon e = poly_eliminate(m);
  const int cols = static_cast<int>(m.cols());
  std::vector<int> free_cols;
  {
    std::size_t p = 0;
    for (int c = 0; c < cols; ++c) {
      if (p < e.pivot_cols.size() && e.pivot_cols[p] == c)
        ++p;
      else
        free_cols.push_back(c);
    }
  }
  PolyMat basis(cols, static_cast<int>(free_cols.size()));
  for (int i = 0; i < basis.rows(); ++i)
    for (int k = 0; k < basis.cols(); ++k) basis(i, k) = Poly();
  for (int k = 0; k < static_cast<int>(free_cols.size()); ++k) {
    const int f = free_cols[k];
    basis(f, k) = e.det;
    for (int i = 0; i < e.rank; ++i) basis(e.pivot_cols[i], k) = -e.reduced(i, f);
    // Strip the common factor det when every coordinate divides exactly
    // (always the case when det is constant).
    bool divisible = true;
    std::vector<Poly> quotients(cols);
    for (int i = 0; i < cols && divisible; ++i) {
      if (basis(i, k).is_zero()) continue;
      divisible = basis(i, k).divide_exact(e.det, quotients[i]);
    }
    if (divisible)
      for (int i = 0; i < cols; ++i)
        if (!basis(i, k).is_zero()) basis(i, k) = quotients[i];
  }
  return basis;
}

}  // namespace qtr
