#pragma once
// Tensors over gl(n) with polynomial coefficients.
//
// A TensorPoly is a finite sum  sum_k  c_k(x, y, ...) * u_1 (x) u_2 [(x) u_3]
// where each leg u_i is a matrix unit e_ij of gl(n) and each coefficient is an
// exact multivariate polynomial.  Two- and three-leg tensors cover everything
// the library needs: classical r-matrices live on two legs, the associated
// Yang-Baxter expression on three.

#include <array>
#include <cstdint>
#include <map>

#include "qtr/lie.hpp"
#include "qtr/poly.hpp"

namespace qtr {

class TensorPoly {
 public:
  // (i1, j1, i2, j2, i3, j3), 1-based; a two-leg tensor leaves the last pair 0.
  using UnitKey = std::array<std::uint8_t, 6>;

  TensorPoly(int n, int legs);

  int n() const { return n_; }
  int legs() const { return legs_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<UnitKey, Poly>& terms() const { return terms_; }
  Poly coeff(const UnitKey& key) const;

  // Accumulates coeff * (unit tensor); drops the entry when it cancels.
  void add(const UnitKey& key, const Poly& coeff);

  TensorPoly operator-() const;
  TensorPoly& operator+=(const TensorPoly& rhs);
  TensorPoly& operator-=(const TensorPoly& rhs);
  TensorPoly& operator*=(const Poly& scalar);
  friend TensorPoly operator+(TensorPoly lhs, const TensorPoly& rhs) { return lhs += rhs; }
  friend TensorPoly operator-(TensorPoly lhs, const TensorPoly& rhs) { return lhs -= rhs; }
  friend TensorPoly operator*(const Poly& scalar, TensorPoly t) { return t *= scalar; }
  friend bool operator==(const TensorPoly& a, const TensorPoly& b);
  friend bool operator!=(const TensorPoly& a, const TensorPoly& b) { return !(a == b); }

  // Exchange two legs (1-based), e.g. swap_legs(1, 2) maps a (x) b to b (x) a.
  TensorPoly swap_legs(int a, int b) const;

  // Apply Poly::substitute to every coefficient.
  TensorPoly substitute(Var v, const Poly& value) const;

  std::string str() const;  // deterministic rendering for diagnostics

 private:
  int n_;
  int legs_;
  std::map<UnitKey, Poly> terms_;
};

TensorPoly::UnitKey unit_key(int i1, int j1, int i2, int j2);
TensorPoly::UnitKey unit_key(int i1, int j1, int i2, int j2, int i3, int j3);

// a (x) b with an optional polynomial coefficient; entries of a and b land in
// the unit-basis coefficients.
TensorPoly simple2(const RatMat& a, const RatMat& b, const Poly& coeff = Poly(1));

// a (x) b - b (x) a.
TensorPoly wedge2(const RatMat& a, const RatMat& b);

// Quadratic Casimir element of sl(n) as a two-leg tensor:
//   sum_{i != j} e_ij (x) e_ji + sum_i e_ii (x) e_ii - (1/n) sum_{i,j} e_ii (x) e_jj.
TensorPoly casimir(int n);

// Diagonal-by-diagonal part of casimir(n).
TensorPoly cartan_casimir(int n);

// Commutators of two-leg tensors embedded into three legs by the labels in
// the name: bracket_12_13(a, b) places a on legs (1,2), b on legs (1,3) and
// brackets the shared leg 1, and so on.
TensorPoly bracket_12_13(const TensorPoly& a, const TensorPoly& b);
TensorPoly bracket_13_23(const TensorPoly& a, const TensorPoly& b);
TensorPoly bracket_12_23(const TensorPoly& a, const TensorPoly& b);

// Commutator [M (on the given leg), t] for a matrix with polynomial entries.
TensorPoly ad_leg(const PolyMat& m, const TensorPoly& t, int leg);

// Coefficients of a two-leg tensor evaluated at a point, flattened to the
// n^2 x n^2 matrix  M[(i-1)n + j-1][(k-1)n + l-1] = c_{(i,j),(k,l)}(point).
RatMat coefficient_matrix(const TensorPoly& t, const std::array<Rational, kNumVars>& point);

PolyMat to_poly(const RatMat& m);

}  // namespace qtr
