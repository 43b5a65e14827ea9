/*
 * poly.hpp
 * --------
 * Sparse multivariate polynomials over Rational in the fixed alphabet
 * {x, y, z, x1, x2, x3}.
 *
 * Monomials are exponent vectors ordered graded-lexicographically with the
 * variable priority x < y < z < x1 < x2 < x3; the term map iterates from the
 * leading monomial downwards, which makes rendering and leading-term division
 * canonical.  Every operation is exact; there is no floating point anywhere.
 */
#pragma once

#include "qtr/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

namespace qtr {

enum class Var : int { x = 0, y = 1, z = 2, x1 = 3, x2 = 4, x3 = 5 };

inline constexpr int kNumVars = 6;

const char* var_name(Var v);

using Monomial = std::array<std::uint8_t, kNumVars>;

// Graded-lexicographic "greater than" (total degree first, then the exponent
// of x, y, z, x1, x2, x3 in that order).  Used as the map comparator so that
// iteration starts at the leading term.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexGreater>;

  Poly() = default;
  Poly(int value) : Poly(Rational(value)) {}  // NOLINT: implicit by design (Eigen scalar)
  Poly(const Rational& value);                // NOLINT: implicit by design

  static Poly variable(Var v);
  static Poly monomial(const Monomial& m, const Rational& coeff);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (zero if absent); for is_constant() polynomials this is the value.
  Rational constant_value() const;

  const TermMap& terms() const { return terms_; }
  int total_degree() const;  // -1 for the zero polynomial
  int degree_in(Var v) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& rhs);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Poly operator*(const Rational& lhs, Poly rhs) { return rhs *= lhs; }

  bool operator==(const Poly& rhs) const { return terms_ == rhs.terms_; }
  bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

  Poly pow(unsigned e) const;

  // Replace every occurrence of v by the polynomial value.
  Poly substitute(Var v, const Poly& value) const;
  Poly substitute(Var v, const Rational& value) const;

  // Full evaluation; every variable that occurs must be bound by `point`.
  Rational eval(const std::array<Rational, kNumVars>& point) const;

  // Exact division: on success sets quotient with *this == quotient * divisor
  // and returns true; returns false (quotient unspecified) when the division
  // does not come out exactly.  Division by zero throws.
  bool divide_exact(const Poly& divisor, Poly& quotient) const;

  // Canonical text form, e.g. "x^2-y^2", "-1/2*x*y+z", "0".
  std::string str() const;
  // Inverse of str(); accepts optional whitespace between tokens.
  static Poly parse(const std::string& text);

 private:
  void insert_term(const Monomial& m, const Rational& coeff);

  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) {
  return os << p.str();
}

}  // namespace qtr
