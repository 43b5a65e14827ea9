#pragma once
// Quasi-trigonometric r-matrices in canonical form, the exact Yang-Baxter
// verifier, and derived structures (skewness, non-degeneracy, Lie cobracket,
// constant gauge action).
//
// A quasi-trigonometric solution is written r(x, y) = x/(y-x) * gamma + p(x, y)
// with gamma the Casimir tensor and p polynomial.  Only p is stored; every
// identity is checked on numerators after clearing the fixed denominators, so
// the whole pipeline stays inside exact polynomial arithmetic.

#include "qtr/tensor.hpp"

namespace qtr {

struct QuasiTrigR {
  int n;
  TensorPoly p;  // two legs, coefficients in the variables x and y
};

// W = sum over positive roots of  e_alpha ^ e_{-alpha}
//   = sum_{i<j} (e_ij (x) e_ji - e_ji (x) e_ij).
TensorPoly positive_wedge_sum(int n);

// The standard solution: p = (gamma + W) / 2.
QuasiTrigR r_standard(int n);

// Cleared numerator N(x, y) = x * gamma + (y - x) * p(x, y), so that
// r = N / (y - x).
TensorPoly r_numerator(const QuasiTrigR& r);

// Numerator of [r^12, r^13] + [r^13, r^23] + [r^12, r^23] over the common
// denominator (x2-x1)(x3-x1)(x3-x2).  Zero iff r solves the classical
// Yang-Baxter equation as a rational identity.
TensorPoly cybe_residual(const QuasiTrigR& r);

// True iff p(x,y) + swap-legs(p)(y,x) = gamma, the canonical-form restatement
// of r^12(x,y) = -r^21(y,x).
bool check_skew(const QuasiTrigR& r);

// Evaluates r at (x0, y0), expands in dual-paired sl(n) bases, and tests for
// full rank n^2 - 1.  Throws on x0 == y0 (pole of r).
bool nondegenerate_at(const QuasiTrigR& r, const Rational& x0, const Rational& y0);

// Lie cobracket delta_r(P) = [P(x1) (x) 1 + 1 (x) P(x2), r(x1, x2)] for a
// polynomial map P into sl(n) (entries of P in the variable z).  The pole at
// x1 = x2 must cancel; throws std::domain_error("cobracket not polynomial")
// otherwise.
TensorPoly cobracket(const QuasiTrigR& r, const PolyMat& P);

// Cyclic sum Alt((delta (x) id) o delta)(P) over three legs; zero for every
// genuine solution (co-Jacobi identity).
TensorPoly cojacobi_sum(const QuasiTrigR& r, const PolyMat& P);

// Conjugates r by Ad_g (x) Ad_g.  gamma is Ad-invariant, so only p moves.
QuasiTrigR gauge_constant(const QuasiTrigR& r, const RatMat& g);

// Entry-wise Poly::substitute on a polynomial matrix.
PolyMat substitute(const PolyMat& m, Var v, const Poly& value);

}  // namespace qtr
