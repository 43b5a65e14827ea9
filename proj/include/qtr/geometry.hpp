/*
 * geometry.hpp
 * ------------
 * The geometric route to the quasi-trigonometric solutions: gluing matrices
 * K and J = K^{-1} for a coprime block shape (c, d), the block-swap
 * involution X -> X^sharp = J X J^{-1}, the space Sol((c,d), x) of matrix
 * polynomials in z subject to the gluing constraint F_0 = -x F_infty^sharp,
 * the residue and evaluation maps with their explicit divisors, a closed
 * formula for the inverse of the residue map, and the assembly of the
 * resulting r-matrix.
 *
 * The variable x stays formal throughout: every identity is established as a
 * polynomial identity, never by sampling.  Divisions happen exactly once, at
 * assembly time, with a mandatory zero-remainder check.
 */
#pragma once

#include "qtr/lie.hpp"
#include "qtr/quasitrig.hpp"
#include "qtr/shift.hpp"
#include "qtr/tensor.hpp"

#include <vector>

namespace qtr {

struct BlockShape {
  int c = 0;
  int d = 0;
  int n = 0;  // c + d

  BlockShape(int c_, int d_);  // requires c, d >= 1 and gcd(c, d) = 1
};

// Gluing matrix K_{(c,d)}: built by the recursive blow-up procedure
// (base K_{(1,1)} = [[0,1],[1,0]], one rule growing c, one growing d) and
// independently by the closed block form [[0, I_c],[I_d, 0]]; throws
// std::logic_error if the two constructions ever disagree.
RatMat make_K(const BlockShape& shape);

// J_{(c,d)} = K^{-1} = [[0, I_d],[I_c, 0]]; the inverse relation is checked.
RatMat make_J(const BlockShape& shape);

// X^sharp = J X J^{-1}, the involution swapping the block quadrants of X to
// [[D, C],[B, A]].  Computed by the index shift and checked against the
// actual conjugation.
RatMat sharp(const BlockShape& shape, const RatMat& x);
PolyMat sharp(const BlockShape& shape, const PolyMat& x);

// Sol((c,d), x): traceless matrix polynomials
//   F(z) = [[A0 + z A1, B], [C0 + z C1 + z^2 C2, D0 + z D1]]
// with F_0 = -x F_infty^sharp, where F_0 collects the constant coefficients
// together with B and F_infty collects the leading ones together with B.
// The basis entries are polynomials in {x, z}; the dimension is n^2 - 1.
struct SolSpace {
  BlockShape shape;
  std::vector<PolyMat> basis;
};
SolSpace sol_space(const BlockShape& shape);

// Membership and constraint check for a single candidate element.
bool in_sol_space(const BlockShape& shape, const PolyMat& f);

// Values of the residue and evaluation maps, kept in cleared form: the pair
// (numerator, divisor) represents numerator / divisor without ever forming a
// rational function.
struct ClearedValue {
  PolyMat numerator;
  Poly divisor;
};

// res(F) = F(x) / x  and  ev(F) = F(y) / (y - x), per the dz/z residue
// normalization.
ClearedValue res_map(const PolyMat& f);
ClearedValue ev_map(const PolyMat& f);

// Closed-form inverse of the residue map.  The membership constraint couples
// matrix positions along the orbits of (i,j) -> (i+c, j+c) mod n, so the
// preimage of a constant matrix is assembled entrywise by finite walks along
// those orbits: upper-right positions anchor each positive stretch, negative
// stretches chain onto the next anchor, and the diagonal orbit closes up by
// tracelessness.  On basis elements this reproduces the familiar closed
// forms, e.g. res^{-1}(q_i) = z tau(w_i) - x w_i and, for a negative root,
// res^{-1}(e_beta) = z e_beta + (z - x) sum_{l=1}^{t} e_{kappa^l(beta)}.
// The result lies in Sol((c,d), x) and satisfies res(F) = X; both are
// asserted.
PolyMat res_inverse_explicit(const ShiftData& s, const RatMat& x0);

// Generic inverse: solve for the coordinates of F in the sol_space basis
// such that F(x) = x * X identically.  Agrees with the closed form.
PolyMat res_inverse_solved(const ShiftData& s, const RatMat& x0);

// Closed-form images (y - x) * r_sharp(g) for the tau-adapted basis
// {e_alpha (alpha positive), q_i, e_beta (beta negative)}; each entry is
// checked against ev(res^{-1}(g)) computed through the generic pipeline.
struct RSharpEntry {
  RatMat g;           // basis element whose image this row records
  PolyMat numerator;  // (y - x) * r_sharp(g), entries in {x, y}
};
std::vector<RSharpEntry> rsharp_closed_table(const ShiftData& s);

// Assembly: r(x, y) = 1/(y-x) * sum_beta  g*_beta (x) F_beta(y)  with
// F_beta = res^{-1}(g_beta).  The canonical form subtracts the singular part
// x/(y-x) * casimir and divides the remainder exactly by (y - x); a nonzero
// remainder raises "geometric output not quasi-trigonometric".
QuasiTrigR geometric_r(const ShiftData& s);

}  // namespace qtr
