#pragma once
/*
 * Lagrangian orders for the loop pairing in a finite z-degree window.
 *
 * The ambient space is pairs (F(z), f) where F is a Laurent series in z^-1
 * with matrix coefficients in sl_n and f is a constant sl_n matrix, paired by
 *
 *   <(F1, f1), (F2, f2)> = [z^0] Tr(F1 F2) - tr(f1 f2).
 *
 * An order is presented by a finite basis supported in a degree window
 * [lo, hi] plus an implied tail z^{<= tail_degree} * sl_n[[z^-1]] x {0} that
 * is handled symbolically by degree bookkeeping (never materialized, never
 * truncated).  Against the polynomial subalgebra {(P(z), P(0))} each order
 * determines dual elements whose polynomial corrections assemble into a
 * quasi-trigonometric r-matrix; reducing mod the deep tail recovers a
 * finite-dimensional picture in sl_n x sl_n.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtr/linalg.hpp"
#include "qtr/quasitrig.hpp"
#include "qtr/shift.hpp"

namespace qtr {

// One element (F(z), f): F stored as degree -> nonzero coefficient matrix,
// zero outside the declared window [lo, hi]; f constant.
struct WindowedLoopPair {
  int n = 0;
  int lo = 0;
  int hi = 0;
  std::map<int, RatMat> F;
  RatMat f;

  WindowedLoopPair() = default;
  WindowedLoopPair(int n_, int lo_, int hi_);

  RatMat coeff(int degree) const;  // zero matrix when absent
  void set_coeff(int degree, const RatMat& value);
  bool operator==(const WindowedLoopPair& other) const;
  bool operator!=(const WindowedLoopPair& other) const { return !(*this == other); }
};

// <a, b> as above.  Throws std::runtime_error("window too narrow") if a
// stored coefficient of one factor would pair against a degree outside the
// other factor's declared window: truncation is never silent.
Rational loop_pairing(const WindowedLoopPair& a, const WindowedLoopPair& b);

// P(z) |-> (P(z), P(0)) for a matrix polynomial in z.
WindowedLoopPair embed_polynomial(const PolyMat& P, int lo, int hi);

// A Lagrangian order: window basis plus implied tail
// z^{<= *tail_degree} * sl_n[[z^-1]] x {0} (no tail when absent).
struct OrderSpec {
  std::string name;
  int n = 0;
  int lo = 0;
  int hi = 0;
  std::optional<int> tail_degree;
  std::vector<WindowedLoopPair> basis;
};

// The standard order: z^-1 sl_n[[z^-1]] x {0} plus lower x {0}, {0} x upper,
// and the anti-diagonal Cartan {(h, -h)}.
OrderSpec order_w_std(int n, int lo = -3, int hi = 3);

// The block-shift order for block sizes (c, d): the residual part
// (z^-2 sl_n[[z^-1]] + z^-1 b_(c,d) + n_(c,d)) x {0} plus the twisted
// diagonal {(Ad_T(X), kappa(X))} with T = diag(I_c, z I_d).
OrderSpec order_w_cd(const ShiftData& s, int lo = -3, int hi = 3);

// The polynomial intersection for block sizes (c, d): {(X, X) | X block
// lower-triangular} + z n_(c,d) x {0}.  Has no tail.
OrderSpec order_p_cd(const ShiftData& s, int lo = -3, int hi = 3);

// All pairwise loop pairings among window basis elements vanish, and tail
// cross-pairings vanish by degree bookkeeping (verified, not assumed).
bool check_isotropic(const OrderSpec& W);

// Within the window, [basis | tail slice | polynomial generators z^0..z^hi]
// has full column rank and spans the whole windowed coordinate space.
bool check_transversal(const OrderSpec& W);

// Brackets of window basis elements stay inside span(basis) + tail.
bool check_bracket_closed(const OrderSpec& W);

// Solution of w_base = w - p for the generator z^k g_beta (beta indexes
// sl_basis(n)): w lies in span(basis + tail), p is a matrix polynomial in z.
struct DualElement {
  WindowedLoopPair w;
  PolyMat p;
};

// Computes the dual element for (k, beta); k in {0, 1} is solved in-window,
// k >= 2 is certified to have p = 0 via the deep-tail containment.  Asserts
// the duality pairings against every polynomial generator in the window.
DualElement dual_basis_element(const OrderSpec& W, int k, int beta);

// r(x, y) = x/(y-x) * gamma + p_std + sum_{k in {0,1}, beta} x^k g_beta (x)
// p_(k,beta)(y); requires isotropy and transversality.
QuasiTrigR r_from_order(const OrderSpec& W);

// A subspace of sl_n x sl_n given by a spanning list of pairs.
struct FinitePairSubspace {
  int n = 0;
  std::vector<std::pair<RatMat, RatMat>> basis;
};

// {(X, kappa(X))} over the sl_n basis.
FinitePairSubspace twisted_diagonal(const ShiftData& s);

// The splitting complement of the twisted diagonal, from nabla_basis.
FinitePairSubspace nabla_pairs(const ShiftData& s);

int pair_intersection_dim(const FinitePairSubspace& a,
                          const FinitePairSubspace& b);

// Isotropic for <(a1,a2),(b1,b2)> = Tr(a1 b1) - Tr(a2 b2) and of dimension
// n^2 - 1 (half of the ambient dimension).
bool pair_lagrangian(const FinitePairSubspace& v);

// Componentwise brackets of spanning pairs stay inside the span.
bool pair_bracket_closed(const FinitePairSubspace& v);

bool same_pair_span(const FinitePairSubspace& a, const FinitePairSubspace& b);

struct NablaDeltaReport {
  int intersection_dim = -1;
  bool decomposition_ok = false;
};

// Verifies sl_n x sl_n = twisted diagonal + complement: zero intersection,
// complementary dimensions, both halves Lagrangian and bracket-closed
// (the last two asserted via std::logic_error).
NablaDeltaReport nabla_delta_check(const ShiftData& s);

// Reduction of an order inside the ambient order Ad_T(sl_n[[z^-1]]) x sl_n to
// sl_n x sl_n via (F, f) |-> (Ad_T^-1(F)(0), f).  Throws when a basis element
// leaves the ambient order.
FinitePairSubspace reduce_order(const OrderSpec& W, const ShiftData& s);

// JSON round-trip for user-supplied orders (schema "qtr-order-1").
std::string order_to_json(const OrderSpec& W);
OrderSpec order_from_json(const std::string& text);

}  // namespace qtr
