#pragma once
// Shift-permutation combinatorics on the roots of sl(n).
//
// For coprime 1 <= c < n, the cyclic shift tau(i, j) = (i+c, j+c) (mod n)
// permutes index pairs; kappa = tau^{-1} is the shift by d = n - c.  Exit
// times of tau/kappa-orbits from the positive/negative root sets drive the
// closed combinatorial construction build_rc, and the same data yields the
// block-triangular decomposition X = Y' - kappa(Y'') used by the geometric
// route.

#include <optional>
#include <utility>

#include "qtr/quasitrig.hpp"

namespace qtr {

struct ShiftData {
  int n;
  int c;
  int d;  // n - c

  ShiftData(int n, int c);  // requires 1 <= c < n and gcd(n, c) = 1
};

using IndexPair = std::pair<int, int>;

// (i, j) -> (i+c, j+c) with indices taken in 1..n cyclically.
IndexPair tau(const ShiftData& s, IndexPair root);
IndexPair kappa(const ShiftData& s, IndexPair root);

// tau/kappa as linear maps on matrices: simultaneous cyclic relabelling of
// rows and columns, so tau_matrix(e_ij) = e_{tau(i,j)}.
RatMat tau_matrix(const ShiftData& s, const RatMat& m);
RatMat kappa_matrix(const ShiftData& s, const RatMat& m);

// Orbit exit times.  For a positive root (i < j): p is the first k >= 1 with
// tau^k(root) negative, and q is the length of the initial kappa-run inside
// the negative roots (absent when kappa(root) is positive).  For a negative
// root (i > j): t is the length of the initial kappa-run inside the negative
// roots, possibly 0.
struct ExitTimes {
  std::optional<int> p, q, t;
};
ExitTimes exit_times(const ShiftData& s, IndexPair root);

// The tau-adapted basis of the diagonal Cartan subalgebra.  With u = e_11:
//   q_i = tau^i(u) - tau^{i-1}(u),   w_i = tau^{i-1}(u) - I/n,
//   f_i = (tau^i(u) + tau^{i-1}(u))/2 - I/n,
// and q_dual is trace-dual to q: tr(q_dual[i] q[j]) = delta_ij.
// Construction self-checks the identities f = q/2 + w and tau(w) = w + q.
struct CartanShiftBasis {
  std::vector<RatMat> q, w, f, q_dual;  // indices 0..n-2 for i = 1..n-1
};
CartanShiftBasis cartan_shift_basis(const ShiftData& s);

// The root-combinatorial summand
//   u_c = sum_{alpha > 0} [ sum_{k=1}^{p-1} e_{tau^k(alpha)} ^ e_{-alpha}
//                           + x e_{tau^p(alpha)} (x) e_{-alpha}
//                           - y e_{-alpha} (x) e_{tau^p(alpha)} ].
TensorPoly build_uc(const ShiftData& s);

// Cartan correction t_c = sum_i q_dual[i] (x) f[i].
TensorPoly build_tc(const ShiftData& s);

// The closed-formula solution r_c: p-part = (gamma + W)/2 + u_c + t_c.
QuasiTrigR build_rc(const ShiftData& s);

// Decomposition X = Y' - kappa(Y'') with (Y', Y'') sharing diagonal blocks
// (sizes c and d) and having zero upper-right blocks.  decompose_nabla runs
// both implementations and throws std::logic_error if they ever disagree.
struct NablaPair {
  RatMat y1;  // Y'
  RatMat y2;  // Y''
};
NablaPair decompose_nabla(const ShiftData& s, const RatMat& x);
NablaPair decompose_nabla_closed(const ShiftData& s, const RatMat& x);
std::vector<NablaPair> decompose_nabla_solved(const ShiftData& s,
                                              const std::vector<RatMat>& xs);

// Membership test for the pair space above.
bool in_nabla(const ShiftData& s, const RatMat& y1, const RatMat& y2);

// Explicit basis of the pair space used by decompose_nabla: shared diagonal
// combinations, shared in-block off-diagonal entries, and the two free
// lower-left block families; n^2 - 1 pairs in total.
struct NablaBasis {
  std::vector<RatMat> y1, y2;
};
NablaBasis nabla_basis(const ShiftData& s);

}  // namespace qtr
