#pragma once
// Belavin-Drinfeld style cycle data on the extended Dynkin diagram of sl(n)
// and the candidate quasi-trigonometric r-matrices it generates.
//
// The extended Dynkin diagram of sl(n) is a cycle with nodes a0, ..., a_{n-1};
// a0 is the affine node, a1..a_{n-1} are the finite simple roots.  A datum
// consists of two node subsets Gamma1 (finite nodes only) and Gamma2, plus a
// bijection tau: Gamma1 -> Gamma2 that preserves the cycle pairing and is
// nilpotent: every node leaves Gamma1 after finitely many applications.
//
// Such a datum generates a candidate solution
//
//   r = r_standard + r0 + sum over segments alpha inside Gamma1 of
//                         sum_k  e_{tau^k(alpha)} ^ e_{-alpha},
//
// where tau acts node-wise on the segment and the iteration runs while the
// previous image still lies inside Gamma1.  An image segment containing the
// affine node a0 stands for a loop-weighted root e_gamma with gamma the
// negative matrix position wrapping the cycle; it enters the wedge carrying
// the loop variable of its tensor leg (x on the left, y on the right).  The
// Cartan correction r0 lives in the wedge square of the diagonal subalgebra
// and must solve, for every alpha in Gamma1,
//
//   (alpha (x) 1 + 1 (x) tau(alpha)) (r0 + gamma_cartan / 2) = 0,
//
// with roots acting through the trace form on each tensor leg and
// gamma_cartan the diagonal part of the Casimir tensor.  Whether every such
// datum really solves the classical Yang-Baxter equation is an open question;
// the builders here construct the candidate and leave verification to
// cybe_residual.

#include <string>
#include <unordered_map>
#include <vector>

#include "qtr/shift.hpp"
#include "qtr/tensor.hpp"

namespace qtr {

// Cycle datum.  Nodes are labelled 0..n-1 with 0 the affine node.  gamma1 and
// gamma2 are kept sorted; tau maps each gamma1 node to a gamma2 node.
struct BDData {
  int n = 0;
  std::vector<int> gamma1;
  std::vector<int> gamma2;
  std::unordered_map<int, int> tau;
};

// Cycle pairing (a_i, a_j): 2 on the diagonal, -1 for cycle neighbours when
// n >= 3, and -2 off the diagonal when n == 2 (doubled bond).
Rational node_pairing(int n, int i, int j);

// Checks every structural requirement and throws std::invalid_argument
// naming the violated condition: node labels in range and distinct, gamma1
// free of the affine simple root, tau a bijection gamma1 -> gamma2, tau
// preserving the cycle pairing, tau nilpotent.
void validate_bd_data(const BDData& d);

// The datum behind the combinatorial c-shift construction: gamma1 = all
// finite nodes, tau(a_i) = a_{(i+c) mod n}, gamma2 the image set.
BDData bd_shift_data(const ShiftData& s);

// JSON round trip.  Format:
//   {"n":3,"gamma1":["a1"],"gamma2":["a0"],"tau":[["a1","a0"]]}
// with node labels "a0".."a<n-1>" and all lists sorted.  bd_data_from_json
// throws std::invalid_argument on malformed input; the emitted text parses
// back to an equal datum.
BDData bd_data_from_json(const std::string& text);
std::string bd_data_to_json(const BDData& d);

// Result of the builder: the candidate solution, the Cartan correction that
// was used, and the dimension of the homogeneous solution space of the
// Cartan constraint (how much freedom the choice of r0 had).
struct BDSolution {
  QuasiTrigR r;
  TensorPoly r0;
  int r0_freedom = 0;
};

// Builds the candidate solution for a valid datum.  The first overload
// solves the Cartan constraint itself and picks the canonical solution:
// coordinates over the wedge basis h_k ^ h_l (k < l, coroot order) are
// determined by reduced row echelon with all free coordinates set to zero.
// Throws std::runtime_error("no admissible r0") when the constraint has no
// solution.  The second overload uses the given r0 after checking that it
// lies in the Cartan wedge square and satisfies the constraint.
BDSolution bd_conjecture_r(const BDData& d);
BDSolution bd_conjecture_r(const BDData& d, const TensorPoly& r0);

}  // namespace qtr
