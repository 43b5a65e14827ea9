#pragma once
// Matrix model of the special linear Lie algebra sl(n) over the rationals.
//
// Elements are dense n x n rational matrices with trace zero.  The fixed
// basis consists of the off-diagonal matrix units e_ij (i != j) followed by
// the simple coroots h_k = e_kk - e_{k+1,k+1}; the dual basis is taken with
// respect to the trace form tr(AB).  All indices are 1-based to match the
// usual matrix-unit notation.

#include <string>
#include <vector>

#include "qtr/linalg.hpp"

namespace qtr {

// One basis direction of sl(n): an off-diagonal unit or a simple coroot.
struct BasisLabel {
  enum class Kind { unit, cartan };
  Kind kind;
  int i = 0;  // unit: row index; cartan: coroot index k in 1..n-1
  int j = 0;  // unit: column index; unused for cartan

  static BasisLabel unit(int i, int j) { return {Kind::unit, i, j}; }
  static BasisLabel cartan(int k) { return {Kind::cartan, k, 0}; }
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

std::string to_string(const BasisLabel& label);

// Matrix unit e_ij of gl(n), 1-based.
RatMat unit_matrix(int n, int i, int j);

// Simple coroot h_k = e_kk - e_{k+1,k+1}.
RatMat cartan_matrix(int n, int k);

RatMat label_matrix(int n, const BasisLabel& label);

// The n^2 - 1 basis labels in fixed order: units e_ij row by row (skipping
// the diagonal), then the coroots h_1 .. h_{n-1}.
std::vector<BasisLabel> sl_basis(int n);

// Matrices of sl_basis(n) in the same order.
std::vector<RatMat> basis_matrices(int n);

// Dual basis with respect to the trace form: tr(basis[a] * dual[b]) = delta_ab.
std::vector<RatMat> dual_basis_matrices(int n);

RatMat bracket(const RatMat& a, const RatMat& b);  // AB - BA
Rational trace_form(const RatMat& a, const RatMat& b);  // tr(AB)

bool is_traceless(const RatMat& m);

// Coordinates of a traceless matrix in sl_basis(n) order; throws on nonzero
// trace or size mismatch.
RatVec sl_coordinates(int n, const RatMat& m);

}  // namespace qtr
