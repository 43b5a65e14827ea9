#include "qtr/lie.hpp"

#include <stdexcept>

namespace qtr {

namespace {

void require_size(int n, const char* where) {
  if (n < 2) throw std::invalid_argument(std::string(where) + ": need n >= 2");
}

}  // namespace

std::string to_string(const BasisLabel& label) {
  if (label.kind == BasisLabel::Kind::unit)
    return "e(" + std::to_string(label.i) + "," + std::to_string(label.j) + ")";
  return "h(" + std::to_string(label.i) + ")";
}

RatMat unit_matrix(int n, int i, int j) {
  require_size(n, "unit_matrix");
  if (i < 1 || i > n || j < 1 || j > n)
    throw std::invalid_argument("unit_matrix: index out of range");
  RatMat m = RatMat::Zero(n, n);
  m(i - 1, j - 1) = 1;
  return m;
}

RatMat cartan_matrix(int n, int k) {
  require_size(n, "cartan_matrix");
  if (k < 1 || k >= n) throw std::invalid_argument("cartan_matrix: index out of range");
  RatMat m = RatMat::Zero(n, n);
  m(k - 1, k - 1) = 1;
  m(k, k) = -1;
  return m;
}

RatMat label_matrix(int n, const BasisLabel& label) {
  return label.kind == BasisLabel::Kind::unit ? unit_matrix(n, label.i, label.j)
                                              : cartan_matrix(n, label.i);
}

std::vector<BasisLabel> sl_basis(int n) {
  require_size(n, "sl_basis");
  std::vector<BasisLabel> out;
  out.reserve(n * n - 1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) out.push_back(BasisLabel::unit(i, j));
  for (int k = 1; k < n; ++k) out.push_back(BasisLabel::cartan(k));
  return out;
}

std::vector<RatMat> basis_matrices(int n) {
  std::vector<RatMat> out;
  for (const BasisLabel& label : sl_basis(n)) out.push_back(label_matrix(n, label));
  return out;
}

std::vector<RatMat> dual_basis_matrices(int n) {
  const std::vector<RatMat> basis = basis_matrices(n);
  const int dim = static_cast<int>(basis.size());
  RatMat gram(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) gram(a, b) = trace_form(basis[a], basis[b]);
  // Column b of gram^{ -1 } gives the coefficients of dual[b] in the basis.
  const RatMat coeffs = solve_many(gram, RatMat::Identity(dim, dim));
  std::vector<RatMat> dual(dim, RatMat::Zero(n, n));
  for (int b = 0; b < dim; ++b)
    for (int a = 0; a < dim; ++a)
      if (coeffs(a, b) != 0) dual[b] += coeffs(a, b) * basis[a];
  return dual;
}

RatMat bracket(const RatMat& a, const RatMat& b) { return a * b - b * a; }

Rational trace_form(const RatMat& a, const RatMat& b) {
  Rational t(0);
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < b.rows(); ++k) t += a(i, k) * b(k, i);
  return t;
}

bool is_traceless(const RatMat& m) {
  Rational t(0);
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t == 0;
}

RatVec sl_coordinates(int n, const RatMat& m) {
  require_size(n, "sl_coordinates");
  if (m.rows() != n || m.cols() != n)
    throw std::invalid_argument("sl_coordinates: size mismatch");
  if (!is_traceless(m)) throw std::invalid_argument("sl_coordinates: nonzero trace");
  RatVec coords(n * n - 1);
  int pos = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) coords(pos++) = m(i - 1, j - 1);
  // Diagonal part: d = sum_k c_k h_k  <=>  c_k = d_1 + ... + d_k.
  Rational partial(0);
  for (int k = 1; k < n; ++k) {
    partial += m(k - 1, k - 1);
    coords(pos++) = partial;
  }
  return coords;
}

}  // namespace qtr
