#include "qtr/quasitrig.hpp"

#include <stdexcept>

namespace qtr {

namespace {

const Poly kX = Poly::variable(Var::x);
const Poly kY = Poly::variable(Var::y);
const Poly kX1 = Poly::variable(Var::x1);
const Poly kX2 = Poly::variable(Var::x2);
const Poly kX3 = Poly::variable(Var::x3);

// N(x_a, x_b): the cleared numerator with legs relabelled to a variable pair.
TensorPoly numerator_at(const TensorPoly& numerator, const Poly& xa, const Poly& xb) {
  return numerator.substitute(Var::x, xa).substitute(Var::y, xb);
}

}  // namespace

TensorPoly positive_wedge_sum(int n) {
  TensorPoly w(n, 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      w.add(unit_key(i, j, j, i), Poly(1));
      w.add(unit_key(j, i, i, j), Poly(-1));
    }
  return w;
}

QuasiTrigR r_standard(int n) {
  TensorPoly p = casimir(n) + positive_wedge_sum(n);
  p *= Poly(Rational(1, 2));
  return {n, std::move(p)};
}

TensorPoly r_numerator(const QuasiTrigR& r) {
  TensorPoly n = kX * casimir(r.n);
  n += (kY - kX) * r.p;
  return n;
}

TensorPoly cybe_residual(const QuasiTrigR& r) {
  const TensorPoly num = r_numerator(r);
  const TensorPoly n12 = numerator_at(num, kX1, kX2);
  const TensorPoly n13 = numerator_at(num, kX1, kX3);
  const TensorPoly n23 = numerator_at(num, kX2, kX3);
  TensorPoly residual = (kX3 - kX2) * bracket_12_13(n12, n13);
  residual += (kX2 - kX1) * bracket_13_23(n13, n23);
  residual += (kX3 - kX1) * bracket_12_23(n12, n23);
  return residual;
}

bool check_skew(const QuasiTrigR& r) {
  // swap-legs(p) with x and y exchanged, via a scratch variable.
  TensorPoly swapped = r.p.swap_legs(1, 2)
                           .substitute(Var::x, kX3)
                           .substitute(Var::y, kX)
                           .substitute(Var::x3, kY);
  swapped += r.p;
  return swapped == casimir(r.n);
}

bool nondegenerate_at(const QuasiTrigR& r, const Rational& x0, const Rational& y0) {
  if (x0 == y0) throw std::invalid_argument("nondegenerate_at: pole of r at x0 == y0");
  const int n = r.n;
  std::array<Rational, kNumVars> point{};
  point[static_cast<int>(Var::x)] = x0;
  point[static_cast<int>(Var::y)] = y0;

  // Full r(x0, y0) in the matrix-unit basis.
  const Rational s = x0 / (y0 - x0);
  RatMat units = coefficient_matrix(r.p, point);
  units += s * coefficient_matrix(casimir(n), point);

  // Expand in dual-paired sl(n) bases: r = sum M(a,b) basis_a (x) basis_b with
  // M(a,b) = tr-pairing against dual_a (x) dual_b.
  const auto dual = dual_basis_matrices(n);
  const int dim = n * n - 1;
  RatMat m = RatMat::Zero(dim, dim);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          const Rational& v = units((i - 1) * n + j - 1, (k - 1) * n + l - 1);
          if (v == 0) continue;
          for (int a = 0; a < dim; ++a) {
            const Rational da = dual[a](j - 1, i - 1);
            if (da == 0) continue;
            for (int b = 0; b < dim; ++b) {
              const Rational db = dual[b](l - 1, k - 1);
              if (db != 0) m(a, b) += v * da * db;
            }
          }
        }
  return rank(m) == dim;
}

TensorPoly cobracket(const QuasiTrigR& r, const PolyMat& P) {
  if (P.rows() != r.n || P.cols() != r.n)
    throw std::invalid_argument("cobracket: matrix size mismatch");
  const TensorPoly n12 = numerator_at(r_numerator(r), kX1, kX2);
  const PolyMat p1 = substitute(P, Var::z, kX1);
  const PolyMat p2 = substitute(P, Var::z, kX2);
  TensorPoly acted = ad_leg(p1, n12, 1);
  acted += ad_leg(p2, n12, 2);

  const Poly divisor = kX2 - kX1;
  TensorPoly out(r.n, 2);
  for (const auto& [key, c] : acted.terms()) {
    Poly q;
    if (!c.divide_exact(divisor, q))
      throw std::domain_error("cobracket not polynomial");
    out.add(key, q);
  }
  return out;
}

TensorPoly cojacobi_sum(const QuasiTrigR& r, const PolyMat& P) {
  const int n = r.n;
  const TensorPoly d = cobracket(r, P);

  // (delta (x) id) of d: apply the cobracket to the first leg of each term,
  // splitting its coefficient into x1/x2 monomials so the first leg becomes a
  // genuine one-variable polynomial map.
  TensorPoly t(n, 3);
  for (const auto& [key, c] : d.terms()) {
    for (const auto& [mono, coeff] : c.terms()) {
      Monomial m = mono;
      const int deg1 = m[static_cast<int>(Var::x1)];
      const int deg2 = m[static_cast<int>(Var::x2)];
      for (int v = 0; v < kNumVars; ++v)
        if (v != static_cast<int>(Var::x1) && v != static_cast<int>(Var::x2) && m[v] != 0)
          throw std::logic_error("cojacobi_sum: unexpected variable in cobracket output");
      PolyMat inner(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) inner(a, b) = Poly();
      inner(key[0] - 1, key[1] - 1) =
          Poly::monomial(Monomial{}, coeff) * Poly::variable(Var::z).pow(deg1);
      const TensorPoly dd = cobracket(r, inner);
      const Poly leg3 = kX3.pow(deg2);
      for (const auto& [key2, c2] : dd.terms())
        t.add(unit_key(key2[0], key2[1], key2[2], key2[3], key[2], key[3]), c2 * leg3);
    }
  }

  // Cyclic alternation: legs (1,2,3) -> (3,1,2) with matching variable shift
  // x1 -> x2 -> x3 -> x1, summed over the three rotations.
  const auto rotate = [n](const TensorPoly& src) {
    TensorPoly out(n, 3);
    for (const auto& [key, c] : src.terms()) {
      const Poly shifted = c.substitute(Var::x3, Poly::variable(Var::z))
                               .substitute(Var::x2, kX3)
                               .substitute(Var::x1, kX2)
                               .substitute(Var::z, kX1);
      out.add(unit_key(key[4], key[5], key[0], key[1], key[2], key[3]), shifted);
    }
    return out;
  };

  const TensorPoly t2 = rotate(t);
  return t + t2 + rotate(t2);
}

QuasiTrigR gauge_constant(const QuasiTrigR& r, const RatMat& g) {
  const int n = r.n;
  if (g.rows() != n || g.cols() != n)
    throw std::invalid_argument("gauge_constant: size mismatch");
  if (rank(g) != n) throw std::invalid_argument("gauge_constant: singular gauge matrix");
  const RatMat ginv = solve_many(g, RatMat::Identity(n, n));

  TensorPoly q(n, 2);
  for (const auto& [key, c] : r.p.terms()) {
    const RatMat left = g * unit_matrix(n, key[0], key[1]) * ginv;
    const RatMat right = g * unit_matrix(n, key[2], key[3]) * ginv;
    q += simple2(left, right, c);
  }
  return {n, std::move(q)};
}

PolyMat substitute(const PolyMat& m, Var v, const Poly& value) {
  PolyMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).substitute(v, value);
  return out;
}

}  // namespace qtr
