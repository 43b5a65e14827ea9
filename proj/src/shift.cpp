#include "qtr/shift.hpp"

#include <numeric>
#include <stdexcept>

namespace qtr {

namespace {

bool positive(IndexPair r) { return r.first < r.second; }
bool negative(IndexPair r) { return r.first > r.second; }

int shift_index(int i, int by, int n) { return (i - 1 + by) % n + 1; }

RatMat shift_matrix(const RatMat& m, int by, int n) {
  RatMat out = RatMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m(i, j) != 0) out((i + by) % n, (j + by) % n) = m(i, j);
  return out;
}

}  // namespace

ShiftData::ShiftData(int n_, int c_) : n(n_), c(c_), d(n_ - c_) {
  if (n < 2 || c < 1 || c >= n) throw std::invalid_argument("ShiftData: need 1 <= c < n");
  if (std::gcd(n, c) != 1) throw std::invalid_argument("ShiftData: need gcd(n, c) = 1");
}

IndexPair tau(const ShiftData& s, IndexPair root) {
  return {shift_index(root.first, s.c, s.n), shift_index(root.second, s.c, s.n)};
}

IndexPair kappa(const ShiftData& s, IndexPair root) {
  return {shift_index(root.first, s.d, s.n), shift_index(root.second, s.d, s.n)};
}

RatMat tau_matrix(const ShiftData& s, const RatMat& m) { return shift_matrix(m, s.c, s.n); }

RatMat kappa_matrix(const ShiftData& s, const RatMat& m) { return shift_matrix(m, s.d, s.n); }

ExitTimes exit_times(const ShiftData& s, IndexPair root) {
  ExitTimes out;
  if (positive(root)) {
    int k = 1;
    IndexPair r = tau(s, root);
    while (positive(r)) {
      r = tau(s, r);
      ++k;
    }
    out.p = k;
    if (negative(kappa(s, root))) {
      int run = 0;
      IndexPair kr = kappa(s, root);
      while (negative(kr)) {
        ++run;
        kr = kappa(s, kr);
      }
      out.q = run;
    }
  } else if (negative(root)) {
    int run = 0;
    IndexPair kr = kappa(s, root);
    while (negative(kr)) {
      ++run;
      kr = kappa(s, kr);
    }
    out.t = run;
  } else {
    throw std::invalid_argument("exit_times: (i, i) is not a root");
  }
  return out;
}

CartanShiftBasis cartan_shift_basis(const ShiftData& s) {
  const int n = s.n;
  CartanShiftBasis out;
  RatMat id_over_n = RatMat::Identity(n, n);
  id_over_n *= Rational(1, n);

  RatMat prev = unit_matrix(n, 1, 1);  // tau^{i-1}(u)
  for (int i = 1; i < n; ++i) {
    const RatMat next = tau_matrix(s, prev);  // tau^i(u)
    out.q.push_back(next - prev);
    out.w.push_back(prev - id_over_n);
    out.f.push_back(Rational(1, 2) * (next + prev) - id_over_n);
    prev = next;
  }

  // Trace-dual family inside the diagonal Cartan: q_dual[i] = sum_j C(j,i) q[j]
  // with C the inverse Gram matrix of q.
  const int dim = n - 1;
  RatMat gram(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) gram(a, b) = trace_form(out.q[a], out.q[b]);
  const RatMat inv = solve_many(gram, RatMat::Identity(dim, dim));
  for (int i = 0; i < dim; ++i) {
    RatMat dual = RatMat::Zero(n, n);
    for (int j = 0; j < dim; ++j)
      if (inv(j, i) != 0) dual += inv(j, i) * out.q[j];
    out.q_dual.push_back(std::move(dual));
  }

  // Structural self-checks: f = q/2 + w, tau(w) = w + q, and duality.
  for (int i = 0; i < dim; ++i) {
    if (out.f[i] != Rational(1, 2) * out.q[i] + out.w[i])
      throw std::logic_error("cartan_shift_basis: f != q/2 + w");
    if (tau_matrix(s, out.w[i]) != out.w[i] + out.q[i])
      throw std::logic_error("cartan_shift_basis: tau(w) != w + q");
    for (int j = 0; j < dim; ++j)
      if (trace_form(out.q_dual[i], out.q[j]) != (i == j ? Rational(1) : Rational(0)))
        throw std::logic_error("cartan_shift_basis: duality pairing failed");
  }
  return out;
}

TensorPoly build_uc(const ShiftData& s) {
  const int n = s.n;
  const Poly x = Poly::variable(Var::x), y = Poly::variable(Var::y);
  TensorPoly uc(n, 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const IndexPair alpha{i, j};
      const int p = *exit_times(s, alpha).p;
      IndexPair orbit = alpha;
      for (int k = 1; k < p; ++k) {
        orbit = tau(s, orbit);
        uc.add(unit_key(orbit.first, orbit.second, j, i), Poly(1));
        uc.add(unit_key(j, i, orbit.first, orbit.second), Poly(-1));
      }
      orbit = tau(s, orbit);  // tau^p(alpha), the first negative image
      uc.add(unit_key(orbit.first, orbit.second, j, i), x);
      uc.add(unit_key(j, i, orbit.first, orbit.second), -y);
    }
  return uc;
}

TensorPoly build_tc(const ShiftData& s) {
  const CartanShiftBasis basis = cartan_shift_basis(s);
  TensorPoly tc(s.n, 2);
  for (int i = 0; i < s.n - 1; ++i) tc += simple2(basis.q_dual[i], basis.f[i]);
  return tc;
}

QuasiTrigR build_rc(const ShiftData& s) {
  QuasiTrigR r = r_standard(s.n);
  r.p += build_uc(s);
  r.p += build_tc(s);
  return r;
}

// Deterministic basis of the pair space: diagonal pairs (h_k, h_k), shared
// off-diagonal block entries (e_ab, e_ab), and the two free lower-left blocks
// (e_ab, 0), (0, e_ab).
NablaBasis nabla_basis(const ShiftData& s) {
  const int n = s.n, c = s.c;
  NablaBasis out;
  const RatMat zero = RatMat::Zero(n, n);
  const auto push = [&](const RatMat& a, const RatMat& b) {
    out.y1.push_back(a);
    out.y2.push_back(b);
  };
  for (int k = 1; k < n; ++k) push(cartan_matrix(n, k), cartan_matrix(n, k));
  for (int a = 1; a <= c; ++a)
    for (int b = 1; b <= c; ++b)
      if (a != b) push(unit_matrix(n, a, b), unit_matrix(n, a, b));
  for (int a = c + 1; a <= n; ++a)
    for (int b = c + 1; b <= n; ++b)
      if (a != b) push(unit_matrix(n, a, b), unit_matrix(n, a, b));
  for (int a = c + 1; a <= n; ++a)
    for (int b = 1; b <= c; ++b) {
      push(unit_matrix(n, a, b), zero);
      push(zero, unit_matrix(n, a, b));
    }
  return out;
}

namespace {

RatVec vectorize(const RatMat& m) {
  RatVec v(m.rows() * m.cols());
  int pos = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v(pos++) = m(i, j);
  return v;
}

}  // namespace

bool in_nabla(const ShiftData& s, const RatMat& y1, const RatMat& y2) {
  const int n = s.n, c = s.c;
  if (y1.rows() != n || y1.cols() != n || y2.rows() != n || y2.cols() != n) return false;
  Rational trace(0);
  for (int i = 0; i < n; ++i) trace += y1(i, i);
  if (trace != 0) return false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const bool upper_right = i < c && j >= c;
      const bool lower_left = i >= c && j < c;
      if (upper_right && (y1(i, j) != 0 || y2(i, j) != 0)) return false;
      if (!lower_left && y1(i, j) != y2(i, j)) return false;
    }
  return true;
}

NablaPair decompose_nabla_closed(const ShiftData& s, const RatMat& x) {
  const int n = s.n;
  if (x.rows() != n || x.cols() != n || !is_traceless(x))
    throw std::invalid_argument("decompose_nabla: need a traceless n x n matrix");
  const CartanShiftBasis basis = cartan_shift_basis(s);
  RatMat y1 = RatMat::Zero(n, n), y2 = RatMat::Zero(n, n);

  // Cartan part: X = sum_i tr(q_dual[i] X) q_i, and q_i = tau(w_i) - kappa(tau(w_i)).
  for (int i = 0; i < n - 1; ++i) {
    const Rational coeff = trace_form(basis.q_dual[i], x);
    if (coeff == 0) continue;
    const RatMat tw = tau_matrix(s, basis.w[i]);
    y1 += coeff * tw;
    y2 += coeff * tw;
  }

  // Root part, term by term over the off-diagonal entries of X.
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j || x(i - 1, j - 1) == 0) continue;
      const Rational coeff = x(i - 1, j - 1);
      const IndexPair root{i, j};
      if (i < j) {
        // e_alpha = Y' - kappa(Y'') with Y' = -sum_{l=1}^{p-1} e_{tau^l},
        // Y'' = -sum_{l=1}^{p} e_{tau^l}.
        const int p = *exit_times(s, root).p;
        IndexPair orbit = root;
        for (int l = 1; l <= p; ++l) {
          orbit = tau(s, orbit);
          if (l <= p - 1) y1 -= coeff * unit_matrix(n, orbit.first, orbit.second);
          y2 -= coeff * unit_matrix(n, orbit.first, orbit.second);
        }
      } else {
        // e_beta = Y' - kappa(Y'') with Y' = sum_{l=0}^{t} e_{kappa^l},
        // Y'' = sum_{l=0}^{t-1} e_{kappa^l}.
        const int t = *exit_times(s, root).t;
        IndexPair orbit = root;
        for (int l = 0; l <= t; ++l) {
          y1 += coeff * unit_matrix(n, orbit.first, orbit.second);
          if (l <= t - 1) y2 += coeff * unit_matrix(n, orbit.first, orbit.second);
          orbit = kappa(s, orbit);
        }
      }
    }
  return {std::move(y1), std::move(y2)};
}

std::vector<NablaPair> decompose_nabla_solved(const ShiftData& s,
                                              const std::vector<RatMat>& xs) {
  const int n = s.n;
  const NablaBasis basis = nabla_basis(s);
  const int dim = static_cast<int>(basis.y1.size());
  RatMat m(n * n, dim);
  for (int g = 0; g < dim; ++g)
    m.col(g) = vectorize(basis.y1[g] - kappa_matrix(s, basis.y2[g]));
  RatMat rhs(n * n, static_cast<int>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k].rows() != n || xs[k].cols() != n || !is_traceless(xs[k]))
      throw std::invalid_argument("decompose_nabla: need traceless n x n matrices");
    rhs.col(static_cast<int>(k)) = vectorize(xs[k]);
  }
  const RatMat sol = solve_many(m, rhs);  // throws if the decomposition fails
  std::vector<NablaPair> out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    RatMat y1 = RatMat::Zero(n, n), y2 = RatMat::Zero(n, n);
    for (int g = 0; g < dim; ++g) {
      const Rational& coeff = sol(g, static_cast<int>(k));
      if (coeff == 0) continue;
      y1 += coeff * basis.y1[g];
      y2 += coeff * basis.y2[g];
    }
    out.push_back({std::move(y1), std::move(y2)});
  }
  return out;
}

NablaPair decompose_nabla(const ShiftData& s, const RatMat& x) {
  NablaPair closed = decompose_nabla_closed(s, x);
  const std::vector<NablaPair> solved = decompose_nabla_solved(s, {x});
  if (closed.y1 != solved[0].y1 || closed.y2 != solved[0].y2)
    throw std::logic_error("decompose_nabla: closed form and linear solve disagree");
  if (!in_nabla(s, closed.y1, closed.y2))
    throw std::logic_error("decompose_nabla: result leaves the pair space");
  if (closed.y1 - kappa_matrix(s, closed.y2) != x)
    throw std::logic_error("decompose_nabla: reconstruction failed");
  return closed;
}

}  // namespace qtr
