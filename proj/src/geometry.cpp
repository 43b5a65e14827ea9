#include "qtr/geometry.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

namespace qtr {

namespace {

// 0-based cyclic index shift by c, shared by sharp and the gluing constraint.
int shift_index(int n, int c, int i) { return (i + c) % n; }

RatMat k_closed(const BlockShape& sh) {
  RatMat k = RatMat::Zero(sh.n, sh.n);
  for (int i = 0; i < sh.c; ++i) k(i, sh.d + i) = 1;
  for (int j = 0; j < sh.d; ++j) k(sh.c + j, j) = 1;
  return k;
}

RatMat k_recursive(int c, int d) {
  if (c + d > 12)
    throw std::invalid_argument(
        "make_K: recursion certified only for c + d <= 12");
  if (c == 1 && d == 1) {
    RatMat k = RatMat::Zero(2, 2);
    k(0, 1) = 1;
    k(1, 0) = 1;
    return k;
  }
  if (c > d) {
    // Grow the first block: previous shape (c - d, d).
    const int c0 = c - d, d0 = d, n0 = c0 + d0, n = n0 + d0;
    const RatMat prev = k_recursive(c0, d0);
    RatMat k = RatMat::Zero(n, n);
    for (int i = 0; i < c0; ++i)
      for (int j = 0; j < n0; ++j) k(i, j) = prev(i, j);
    for (int m = 0; m < d0; ++m) k(c0 + m, n0 + m) = 1;
    for (int i = 0; i < d0; ++i)
      for (int j = 0; j < n0; ++j) k(c0 + d0 + i, j) = prev(c0 + i, j);
    return k;
  }
  // Grow the second block: previous shape (c, d - c).
  const int c0 = c, d0 = d - c, n0 = c0 + d0, n = n0 + c0;
  const RatMat prev = k_recursive(c0, d0);
  RatMat k = RatMat::Zero(n, n);
  for (int m = 0; m < c0; ++m) k(m, c0 + d0 + m) = 1;
  for (int i = 0; i < d0; ++i)
    for (int j = 0; j < n0; ++j) k(c0 + i, j) = prev(c0 + i, j);
  for (int i = 0; i < c0; ++i)
    for (int j = 0; j < n0; ++j) k(c0 + d0 + i, j) = prev(i, j);
  return k;
}

// z-degree-k coefficient of a polynomial in {x, z}, as a polynomial in x.
Poly z_coefficient(const Poly& p, int k) {
  Poly out;
  for (const auto& [mono, coeff] : p.terms()) {
    if (static_cast<int>(mono[static_cast<std::size_t>(Var::z)]) != k) continue;
    Monomial m = mono;
    m[static_cast<std::size_t>(Var::z)] = 0;
    out += Poly::monomial(m, coeff);
  }
  return out;
}

bool uses_only(const Poly& p, std::initializer_list<Var> allowed) {
  for (const auto& [mono, coeff] : p.terms())
    for (int v = 0; v < kNumVars; ++v) {
      if (mono[static_cast<std::size_t>(v)] == 0) continue;
      bool ok = false;
      for (Var a : allowed)
        if (static_cast<int>(a) == v) ok = true;
      if (!ok) return false;
    }
  return true;
}

PolyMat zero_poly_mat(int n) {
  PolyMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Poly();
  return m;
}

// Exact division by (y - x); a nonzero remainder means the assembled tensor
// was not quasi-trigonometric.
Poly divide_by_y_minus_x(const Poly& p) {
  std::map<int, Poly> c;
  for (const auto& [mono, coeff] : p.terms()) {
    Monomial m = mono;
    const int k = m[static_cast<std::size_t>(Var::y)];
    m[static_cast<std::size_t>(Var::y)] = 0;
    c[k] += Poly::monomial(m, coeff);
  }
  const int deg = c.empty() ? 0 : c.rbegin()->first;
  const Poly x = Poly::variable(Var::x);
  const Poly y = Poly::variable(Var::y);
  std::map<int, Poly> q;
  Poly carry;  // q_j for the current j, starting from q_deg = 0
  for (int j = deg; j >= 1; --j) {
    auto it = c.find(j);
    Poly qj = (it != c.end() ? it->second : Poly()) + x * carry;
    q[j - 1] = qj;
    carry = std::move(qj);
  }
  auto it0 = c.find(0);
  const Poly remainder = (it0 != c.end() ? it0->second : Poly()) + x * carry;
  if (!remainder.is_zero())
    throw std::runtime_error("geometric output not quasi-trigonometric");
  Poly out;
  for (const auto& [j, qj] : q)
    out += qj * y.pow(static_cast<unsigned>(j));
  return out;
}

}  // namespace

BlockShape::BlockShape(int c_, int d_) : c(c_), d(d_), n(c_ + d_) {
  if (c < 1 || d < 1)
    throw std::invalid_argument("BlockShape: blocks must be positive");
  if (std::gcd(c, d) != 1)
    throw std::invalid_argument("BlockShape: block sizes must be coprime");
}

RatMat make_K(const BlockShape& shape) {
  const RatMat closed = k_closed(shape);
  const RatMat rec = k_recursive(shape.c, shape.d);
  if (rec != closed)
    throw std::logic_error("make_K: recursion disagrees with the closed form");
  return closed;
}

RatMat make_J(const BlockShape& shape) {
  RatMat j = RatMat::Zero(shape.n, shape.n);
  for (int i = 0; i < shape.d; ++i) j(i, shape.c + i) = 1;
  for (int i = 0; i < shape.c; ++i) j(shape.d + i, i) = 1;
  if (RatMat(make_K(shape) * j) != RatMat(RatMat::Identity(shape.n, shape.n)))
    throw std::logic_error("make_J: K * J is not the identity");
  return j;
}

RatMat sharp(const BlockShape& shape, const RatMat& x) {
  const int n = shape.n;
  if (x.rows() != n || x.cols() != n)
    throw std::invalid_argument("sharp: size mismatch");
  RatMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = x(shift_index(n, shape.c, i), shift_index(n, shape.c, j));
  const RatMat jm = make_J(shape);
  if (RatMat(jm * x * k_closed(shape)) != out)
    throw std::logic_error("sharp: block swap disagrees with conjugation by J");
  return out;
}

PolyMat sharp(const BlockShape& shape, const PolyMat& x) {
  const int n = shape.n;
  if (x.rows() != n || x.cols() != n)
    throw std::invalid_argument("sharp: size mismatch");
  PolyMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = x(shift_index(n, shape.c, i), shift_index(n, shape.c, j));
  return out;
}

bool in_sol_space(const BlockShape& shape, const PolyMat& f) {
  const int n = shape.n, c = shape.c;
  if (f.rows() != n || f.cols() != n) return false;
  Poly trace;
  for (int i = 0; i < n; ++i) {
    trace += f(i, i);
    for (int j = 0; j < n; ++j) {
      if (!uses_only(f(i, j), {Var::x, Var::z})) return false;
      const bool a_block = i < c && j < c;
      const bool b_block = i < c && j >= c;
      const bool c_block = i >= c && j < c;
      const int max_z = b_block ? 0 : c_block ? 2 : 1;
      (void)a_block;
      if (f(i, j).degree_in(Var::z) > max_z) return false;
    }
  }
  if (!trace.is_zero()) return false;
  // F_0 gathers the constant z-coefficients, F_infty the leading ones; the
  // off-diagonal B block belongs to both.
  const Poly x = Poly::variable(Var::x);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int si = shift_index(n, c, i), sj = shift_index(n, c, j);
      const bool s_b = si < c && sj >= c;
      const bool s_c = si >= c && sj < c;
      const Poly inf = z_coefficient(f(si, sj), s_b ? 0 : s_c ? 2 : 1);
      if (z_coefficient(f(i, j), 0) != Poly(-1) * x * inf) return false;
    }
  return true;
}

SolSpace sol_space(const BlockShape& shape) {
  const int n = shape.n, c = shape.c;
  const Poly x = Poly::variable(Var::x);
  const Poly z = Poly::variable(Var::z);

  // Free data: the z-linear diagonal blocks A1/D1 (off-diagonal entries and
  // traceless diagonal combinations), the z-linear lower block C1, and the
  // z-quadratic lower block C2.  Everything else is forced by the constraint.
  struct Generator {
    RatMat m1;  // coefficient of z in the A/C/D blocks
    RatMat t2;  // coefficient of z^2 in the C block
  };
  std::vector<Generator> gens;
  const RatMat zero = RatMat::Zero(n, n);
  const auto diag_block = [&](int i, int j) {
    return (i < c && j < c) || (i >= c && j >= c);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && diag_block(i, j)) {
        Generator g{zero, zero};
        g.m1(i, j) = 1;
        gens.push_back(std::move(g));
      }
  for (int m = 0; m + 1 < n; ++m) {
    Generator g{zero, zero};
    g.m1(m, m) = 1;
    g.m1(m + 1, m + 1) = -1;
    gens.push_back(std::move(g));
  }
  for (int i = c; i < n; ++i)
    for (int j = 0; j < c; ++j) {
      Generator g{zero, zero};
      g.m1(i, j) = 1;
      gens.push_back(std::move(g));
      Generator h{zero, zero};
      h.t2(i, j) = 1;
      gens.push_back(std::move(h));
    }

  SolSpace out{shape, {}};
  for (const auto& g : gens) {
    // Entries of F_infty as polynomials in x.  A/C/D positions are the free
    // leading coefficients; B entries chain through the constraint
    // B_kl = -x * (F_infty at the shifted position) until they reach a free
    // position.  The chains terminate because the shift eventually leaves
    // the B block.
    std::map<std::pair<int, int>, Poly> inf;
    std::set<std::pair<int, int>> visiting;
    const auto is_b = [&](int i, int j) { return i < c && j >= c; };
    const std::function<Poly(int, int)> inf_at = [&](int i, int j) -> Poly {
      if (!is_b(i, j)) {
        const bool low = i >= c && j < c;
        return Poly(low ? g.t2(i, j) : g.m1(i, j));
      }
      auto it = inf.find({i, j});
      if (it != inf.end()) return it->second;
      if (!visiting.insert({i, j}).second)
        throw std::logic_error("sol_space: cyclic gluing chain");
      const Poly val =
          Poly(-1) * x *
          inf_at(shift_index(n, c, i), shift_index(n, c, j));
      visiting.erase({i, j});
      inf.emplace(std::make_pair(i, j), val);
      return val;
    };

    PolyMat f = zero_poly_mat(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Poly f0 =
            Poly(-1) * x * inf_at(shift_index(n, c, i), shift_index(n, c, j));
        f(i, j) = f0;
        if (!is_b(i, j)) {
          f(i, j) += Poly(g.m1(i, j)) * z;
          if (i >= c && j < c) f(i, j) += Poly(g.t2(i, j)) * z.pow(2);
        }
      }
    if (!in_sol_space(shape, f))
      throw std::logic_error("sol_space: constructed member fails the constraint");
    out.basis.push_back(std::move(f));
  }
  if (static_cast<int>(out.basis.size()) != n * n - 1)
    throw std::logic_error("sol_space: dimension is not n^2 - 1");
  // Independence: the z and z^2 coefficients alone separate the members.
  RatMat coords(2 * n * n, static_cast<int>(out.basis.size()));
  for (int m = 0; m < coords.cols(); ++m) {
    const auto& f = out.basis[static_cast<std::size_t>(m)];
    int pos = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Poly c1 = z_coefficient(f(i, j), 1);
        const Poly c2 = z_coefficient(f(i, j), 2);
        coords(pos, m) = c1.is_zero() ? Rational(0) : c1.terms().begin()->second;
        coords(n * n + pos, m) =
            c2.is_zero() ? Rational(0) : c2.terms().begin()->second;
        ++pos;
      }
  }
  if (rank(coords) != n * n - 1)
    throw std::logic_error("sol_space: basis is linearly dependent");
  return out;
}

ClearedValue res_map(const PolyMat& f) {
  return {substitute(f, Var::z, Poly::variable(Var::x)),
          Poly::variable(Var::x)};
}

ClearedValue ev_map(const PolyMat& f) {
  return {substitute(f, Var::z, Poly::variable(Var::y)),
          Poly::variable(Var::y) - Poly::variable(Var::x)};
}

PolyMat res_inverse_explicit(const ShiftData& s, const RatMat& x0) {
  const int n = s.n, c = s.c;
  const BlockShape shape(c, n - c);
  if (x0.rows() != n || x0.cols() != n)
    throw std::invalid_argument("res_inverse_explicit: size mismatch");
  if (!is_traceless(x0))
    throw std::invalid_argument("res_inverse_explicit: input must be traceless");

  // Entrywise closed construction.  Write F = F_0 + z M_1 + z^2 T_2 with the
  // degree profile of Sol((c,d), x).  The membership constraint couples the
  // constant coefficient at a position (i,j) to the top coefficient at the
  // shifted position sigma(i,j) = (i+c, j+c) mod n, so the linear system
  // "F(x) = x*X" splits over the sigma-orbits of matrix positions and can be
  // solved there in closed form.  Writing finf for the top coefficient (the
  // constant B entry itself, the z-coefficient on the diagonal blocks, the
  // z^2-coefficient on the lower-left block), the constraints are
  //   F_0(i,j) = -x * finf(sigma(i,j))            (membership)
  //   F_0 + x M_1 + x^2 T_2 = x X   entrywise    (residue)
  // which force, per position class,
  //   B:          F(i,j) = x X(i,j)  and  finf(sigma(i,j)) = -X(i,j)
  //   diagonal:   finf(i,j) = X(i,j) + finf(sigma(i,j))
  //   lower-left: finf free; c1 = X(i,j) + finf(sigma(i,j)) - x finf(i,j).
  // Walking forward from each upper-right (B) position resolves every
  // positive stretch of the orbit and pins the free lower-left coefficient at
  // the stretch's end; the negative stretches then chain forward onto the
  // next B position.  The diagonal orbit closes up cyclically and is fixed by
  // tracelessness.
  const Poly x = Poly::variable(Var::x);
  const Poly z = Poly::variable(Var::z);
  using Pos = std::pair<int, int>;
  const auto shift = [&](Pos p) -> Pos {
    return {(p.first + c) % n, (p.second + c) % n};
  };
  const auto is_b = [&](Pos p) { return p.first < c && p.second >= c; };
  const auto is_c = [&](Pos p) { return p.first >= c && p.second < c; };
  const auto xv = [&](Pos p) { return x0(p.first, p.second); };

  std::vector<std::vector<Poly>> finf(static_cast<std::size_t>(n),
                                      std::vector<Poly>(static_cast<std::size_t>(n)));
  std::vector<std::vector<bool>> have(static_cast<std::size_t>(n),
                                      std::vector<bool>(static_cast<std::size_t>(n), false));
  const auto set_finf = [&](Pos p, Poly v) {
    finf[static_cast<std::size_t>(p.first)][static_cast<std::size_t>(p.second)] =
        std::move(v);
    have[static_cast<std::size_t>(p.first)][static_cast<std::size_t>(p.second)] = true;
  };
  const auto get_finf = [&](Pos p) -> const Poly& {
    return finf[static_cast<std::size_t>(p.first)][static_cast<std::size_t>(p.second)];
  };

  // Upper-right positions and the positive stretches they anchor.
  for (int i = 0; i < c; ++i)
    for (int j = c; j < n; ++j) set_finf({i, j}, x * Poly(x0(i, j)));
  for (int i = 0; i < c; ++i)
    for (int j = c; j < n; ++j) {
      Poly v(-x0(i, j));
      Pos pos = shift({i, j});
      for (;;) {
        set_finf(pos, v);
        if (is_c(pos)) break;
        v -= Poly(xv(pos));
        pos = shift(pos);
      }
    }
  // Remaining off-diagonal positions: chain forward to the next upper-right
  // position.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || have[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        continue;
      Poly v(x0(i, j));
      Pos q = shift({i, j});
      while (!is_b(q)) {
        v += Poly(xv(q));
        q = shift(q);
      }
      set_finf({i, j}, v + x * Poly(xv(q)));
    }
  // Diagonal orbit: partial sums along the sigma-order, normalised to trace
  // zero in the z-coefficient.
  {
    std::vector<int> order;
    int row = 0;
    for (int l = 0; l < n; ++l) {
      order.push_back(row);
      row = (row + c) % n;
    }
    std::vector<Rational> t(static_cast<std::size_t>(n), Rational(0));
    for (int l = n - 2; l >= 0; --l)
      t[static_cast<std::size_t>(l)] =
          x0(order[static_cast<std::size_t>(l)], order[static_cast<std::size_t>(l)]) +
          t[static_cast<std::size_t>(l + 1)];
    Rational total(0);
    for (const Rational& v : t) total += v;
    const Rational k = -total / Rational(n);
    for (int l = 0; l < n; ++l) {
      const int d = order[static_cast<std::size_t>(l)];
      set_finf({d, d}, Poly(t[static_cast<std::size_t>(l)] + k));
    }
  }

  PolyMat f = zero_poly_mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Pos pos{i, j};
      if (i != j && is_b(pos)) {
        f(i, j) = x * Poly(x0(i, j));
        continue;
      }
      const Poly& next = get_finf(shift(pos));
      if (i != j && is_c(pos)) {
        const Poly c1 = Poly(x0(i, j)) + next - x * get_finf(pos);
        f(i, j) = Poly(-1) * x * next + z * c1 + z.pow(2) * get_finf(pos);
      } else {
        f(i, j) = Poly(-1) * x * next + z * get_finf(pos);
      }
    }

  if (!in_sol_space(shape, f))
    throw std::logic_error("res_inverse_explicit: result left Sol((c,d), x)");
  const PolyMat at_x = substitute(f, Var::z, Poly::variable(Var::x));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (at_x(i, j) != x * Poly(x0(i, j)))
        throw std::logic_error(
            "res_inverse_explicit: residue does not reproduce the input");
  return f;
}

PolyMat res_inverse_solved(const ShiftData& s, const RatMat& x0) {
  const int n = s.n;
  const BlockShape shape(s.c, n - s.c);
  if (!is_traceless(x0))
    throw std::invalid_argument("res_inverse_solved: input must be traceless");
  const SolSpace sol = sol_space(shape);

  // Sol((c,d), x) is a module over polynomials in x, and the preimage of a
  // constant matrix genuinely needs polynomial coefficients once n >= 3.
  // Solve F = sum_m lambda_m(x) F_m with deg lambda_m <= k_max against the
  // residue condition F(x) = x * X, matching x-power coefficients entrywise.
  constexpr int k_max = 3;
  int max_deg = 1;
  std::vector<PolyMat> at_x;
  at_x.reserve(sol.basis.size());
  for (const auto& f : sol.basis) {
    at_x.push_back(substitute(f, Var::z, Poly::variable(Var::x)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        max_deg = std::max(max_deg, at_x.back()(i, j).degree_in(Var::x));
  }

  // Entries of F(x) are univariate in x, so each x^k coefficient is a
  // constant.
  const auto x_coeff = [](const Poly& p, int k) {
    for (const auto& [mono, coeff] : p.terms())
      if (static_cast<int>(mono[static_cast<std::size_t>(Var::x)]) == k)
        return coeff;
    return Rational(0);
  };
  const int members = static_cast<int>(sol.basis.size());
  const int cols = members * (k_max + 1);
  const int rows = n * n * (max_deg + k_max + 1);
  RatMat a = RatMat::Zero(rows, cols);
  RatMat b = RatMat::Zero(rows, 1);
  for (int m = 0; m < members; ++m)
    for (int k = 0; k <= k_max; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int d = k; d <= max_deg + k; ++d)
            a(d * n * n + i * n + j, m * (k_max + 1) + k) =
                x_coeff(at_x[static_cast<std::size_t>(m)](i, j), d - k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(1 * n * n + i * n + j, 0) = x0(i, j);
  if (rank(a) != cols)
    throw std::logic_error("res_inverse_solved: residue map is degenerate");
  const RatMat lambda = solve_many(a, b);

  PolyMat f = zero_poly_mat(n);
  const Poly x = Poly::variable(Var::x);
  for (int m = 0; m < members; ++m)
    for (int k = 0; k <= k_max; ++k) {
      const Rational& l = lambda(m * (k_max + 1) + k, 0);
      if (l == 0) continue;
      const Poly scale = Poly(l) * x.pow(static_cast<unsigned>(k));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          f(i, j) += scale * sol.basis[static_cast<std::size_t>(m)](i, j);
    }
  return f;
}

std::vector<RSharpEntry> rsharp_closed_table(const ShiftData& s) {
  const int n = s.n;
  const Poly x = Poly::variable(Var::x);
  const Poly y = Poly::variable(Var::y);
  const CartanShiftBasis cartan = cartan_shift_basis(s);

  std::vector<RSharpEntry> out;
  const auto add_units = [&](PolyMat& acc, IndexPair root, const Poly& coeff) {
    acc(root.first - 1, root.second - 1) += coeff;
  };

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      RSharpEntry entry{unit_matrix(n, i, j), zero_poly_mat(n)};
      if (i < j) {
        // Positive root: walk forward along the tau-orbit.
        const ExitTimes times = exit_times(s, {i, j});
        const int p = *times.p;
        add_units(entry.numerator, {i, j}, x);
        IndexPair cur{i, j};
        for (int l = 1; l <= p; ++l) {
          cur = tau(s, cur);
          if (l < p)
            add_units(entry.numerator, cur, x - y);
          else
            add_units(entry.numerator, cur, Poly(-1) * y * (y - x));
        }
        const IndexPair back = kappa(s, {i, j});
        if (back.first > back.second) {
          // The backward walk covers the whole negative stretch ending at the
          // root itself: t(kappa(alpha)) + 1 steps.  When the forward and
          // backward walks meet (single-stretch orbits) the two contributions
          // at that position combine.
          const int t = *exit_times(s, back).t;
          IndexPair down{i, j};
          for (int l = 1; l <= t + 1; ++l) {
            down = kappa(s, down);
            add_units(entry.numerator, down, x * (y - x));
          }
        }
      } else {
        // Negative root: walk backward along the kappa-orbit.
        const int t = *exit_times(s, {i, j}).t;
        add_units(entry.numerator, {i, j}, y);
        IndexPair cur{i, j};
        for (int l = 1; l <= t; ++l) {
          cur = kappa(s, cur);
          add_units(entry.numerator, cur, y - x);
        }
      }
      out.push_back(std::move(entry));
    }
  for (int i = 0; i + 1 < n; ++i) {
    RSharpEntry entry{cartan.q[static_cast<std::size_t>(i)], zero_poly_mat(n)};
    const Poly half_sum = Poly(Rational(1, 2)) * (y + x);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Rational qv = cartan.q[static_cast<std::size_t>(i)](a, b);
        const Rational fv = cartan.f[static_cast<std::size_t>(i)](a, b);
        if (qv != 0) entry.numerator(a, b) += Poly(qv) * half_sum;
        if (fv != 0) entry.numerator(a, b) += Poly(fv) * (y - x);
      }
    out.push_back(std::move(entry));
  }

  // Every closed-form row must match the generic pipeline ev(res^{-1}(g)).
  for (const auto& entry : out) {
    const ClearedValue ev = ev_map(res_inverse_explicit(s, entry.g));
    if (ev.numerator != entry.numerator)
      throw std::logic_error(
          "rsharp_closed_table: closed form disagrees with the pipeline");
  }
  return out;
}

QuasiTrigR geometric_r(const ShiftData& s) {
  const int n = s.n;
  const std::vector<RatMat> basis = basis_matrices(n);
  const std::vector<RatMat> duals = dual_basis_matrices(n);

  TensorPoly total(n, 2);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const PolyMat f = res_inverse_explicit(s, basis[b]);
    const PolyMat at_y = substitute(f, Var::z, Poly::variable(Var::y));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (duals[b](i, j) == 0) continue;
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            if (at_y(u, v).is_zero()) continue;
            total.add(unit_key(i + 1, j + 1, u + 1, v + 1),
                      Poly(duals[b](i, j)) * at_y(u, v));
          }
      }
  }
  // Canonical form: subtract the singular part x/(y-x) * casimir, then the
  // remainder must be divisible by (y - x).
  total -= Poly::variable(Var::x) * casimir(n);
  QuasiTrigR r{n, TensorPoly(n, 2)};
  for (const auto& [key, coeff] : total.terms())
    r.p.add(key, divide_by_y_minus_x(coeff));
  return r;
}

}  // namespace qtr
