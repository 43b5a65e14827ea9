#include "qtr/order.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

#include "qtr/lie.hpp"

namespace qtr {

namespace {

constexpr const char* kNarrow = "window too narrow";

int sl_dim(int n) { return n * n - 1; }

// Vectorize (F, f) over degree slots [dlo, dhi] followed by a constant slot,
// each slot holding sl coordinates.
RatVec vec_in(int n, int dlo, int dhi, const std::map<int, RatMat>& F,
              const RatMat& f) {
  const int d = sl_dim(n);
  RatVec v = RatVec::Zero((dhi - dlo + 2) * d);
  for (const auto& [k, m] : F) {
    if (k < dlo || k > dhi) throw std::runtime_error(kNarrow);
    if (!is_traceless(m))
      throw std::invalid_argument(
          "loop element has a coefficient with nonzero trace");
    v.segment((k - dlo) * d, d) = sl_coordinates(n, m);
  }
  if (!is_traceless(f))
    throw std::invalid_argument(
        "loop element has a constant part with nonzero trace");
  v.segment((dhi - dlo + 1) * d, d) = sl_coordinates(n, f);
  return v;
}

RatVec pair_to_vec(const OrderSpec& W, const WindowedLoopPair& e) {
  return vec_in(W.n, W.lo, W.hi, e.F, e.f);
}

// Tail degrees that fall inside the window, materialized over the sl basis.
std::vector<WindowedLoopPair> tail_slice(const OrderSpec& W) {
  std::vector<WindowedLoopPair> out;
  if (!W.tail_degree) return out;
  const int top = std::min(*W.tail_degree, W.hi);
  for (int j = W.lo; j <= top; ++j)
    for (const RatMat& b : basis_matrices(W.n)) {
      WindowedLoopPair e(W.n, W.lo, W.hi);
      e.set_coeff(j, b);
      out.push_back(std::move(e));
    }
  return out;
}

// Polynomial generators (z^k b, [k = 0] b) for k = 0..hi over the sl basis.
std::vector<WindowedLoopPair> poly_generators(const OrderSpec& W) {
  std::vector<WindowedLoopPair> out;
  for (int k = 0; k <= W.hi; ++k)
    for (const RatMat& b : basis_matrices(W.n)) {
      WindowedLoopPair e(W.n, W.lo, W.hi);
      e.set_coeff(k, b);
      if (k == 0) e.f = b;
      out.push_back(std::move(e));
    }
  return out;
}

struct Columns {
  RatMat m;
  int n_basis = 0;
  int n_tail = 0;
  int n_poly = 0;
  std::vector<WindowedLoopPair> tail_elts;
  std::vector<WindowedLoopPair> poly_elts;
};

Columns build_columns(const OrderSpec& W, bool include_polys,
                      bool negate_polys) {
  Columns out;
  out.tail_elts = tail_slice(W);
  if (include_polys) out.poly_elts = poly_generators(W);
  out.n_basis = static_cast<int>(W.basis.size());
  out.n_tail = static_cast<int>(out.tail_elts.size());
  out.n_poly = static_cast<int>(out.poly_elts.size());
  const int rows = (W.hi - W.lo + 2) * sl_dim(W.n);
  out.m = RatMat::Zero(rows, out.n_basis + out.n_tail + out.n_poly);
  int col = 0;
  for (const auto& e : W.basis) out.m.col(col++) = pair_to_vec(W, e);
  for (const auto& e : out.tail_elts) out.m.col(col++) = pair_to_vec(W, e);
  for (const auto& e : out.poly_elts) {
    RatVec v = pair_to_vec(W, e);
    out.m.col(col++) = negate_polys ? RatVec(-v) : v;
  }
  return out;
}

void accumulate(WindowedLoopPair& acc, const WindowedLoopPair& e,
                const Rational& coeff) {
  if (coeff == 0) return;
  for (const auto& [k, m] : e.F) acc.set_coeff(k, acc.coeff(k) + coeff * m);
  acc.f += coeff * e.f;
}

// rank([A | B]) == rank(A), i.e. every column of B lies in the span of A.
bool columns_in_span(const RatMat& a, const RatMat& b) {
  if (b.cols() == 0) return true;
  RatMat joint(a.rows(), a.cols() + b.cols());
  joint.leftCols(a.cols()) = a;
  joint.rightCols(b.cols()) = b;
  return rank(joint) == rank(a);
}

// Entries of b land in degrees shifted by the block decoration of
// T = diag(I_c, z I_d): upper-right entries drop one degree, lower-left
// entries gain one.
std::map<int, RatMat> ad_t_of(const ShiftData& s, int j, const RatMat& b) {
  const int n = s.n, c = s.c;
  std::map<int, RatMat> out;
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      if (b(i, l) == 0) continue;
      int deg = j;
      if (i < c && l >= c) deg = j - 1;
      if (i >= c && l < c) deg = j + 1;
      auto it = out.find(deg);
      if (it == out.end()) it = out.emplace(deg, RatMat::Zero(n, n)).first;
      it->second(i, l) = b(i, l);
    }
  return out;
}

// Block lower-triangular traceless matrices for the (c, d) split.
std::vector<RatMat> borel_cd_basis(const ShiftData& s) {
  const int n = s.n, c = s.c;
  std::vector<RatMat> out;
  for (int i = 1; i <= c; ++i)
    for (int j = 1; j <= c; ++j)
      if (i != j) out.push_back(unit_matrix(n, i, j));
  for (int i = c + 1; i <= n; ++i)
    for (int j = c + 1; j <= n; ++j)
      if (i != j) out.push_back(unit_matrix(n, i, j));
  for (int k = 1; k < n; ++k) out.push_back(cartan_matrix(n, k));
  for (int i = c + 1; i <= n; ++i)
    for (int j = 1; j <= c; ++j) out.push_back(unit_matrix(n, i, j));
  return out;
}

// Strictly block lower: the lower-left block only.
std::vector<RatMat> nilpotent_cd_basis(const ShiftData& s) {
  const int n = s.n, c = s.c;
  std::vector<RatMat> out;
  for (int i = c + 1; i <= n; ++i)
    for (int j = 1; j <= c; ++j) out.push_back(unit_matrix(n, i, j));
  return out;
}

// Certifies that z^-k sl_n x {0} lies in the order for every k >= 2: degrees
// at or below the tail bound are absorbed by the tail, the finitely many
// in-window degrees are checked by a span computation.
bool deep_tail_contained(const OrderSpec& W) {
  if (!W.tail_degree) return false;
  const int t = *W.tail_degree;
  Columns cols = build_columns(W, false, false);
  std::vector<RatVec> need;
  for (int j = t + 1; j <= -2; ++j)
    for (const RatMat& b : basis_matrices(W.n)) {
      if (j < W.lo) return false;  // below window yet above tail: undecidable
      WindowedLoopPair e(W.n, W.lo, W.hi);
      e.set_coeff(j, b);
      need.push_back(pair_to_vec(W, e));
    }
  if (need.empty()) return true;
  RatMat rhs(cols.m.rows(), static_cast<int>(need.size()));
  for (int i = 0; i < rhs.cols(); ++i) rhs.col(i) = need[static_cast<std::size_t>(i)];
  return columns_in_span(cols.m, rhs);
}

// Vectorize a pair of constant matrices (gl coordinates suffice here).
RatVec flatten_pair(int n, const RatMat& a, const RatMat& b) {
  RatVec v(2 * n * n);
  int pos = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(pos++) = a(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(pos++) = b(i, j);
  return v;
}

RatMat pair_matrix(const FinitePairSubspace& v) {
  RatMat m(2 * v.n * v.n, static_cast<int>(v.basis.size()));
  for (int i = 0; i < m.cols(); ++i)
    m.col(i) = flatten_pair(v.n, v.basis[static_cast<std::size_t>(i)].first,
                            v.basis[static_cast<std::size_t>(i)].second);
  return m;
}

}  // namespace

WindowedLoopPair::WindowedLoopPair(int n_, int lo_, int hi_)
    : n(n_), lo(lo_), hi(hi_), f(RatMat::Zero(n_, n_)) {
  if (n < 2) throw std::invalid_argument("WindowedLoopPair: rank must be >= 2");
  if (lo > 0 || hi < 0)
    throw std::invalid_argument("WindowedLoopPair: window must contain 0");
}

RatMat WindowedLoopPair::coeff(int degree) const {
  auto it = F.find(degree);
  if (it != F.end()) return it->second;
  return RatMat::Zero(n, n);
}

void WindowedLoopPair::set_coeff(int degree, const RatMat& value) {
  if (value.rows() != n || value.cols() != n)
    throw std::invalid_argument("set_coeff: size mismatch");
  if (value == RatMat::Zero(n, n)) {
    F.erase(degree);
    return;
  }
  if (degree < lo || degree > hi) throw std::runtime_error(kNarrow);
  F[degree] = value;
}

bool WindowedLoopPair::operator==(const WindowedLoopPair& other) const {
  return n == other.n && F == other.F && f == other.f;
}

Rational loop_pairing(const WindowedLoopPair& a, const WindowedLoopPair& b) {
  if (a.n != b.n) throw std::invalid_argument("loop_pairing: rank mismatch");
  for (const auto& [k, m] : a.F)
    if (-k < b.lo || -k > b.hi) throw std::runtime_error(kNarrow);
  for (const auto& [k, m] : b.F)
    if (-k < a.lo || -k > a.hi) throw std::runtime_error(kNarrow);
  Rational acc(0);
  for (const auto& [k, m] : a.F) {
    auto it = b.F.find(-k);
    if (it != b.F.end()) acc += trace_form(m, it->second);
  }
  acc -= trace_form(a.f, b.f);
  return acc;
}

WindowedLoopPair embed_polynomial(const PolyMat& P, int lo, int hi) {
  const int n = static_cast<int>(P.rows());
  if (P.cols() != n) throw std::invalid_argument("embed_polynomial: not square");
  WindowedLoopPair out(n, lo, hi);
  std::map<int, RatMat> coeffs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (const auto& [mono, c] : P(i, j).terms()) {
        for (int v = 0; v < kNumVars; ++v)
          if (v != static_cast<int>(Var::z) && mono[static_cast<std::size_t>(v)] != 0)
            throw std::invalid_argument(
                "embed_polynomial: entries must be polynomials in z only");
        const int deg = mono[static_cast<std::size_t>(Var::z)];
        auto it = coeffs.find(deg);
        if (it == coeffs.end()) it = coeffs.emplace(deg, RatMat::Zero(n, n)).first;
        it->second(i, j) += c;
      }
  for (const auto& [deg, m] : coeffs) out.set_coeff(deg, m);
  out.f = out.coeff(0);
  return out;
}

OrderSpec order_w_std(int n, int lo, int hi) {
  if (lo > -1 || hi < 1) throw std::runtime_error(kNarrow);
  OrderSpec W;
  W.name = "standard";
  W.n = n;
  W.lo = lo;
  W.hi = hi;
  W.tail_degree = -2;
  for (const RatMat& b : basis_matrices(n)) {
    WindowedLoopPair e(n, lo, hi);
    e.set_coeff(-1, b);
    W.basis.push_back(std::move(e));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < i; ++j) {
      WindowedLoopPair e(n, lo, hi);
      e.set_coeff(0, unit_matrix(n, i, j));
      W.basis.push_back(std::move(e));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      WindowedLoopPair e(n, lo, hi);
      e.f = unit_matrix(n, i, j);
      W.basis.push_back(std::move(e));
    }
  for (int k = 1; k < n; ++k) {
    WindowedLoopPair e(n, lo, hi);
    e.set_coeff(0, cartan_matrix(n, k));
    e.f = -cartan_matrix(n, k);
    W.basis.push_back(std::move(e));
  }
  return W;
}

OrderSpec order_w_cd(const ShiftData& s, int lo, int hi) {
  if (lo > -2 || hi < 2) throw std::runtime_error(kNarrow);
  const int n = s.n;
  OrderSpec W;
  W.name = "block-shift(" + std::to_string(n) + "," + std::to_string(s.c) + ")";
  W.n = n;
  W.lo = lo;
  W.hi = hi;
  W.tail_degree = -3;
  for (const RatMat& b : basis_matrices(n)) {
    WindowedLoopPair e(n, lo, hi);
    e.set_coeff(-2, b);
    W.basis.push_back(std::move(e));
  }
  for (const RatMat& b : borel_cd_basis(s)) {
    WindowedLoopPair e(n, lo, hi);
    e.set_coeff(-1, b);
    W.basis.push_back(std::move(e));
  }
  for (const RatMat& b : nilpotent_cd_basis(s)) {
    WindowedLoopPair e(n, lo, hi);
    e.set_coeff(0, b);
    W.basis.push_back(std::move(e));
  }
  for (const RatMat& b : basis_matrices(n)) {
    WindowedLoopPair e(n, lo, hi);
    for (const auto& [deg, m] : ad_t_of(s, 0, b)) e.set_coeff(deg, m);
    e.f = kappa_matrix(s, b);
    W.basis.push_back(std::move(e));
  }
  return W;
}

OrderSpec order_p_cd(const ShiftData& s, int lo, int hi) {
  if (lo > 0 || hi < 1) throw std::runtime_error(kNarrow);
  const int n = s.n;
  OrderSpec W;
  W.name = "polynomial-intersection(" + std::to_string(n) + "," +
           std::to_string(s.c) + ")";
  W.n = n;
  W.lo = lo;
  W.hi = hi;
  W.tail_degree = std::nullopt;
  for (const RatMat& b : borel_cd_basis(s)) {
    WindowedLoopPair e(n, lo, hi);
    e.set_coeff(0, b);
    e.f = b;
    W.basis.push_back(std::move(e));
  }
  for (const RatMat& b : nilpotent_cd_basis(s)) {
    WindowedLoopPair e(n, lo, hi);
    e.set_coeff(1, b);
    W.basis.push_back(std::move(e));
  }
  return W;
}

bool check_isotropic(const OrderSpec& W) {
  const int m = static_cast<int>(W.basis.size());
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      if (loop_pairing(W.basis[static_cast<std::size_t>(i)],
                       W.basis[static_cast<std::size_t>(j)]) != 0)
        return false;
  if (W.tail_degree) {
    const int t = *W.tail_degree;
    // Tail generators z^j a (j <= t) pair with a window element through the
    // coefficient at -j >= -t; a nonzero traceless coefficient there pairs
    // nonzero against some tail generator.  Tail-tail pairings need degrees
    // summing to zero, impossible when t <= -1.
    if (t > -1) return false;
    for (const auto& e : W.basis)
      for (const auto& [k, mcoeff] : e.F)
        if (k >= -t) return false;
  }
  return true;
}

bool check_transversal(const OrderSpec& W) {
  Columns cols = build_columns(W, true, false);
  const int rows = static_cast<int>(cols.m.rows());
  if (cols.m.cols() == 0) return false;
  const int r = rank(cols.m);
  return r == rows && r == cols.m.cols();
}

bool check_bracket_closed(const OrderSpec& W) {
  const int n = W.n, d = sl_dim(n);
  const int dlo = 2 * W.lo, dhi = 2 * W.hi;
  const int rows = (dhi - dlo + 2) * d;
  const auto absorbed = [&](int k) {
    return W.tail_degree && k <= *W.tail_degree;
  };

  std::vector<WindowedLoopPair> tails = tail_slice(W);
  RatMat span(rows, static_cast<int>(W.basis.size() + tails.size()));
  int col = 0;
  for (const auto& e : W.basis) span.col(col++) = vec_in(n, dlo, dhi, e.F, e.f);
  for (const auto& e : tails) span.col(col++) = vec_in(n, dlo, dhi, e.F, e.f);

  int max_support = W.lo;
  std::vector<RatVec> rhs;
  const int m = static_cast<int>(W.basis.size());
  for (int i = 0; i < m; ++i) {
    for (const auto& [k, mat] : W.basis[static_cast<std::size_t>(i)].F)
      max_support = std::max(max_support, k);
    for (int j = i + 1; j < m; ++j) {
      const auto& a = W.basis[static_cast<std::size_t>(i)];
      const auto& b = W.basis[static_cast<std::size_t>(j)];
      std::map<int, RatMat> F;
      for (const auto& [ka, ma] : a.F)
        for (const auto& [kb, mb] : b.F) {
          if (absorbed(ka + kb)) continue;
          auto it = F.find(ka + kb);
          if (it == F.end()) it = F.emplace(ka + kb, RatMat::Zero(n, n)).first;
          it->second += bracket(ma, mb);
        }
      for (auto it = F.begin(); it != F.end();)
        it = (it->second == RatMat::Zero(n, n)) ? F.erase(it) : std::next(it);
      RatMat fpart = bracket(a.f, b.f);
      if (F.empty() && fpart == RatMat::Zero(n, n)) continue;
      rhs.push_back(vec_in(n, dlo, dhi, F, fpart));
    }
  }
  // Brackets of tail generators with window elements land in z^j sl_n x {0}
  // for j up to tail_degree + max_support; the unabsorbed degrees must lie in
  // the span as full sl slices.
  if (W.tail_degree) {
    for (int j = *W.tail_degree + 1; j <= *W.tail_degree + max_support; ++j) {
      if (j < dlo) continue;
      for (const RatMat& b : basis_matrices(n)) {
        std::map<int, RatMat> F;
        F.emplace(j, b);
        rhs.push_back(vec_in(n, dlo, dhi, F, RatMat::Zero(n, n)));
      }
    }
  }
  if (rhs.empty()) return true;
  RatMat rhsm(rows, static_cast<int>(rhs.size()));
  for (int i = 0; i < rhsm.cols(); ++i) rhsm.col(i) = rhs[static_cast<std::size_t>(i)];
  return columns_in_span(span, rhsm);
}

namespace {

// The anchor element dual to z^k g_beta against the polynomial subalgebra:
// pairs to delta_{kk'} delta_{beta beta'} with every generator.
WindowedLoopPair base_dual_pair(const OrderSpec& W, int k, int beta,
                                const std::vector<RatMat>& duals) {
  const int n = W.n;
  const RatMat& g = duals[static_cast<std::size_t>(beta)];
  WindowedLoopPair out(n, W.lo, W.hi);
  if (k >= 1) {
    out.set_coeff(-k, g);
    return out;
  }
  RatMat low = RatMat::Zero(n, n), mid = RatMat::Zero(n, n),
         up = RatMat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i > j) low(i, j) = g(i, j);
      else if (i == j) mid(i, j) = g(i, j);
      else up(i, j) = g(i, j);
    }
  out.set_coeff(0, low + mid * Rational(1, 2));
  out.f = -(up + mid * Rational(1, 2));
  return out;
}

std::vector<DualElement> solve_duals(
    const OrderSpec& W, const std::vector<std::pair<int, int>>& requests) {
  const int n = W.n;
  const std::vector<RatMat> gbasis = basis_matrices(n);
  const std::vector<RatMat> gduals = dual_basis_matrices(n);
  Columns cols = build_columns(W, true, true);
  RatMat rhs(cols.m.rows(), static_cast<int>(requests.size()));
  for (std::size_t r = 0; r < requests.size(); ++r)
    rhs.col(static_cast<int>(r)) =
        pair_to_vec(W, base_dual_pair(W, requests[r].first, requests[r].second,
                                      gduals));
  RatMat sol;
  try {
    sol = solve_many(cols.m, rhs);
  } catch (const std::runtime_error&) {
    throw std::runtime_error(kNarrow);
  }

  const Poly z = Poly::variable(Var::z);
  std::vector<DualElement> out;
  const std::vector<WindowedLoopPair> polys = poly_generators(W);
  for (std::size_t r = 0; r < requests.size(); ++r) {
    DualElement d;
    d.w = WindowedLoopPair(n, W.lo, W.hi);
    int col = 0;
    for (const auto& e : W.basis)
      accumulate(d.w, e, sol(col++, static_cast<int>(r)));
    for (const auto& e : cols.tail_elts)
      accumulate(d.w, e, sol(col++, static_cast<int>(r)));
    d.p = PolyMat(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d.p(i, j) = Poly();
    const int nb = static_cast<int>(gbasis.size());
    for (int k = 0; k <= W.hi; ++k)
      for (int b = 0; b < nb; ++b) {
        const Rational& c = sol(col + k * nb + b, static_cast<int>(r));
        if (c == 0) continue;
        const RatMat& mat = gbasis[static_cast<std::size_t>(b)];
        const Poly zk = z.pow(static_cast<unsigned>(k));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (mat(i, j) != 0) d.p(i, j) += Poly(c * mat(i, j)) * zk;
      }
    // Duality audit: the reconstructed w must pair to delta against every
    // polynomial generator inside the window.
    for (int k = 0; k <= W.hi; ++k)
      for (int b = 0; b < nb; ++b) {
        const Rational got =
            loop_pairing(polys[static_cast<std::size_t>(k * nb + b)], d.w);
        const Rational want((k == requests[r].first && b == requests[r].second)
                                ? 1
                                : 0);
        if (got != want)
          throw std::logic_error("dual element fails the duality pairing");
      }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

DualElement dual_basis_element(const OrderSpec& W, int k, int beta) {
  if (k < 0) throw std::invalid_argument("dual_basis_element: k must be >= 0");
  if (beta < 0 || beta >= sl_dim(W.n))
    throw std::invalid_argument("dual_basis_element: basis index out of range");
  if (!check_transversal(W)) throw std::runtime_error("transversality violated");
  if (k >= 2) {
    // Deep-tail containment: the anchor already lies in the order and the
    // polynomial correction vanishes.
    if (!deep_tail_contained(W)) throw std::runtime_error(kNarrow);
    DualElement d;
    d.w = base_dual_pair(W, k, beta, dual_basis_matrices(W.n));
    d.p = PolyMat(W.n, W.n);
    for (int i = 0; i < W.n; ++i)
      for (int j = 0; j < W.n; ++j) d.p(i, j) = Poly();
    return d;
  }
  return solve_duals(W, {{k, beta}}).front();
}

QuasiTrigR r_from_order(const OrderSpec& W) {
  if (!check_isotropic(W))
    throw std::invalid_argument("order is not isotropic");
  if (!check_transversal(W))
    throw std::runtime_error("transversality violated");
  if (!deep_tail_contained(W))
    throw std::logic_error(
        "higher spectral corrections do not vanish for this order");
  const int n = W.n;
  std::vector<std::pair<int, int>> requests;
  for (int k = 0; k <= 1; ++k)
    for (int b = 0; b < sl_dim(n); ++b) requests.emplace_back(k, b);
  const std::vector<DualElement> duals = solve_duals(W, requests);

  QuasiTrigR r = r_standard(n);
  const std::vector<RatMat> gbasis = basis_matrices(n);
  const Poly x = Poly::variable(Var::x);
  for (std::size_t idx = 0; idx < requests.size(); ++idx) {
    const auto [k, b] = requests[idx];
    const PolyMat py = substitute(duals[idx].p, Var::z, Poly::variable(Var::y));
    const RatMat& left = gbasis[static_cast<std::size_t>(b)];
    const Poly xk = x.pow(static_cast<unsigned>(k));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (left(i, j) == 0) continue;
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            if (py(u, v).is_zero()) continue;
            r.p.add(unit_key(i + 1, j + 1, u + 1, v + 1),
                    Poly(left(i, j)) * py(u, v) * xk);
          }
      }
  }
  return r;
}

FinitePairSubspace twisted_diagonal(const ShiftData& s) {
  FinitePairSubspace out;
  out.n = s.n;
  for (const RatMat& b : basis_matrices(s.n))
    out.basis.emplace_back(b, kappa_matrix(s, b));
  return out;
}

FinitePairSubspace nabla_pairs(const ShiftData& s) {
  FinitePairSubspace out;
  out.n = s.n;
  const NablaBasis nb = nabla_basis(s);
  for (std::size_t i = 0; i < nb.y1.size(); ++i)
    out.basis.emplace_back(nb.y1[i], nb.y2[i]);
  return out;
}

int pair_intersection_dim(const FinitePairSubspace& a,
                          const FinitePairSubspace& b) {
  if (a.n != b.n) throw std::invalid_argument("pair spaces of different rank");
  const RatMat ma = pair_matrix(a), mb = pair_matrix(b);
  RatMat joint(ma.rows(), ma.cols() + mb.cols());
  joint.leftCols(ma.cols()) = ma;
  joint.rightCols(mb.cols()) = mb;
  return rank(ma) + rank(mb) - rank(joint);
}

bool pair_lagrangian(const FinitePairSubspace& v) {
  if (rank(pair_matrix(v)) != sl_dim(v.n)) return false;
  for (std::size_t i = 0; i < v.basis.size(); ++i)
    for (std::size_t j = i; j < v.basis.size(); ++j) {
      const Rational val = trace_form(v.basis[i].first, v.basis[j].first) -
                           trace_form(v.basis[i].second, v.basis[j].second);
      if (val != 0) return false;
    }
  return true;
}

bool pair_bracket_closed(const FinitePairSubspace& v) {
  const RatMat span = pair_matrix(v);
  std::vector<RatVec> rhs;
  for (std::size_t i = 0; i < v.basis.size(); ++i)
    for (std::size_t j = i + 1; j < v.basis.size(); ++j)
      rhs.push_back(flatten_pair(v.n,
                                 bracket(v.basis[i].first, v.basis[j].first),
                                 bracket(v.basis[i].second, v.basis[j].second)));
  if (rhs.empty()) return true;
  RatMat rhsm(span.rows(), static_cast<int>(rhs.size()));
  for (int i = 0; i < rhsm.cols(); ++i) rhsm.col(i) = rhs[static_cast<std::size_t>(i)];
  return columns_in_span(span, rhsm);
}

bool same_pair_span(const FinitePairSubspace& a, const FinitePairSubspace& b) {
  if (a.n != b.n) return false;
  const RatMat ma = pair_matrix(a), mb = pair_matrix(b);
  return columns_in_span(ma, mb) && columns_in_span(mb, ma);
}

NablaDeltaReport nabla_delta_check(const ShiftData& s) {
  const FinitePairSubspace delta = twisted_diagonal(s);
  const FinitePairSubspace nabla = nabla_pairs(s);
  NablaDeltaReport out;
  out.intersection_dim = pair_intersection_dim(delta, nabla);
  const int rd = rank(pair_matrix(delta));
  const int rn = rank(pair_matrix(nabla));
  out.decomposition_ok =
      out.intersection_dim == 0 && rd + rn == 2 * sl_dim(s.n);
  if (!pair_lagrangian(delta) || !pair_lagrangian(nabla))
    throw std::logic_error("diagonal/complement pair is not Lagrangian");
  if (!pair_bracket_closed(delta) || !pair_bracket_closed(nabla))
    throw std::logic_error("diagonal/complement pair is not bracket-closed");
  return out;
}

namespace {

// The two descriptions of the annihilator of the ambient order agree:
// Ad_T(z^-1 sl_n[[z^-1]]) x {0}  =  (z^-2 sl_n[[z^-1]] + z^-1 b + n) x {0},
// verified on the slice of supports inside [-2, 0].
bool ambient_orthogonal_formula_holds(const ShiftData& s) {
  const int n = s.n;
  const int dlo = -4, dhi = 0;
  const int rows = (dhi - dlo + 1) * n * n;
  const auto flatten = [&](const std::map<int, RatMat>& F) {
    RatVec v = RatVec::Zero(rows);
    for (const auto& [k, m] : F) {
      if (k < dlo || k > dhi) throw std::runtime_error(kNarrow);
      int pos = (k - dlo) * n * n;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v(pos++) = m(i, j);
    }
    return v;
  };

  std::vector<RatVec> lhs;
  for (int j = -3; j <= -1; ++j)
    for (const RatMat& b : basis_matrices(n)) lhs.push_back(flatten(ad_t_of(s, j, b)));
  RatMat lhsm(rows, static_cast<int>(lhs.size()));
  for (int i = 0; i < lhsm.cols(); ++i) lhsm.col(i) = lhs[static_cast<std::size_t>(i)];

  std::vector<RatVec> rhs;
  for (const RatMat& b : basis_matrices(n))
    rhs.push_back(flatten({{-2, b}}));
  for (const RatMat& b : borel_cd_basis(s)) rhs.push_back(flatten({{-1, b}}));
  for (const RatMat& b : nilpotent_cd_basis(s)) rhs.push_back(flatten({{0, b}}));
  RatMat rhsm(rows, static_cast<int>(rhs.size()));
  for (int i = 0; i < rhsm.cols(); ++i) rhsm.col(i) = rhs[static_cast<std::size_t>(i)];

  // Right side inside the left span, and the left span restricted to
  // supports >= -2 has exactly the dimension of the right side.
  if (!columns_in_span(lhsm, rhsm)) return false;
  const RatMat deep = lhsm.topRows(2 * n * n);  // degree slots -4 and -3
  const int sliced_dim = rank(lhsm) - rank(deep);
  return sliced_dim == rank(rhsm);
}

}  // namespace

FinitePairSubspace reduce_order(const OrderSpec& W, const ShiftData& s) {
  if (W.n != s.n) throw std::invalid_argument("reduce_order: rank mismatch");
  const int n = s.n, c = s.c;
  // Containment in the ambient order: upper-right coefficients only below
  // degree 0, diagonal blocks at degree <= 0, lower-left at degree <= 1.
  const auto check_member = [&](const WindowedLoopPair& e) {
    for (const auto& [k, m] : e.F)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (m(i, j) == 0) continue;
          const int limit = (i < c && j >= c) ? -1 : (i >= c && j < c) ? 1 : 0;
          if (k > limit)
            throw std::runtime_error("order not inside the ambient order O_(c,d)");
        }
  };
  for (const auto& e : W.basis) check_member(e);
  if (W.tail_degree && *W.tail_degree > -1)
    throw std::runtime_error("order not inside the ambient order O_(c,d)");
  if (!ambient_orthogonal_formula_holds(s))
    throw std::logic_error("ambient annihilator descriptions disagree");

  // (F, f) |-> (Ad_T^-1(F)(0), f): diagonal blocks read at degree 0,
  // upper-right at -1, lower-left at +1.  The tail maps to zero.
  FinitePairSubspace image;
  image.n = n;
  std::vector<std::pair<RatMat, RatMat>> raw;
  for (const auto& e : W.basis) {
    RatMat g = RatMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int deg = (i < c && j >= c) ? -1 : (i >= c && j < c) ? 1 : 0;
        auto it = e.F.find(deg);
        if (it != e.F.end()) g(i, j) = it->second(i, j);
      }
    raw.emplace_back(std::move(g), e.f);
  }
  // Reduce to an independent spanning set.
  RatMat m(2 * n * n, static_cast<int>(raw.size()));
  for (int i = 0; i < m.cols(); ++i)
    m.col(i) = flatten_pair(n, raw[static_cast<std::size_t>(i)].first,
                            raw[static_cast<std::size_t>(i)].second);
  const RatEchelon ech = rref(m);
  for (int piv : ech.pivot_cols)
    image.basis.push_back(raw[static_cast<std::size_t>(piv)]);
  return image;
}

std::string order_to_json(const OrderSpec& W) {
  nlohmann::json j;
  j["schema"] = "qtr-order-1";
  j["name"] = W.name;
  j["n"] = W.n;
  j["window"] = {W.lo, W.hi};
  if (W.tail_degree)
    j["tail_degree"] = *W.tail_degree;
  else
    j["tail_degree"] = nullptr;
  nlohmann::json basis = nlohmann::json::array();
  const auto matrix_json = [](const RatMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int jj = 0; jj < m.cols(); ++jj) row.push_back(to_string(m(i, jj)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  for (const auto& e : W.basis) {
    nlohmann::json el;
    el["F"] = nlohmann::json::object();
    for (const auto& [k, mat] : e.F) el["F"][std::to_string(k)] = matrix_json(mat);
    el["f"] = matrix_json(e.f);
    basis.push_back(std::move(el));
  }
  j["basis"] = std::move(basis);
  return j.dump(2);
}

OrderSpec order_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("schema") || j["schema"] != "qtr-order-1")
    throw std::invalid_argument("order_from_json: unsupported schema");
  OrderSpec W;
  W.name = j.value("name", std::string("unnamed"));
  W.n = j.at("n").get<int>();
  if (W.n < 2) throw std::invalid_argument("order_from_json: rank must be >= 2");
  W.lo = j.at("window").at(0).get<int>();
  W.hi = j.at("window").at(1).get<int>();
  if (W.lo > 0 || W.hi < 0)
    throw std::invalid_argument("order_from_json: window must contain 0");
  if (j.contains("tail_degree") && !j["tail_degree"].is_null())
    W.tail_degree = j["tail_degree"].get<int>();
  const auto matrix_from = [&](const nlohmann::json& rows) {
    if (static_cast<int>(rows.size()) != W.n)
      throw std::invalid_argument("order_from_json: matrix size mismatch");
    RatMat m(W.n, W.n);
    for (int i = 0; i < W.n; ++i) {
      if (static_cast<int>(rows.at(static_cast<std::size_t>(i)).size()) != W.n)
        throw std::invalid_argument("order_from_json: matrix size mismatch");
      for (int jj = 0; jj < W.n; ++jj)
        m(i, jj) = parse_rational(
            rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(jj))
                .get<std::string>());
    }
    return m;
  };
  for (const auto& el : j.at("basis")) {
    WindowedLoopPair e(W.n, W.lo, W.hi);
    if (el.contains("F"))
      for (const auto& [key, rows] : el["F"].items())
        e.set_coeff(std::stoi(key), matrix_from(rows));
    if (el.contains("f")) e.f = matrix_from(el["f"]);
    if (!is_traceless(e.f))
      throw std::invalid_argument("order_from_json: matrices must be traceless");
    for (const auto& [k, mat] : e.F)
      if (!is_traceless(mat))
        throw std::invalid_argument("order_from_json: matrices must be traceless");
    W.basis.push_back(std::move(e));
  }
  return W;
}

}  // namespace qtr
