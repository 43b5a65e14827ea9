#include "qtr/conjecture.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "qtr/lie.hpp"
#include "qtr/linalg.hpp"
#include "qtr/quasitrig.hpp"

namespace qtr {

namespace {

// Value of the node functional a_s on the diagonal unit e_uu (1-based u).
// Finite nodes read off a difference of neighbouring diagonal entries; the
// affine node acts as minus the highest root, i.e. through e_nn - e_11.
Rational node_on_unit(int n, int s, int u) {
  Rational v(0);
  if (s == 0) {
    if (u == n) v += Rational(1);
    if (u == 1) v -= Rational(1);
  } else {
    if (u == s) v += Rational(1);
    if (u == s + 1) v -= Rational(1);
  }
  return v;
}

// Applies (alpha_a (x) 1 + 1 (x) alpha_b) to a tensor supported on diagonal
// units and appends the n resulting diagonal entries to `rows`.  The tensor
// must have constant coefficients.
void append_constraint_rows(const TensorPoly& t, int a, int b,
                            std::vector<Rational>* rows) {
  const int n = t.n();
  std::vector<Rational> out(static_cast<size_t>(n), Rational(0));
  const auto terms = t.terms();
  for (const auto& [key, coeff] : terms) {
    if (key[0] != key[1] || key[2] != key[3])
      throw std::logic_error("constraint tensor leaves the Cartan square");
    if (!coeff.is_constant())
      throw std::logic_error("constraint tensor has variable coefficients");
    const Rational c = coeff.constant_value();
    const int u = key[0];
    const int v = key[2];
    out[static_cast<size_t>(v - 1)] += node_on_unit(n, a, u) * c;
    out[static_cast<size_t>(u - 1)] += node_on_unit(n, b, v) * c;
  }
  rows->insert(rows->end(), out.begin(), out.end());
}

// Wedge basis of the Cartan square: h_k ^ h_l over coroots
// h_k = e_kk - e_{k+1,k+1}, listed with 1 <= k < l <= n-1 in lexicographic
// order.  This fixes the canonical coordinates of r0.
std::vector<TensorPoly> cartan_wedge_basis(int n) {
  std::vector<TensorPoly> basis;
  auto coroot = [&](int k) {
    std::vector<std::pair<int, Rational>> h;
    h.emplace_back(k, Rational(1));
    h.emplace_back(k + 1, Rational(-1));
    return h;
  };
  for (int k = 1; k <= n - 1; ++k)
    for (int l = k + 1; l <= n - 1; ++l) {
      TensorPoly w(n, 2);
      for (const auto& [u, cu] : coroot(k))
        for (const auto& [v, cv] : coroot(l)) {
          w.add(unit_key(u, u, v, v), Poly(cu * cv));
          w.add(unit_key(v, v, u, u), Poly(-(cu * cv)));
        }
      basis.push_back(std::move(w));
    }
  return basis;
}

// Coefficient matrix and right-hand side of the Cartan constraint
//   (alpha (x) 1 + 1 (x) tau(alpha)) (r0 + gamma_cartan / 2) = 0,
// one block of n rows per gamma1 node, columns over the wedge basis.
struct ConstraintSystem {
  RatMat a;
  RatMat b;
  std::vector<TensorPoly> basis;
};

ConstraintSystem cartan_constraint(const BDData& d) {
  ConstraintSystem sys;
  sys.basis = cartan_wedge_basis(d.n);
  const int cols = static_cast<int>(sys.basis.size());
  const int rows = static_cast<int>(d.gamma1.size()) * d.n;
  sys.a = RatMat::Zero(rows, cols);
  sys.b = RatMat::Zero(rows, 1);
  const TensorPoly gamma_half = Poly(Rational(1, 2)) * cartan_casimir(d.n);
  int block = 0;
  for (int alpha : d.gamma1) {
    const int beta = d.tau.at(alpha);
    for (int m = 0; m < cols; ++m) {
      std::vector<Rational> col;
      append_constraint_rows(sys.basis[static_cast<size_t>(m)], alpha, beta,
                             &col);
      for (int i = 0; i < d.n; ++i) sys.a(block + i, m) = col[static_cast<size_t>(i)];
    }
    std::vector<Rational> rhs;
    append_constraint_rows(gamma_half, alpha, beta, &rhs);
    for (int i = 0; i < d.n; ++i) sys.b(block + i, 0) = -rhs[static_cast<size_t>(i)];
    block += d.n;
  }
  return sys;
}

// Sum of the wedge terms generated by the datum.  Segments of consecutive
// finite nodes inside gamma1 are the roots alpha; tau pushes the node set
// around the cycle while it stays inside gamma1.  A finite image segment
// [a', b'] contributes e_{a', b'+1} ^ e_{-alpha}; an image through the affine
// node wraps the cycle and contributes the loop-weighted pair
// x e_gamma (x) e_{-alpha} - y e_{-alpha} (x) e_gamma with gamma the negative
// position (tail start, head end + 1).
TensorPoly bd_wedge_sum(const BDData& d) {
  const int n = d.n;
  TensorPoly out(n, 2);
  const Poly x = Poly::variable(Var::x);
  const Poly y = Poly::variable(Var::y);
  const std::set<int> g1(d.gamma1.begin(), d.gamma1.end());
  for (int a = 1; a <= n - 1; ++a) {
    for (int b = a; b <= n - 1; ++b) {
      bool inside = true;
      for (int s = a; s <= b && inside; ++s) inside = g1.count(s) > 0;
      if (!inside) continue;
      // alpha is the root at matrix position (a, b+1).
      std::vector<int> nodes;
      for (int s = a; s <= b; ++s) nodes.push_back(s);
      for (;;) {
        bool defined = true;
        for (int s : nodes) defined = defined && g1.count(s) > 0;
        if (!defined) break;
        for (int& s : nodes) s = d.tau.at(s);
        std::sort(nodes.begin(), nodes.end());
        const std::set<int> image(nodes.begin(), nodes.end());
        if (image.count(0) > 0) {
          // Wrapping image: {0}, a head 1..j and a tail i..n-1 (either may
          // be empty).  Pairing preservation keeps images connected on the
          // cycle, so nothing else can appear.
          int j = 0;
          while (image.count(j + 1) > 0) ++j;
          int i = n;
          while (image.count(i - 1) > 0) --i;
          if (static_cast<int>(image.size()) != 1 + j + (n - i) || i <= j + 1)
            throw std::logic_error("cycle image is not a connected segment");
          out.add(unit_key(i, j + 1, b + 1, a), x);
          out.add(unit_key(b + 1, a, i, j + 1), Poly(0) - y);
        } else {
          const int lo = nodes.front();
          const int hi = nodes.back();
          if (static_cast<int>(image.size()) != hi - lo + 1)
            throw std::logic_error("cycle image is not a connected segment");
          out.add(unit_key(lo, hi + 1, b + 1, a), Poly(1));
          out.add(unit_key(b + 1, a, lo, hi + 1), Poly(-1));
        }
      }
    }
  }
  return out;
}

BDSolution assemble(const BDData& d, TensorPoly r0, int freedom) {
  BDSolution sol{QuasiTrigR{d.n, r_standard(d.n).p}, std::move(r0), freedom};
  sol.r.p += sol.r0;
  sol.r.p += bd_wedge_sum(d);
  return sol;
}

std::string node_label(int s) { return "a" + std::to_string(s); }

int parse_node_label(const std::string& label, int n) {
  if (label.size() < 2 || label[0] != 'a')
    throw std::invalid_argument("bd data: node labels look like a0, a1, ...");
  int value = 0;
  for (size_t i = 1; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9')
      throw std::invalid_argument("bd data: node labels look like a0, a1, ...");
    value = value * 10 + (label[i] - '0');
    if (value >= 1000)
      throw std::invalid_argument("bd data: node label out of range");
  }
  if (value >= n)
    throw std::invalid_argument("bd data: node label out of range");
  return value;
}

}  // namespace

Rational node_pairing(int n, int i, int j) {
  if (i == j) return Rational(2);
  if (n == 2) return Rational(-2);
  const int diff = ((i - j) % n + n) % n;
  if (diff == 1 || diff == n - 1) return Rational(-1);
  return Rational(0);
}

void validate_bd_data(const BDData& d) {
  if (d.n < 2) throw std::invalid_argument("bd data: n must be at least 2");
  auto check_nodes = [&](const std::vector<int>& v, const char* which) {
    std::set<int> seen;
    for (int s : v) {
      if (s < 0 || s >= d.n)
        throw std::invalid_argument(std::string("bd data: ") + which +
                                    " node label out of range");
      if (!seen.insert(s).second)
        throw std::invalid_argument(std::string("bd data: ") + which +
                                    " nodes must be distinct");
    }
  };
  check_nodes(d.gamma1, "gamma1");
  check_nodes(d.gamma2, "gamma2");
  for (int s : d.gamma1)
    if (s == 0)
      throw std::invalid_argument(
          "bd data: gamma1 must not contain the affine simple root");
  if (d.tau.size() != d.gamma1.size())
    throw std::invalid_argument(
        "bd data: tau must be a bijection from gamma1 onto gamma2");
  std::set<int> images;
  for (int s : d.gamma1) {
    const auto it = d.tau.find(s);
    if (it == d.tau.end())
      throw std::invalid_argument(
          "bd data: tau must be a bijection from gamma1 onto gamma2");
    if (!images.insert(it->second).second)
      throw std::invalid_argument(
          "bd data: tau must be a bijection from gamma1 onto gamma2");
  }
  if (images != std::set<int>(d.gamma2.begin(), d.gamma2.end()))
    throw std::invalid_argument(
        "bd data: tau must be a bijection from gamma1 onto gamma2");
  for (int a : d.gamma1)
    for (int b : d.gamma1)
      if (node_pairing(d.n, a, b) !=
          node_pairing(d.n, d.tau.at(a), d.tau.at(b)))
        throw std::invalid_argument(
            "bd data: tau does not preserve the cycle pairing");
  const std::set<int> g1(d.gamma1.begin(), d.gamma1.end());
  for (int a : d.gamma1) {
    int node = a;
    int steps = 0;
    while (g1.count(node) > 0) {
      node = d.tau.at(node);
      if (++steps > d.n)
        throw std::invalid_argument("bd data: tau is not nilpotent");
    }
  }
}

BDData bd_shift_data(const ShiftData& s) {
  BDData d;
  d.n = s.n;
  for (int i = 1; i <= s.n - 1; ++i) {
    d.gamma1.push_back(i);
    d.tau[i] = (i + s.c) % s.n;
  }
  for (const auto& [from, to] : d.tau) {
    (void)from;
    d.gamma2.push_back(to);
  }
  std::sort(d.gamma2.begin(), d.gamma2.end());
  return d;
}

BDData bd_data_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bd data: invalid JSON: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("gamma1") ||
      !doc.contains("gamma2") || !doc.contains("tau"))
    throw std::invalid_argument(
        "bd data: expected keys n, gamma1, gamma2, tau");
  BDData d;
  if (!doc["n"].is_number_integer())
    throw std::invalid_argument("bd data: n must be an integer");
  d.n = doc["n"].get<int>();
  if (d.n < 2) throw std::invalid_argument("bd data: n must be at least 2");
  auto read_nodes = [&](const nlohmann::json& arr) {
    if (!arr.is_array())
      throw std::invalid_argument("bd data: node lists must be arrays");
    std::vector<int> out;
    for (const auto& item : arr) {
      if (!item.is_string())
        throw std::invalid_argument("bd data: node labels must be strings");
      out.push_back(parse_node_label(item.get<std::string>(), d.n));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  d.gamma1 = read_nodes(doc["gamma1"]);
  d.gamma2 = read_nodes(doc["gamma2"]);
  if (!doc["tau"].is_array())
    throw std::invalid_argument("bd data: tau must be a list of label pairs");
  for (const auto& pair : doc["tau"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
        !pair[1].is_string())
      throw std::invalid_argument("bd data: tau must be a list of label pairs");
    const int from = parse_node_label(pair[0].get<std::string>(), d.n);
    const int to = parse_node_label(pair[1].get<std::string>(), d.n);
    if (!d.tau.emplace(from, to).second)
      throw std::invalid_argument(
          "bd data: tau must be a bijection from gamma1 onto gamma2");
  }
  validate_bd_data(d);
  return d;
}

std::string bd_data_to_json(const BDData& d) {
  validate_bd_data(d);
  nlohmann::ordered_json doc;
  doc["n"] = d.n;
  auto labels = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    std::vector<std::string> out;
    for (int s : v) out.push_back(node_label(s));
    return out;
  };
  doc["gamma1"] = labels(d.gamma1);
  doc["gamma2"] = labels(d.gamma2);
  std::vector<int> domain = d.gamma1;
  std::sort(domain.begin(), domain.end());
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (int s : domain)
    pairs.push_back({node_label(s), node_label(d.tau.at(s))});
  doc["tau"] = pairs;
  return doc.dump();
}

BDSolution bd_conjecture_r(const BDData& d) {
  validate_bd_data(d);
  const ConstraintSystem sys = cartan_constraint(d);
  const int cols = static_cast<int>(sys.basis.size());
  RatMat coords;
  try {
    coords = solve_many(sys.a, sys.b);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("no admissible r0");
  }
  TensorPoly r0(d.n, 2);
  for (int m = 0; m < cols; ++m)
    if (!coords(m, 0).is_zero())
      r0 += Poly(coords(m, 0)) * sys.basis[static_cast<size_t>(m)];
  const int freedom = cols - rank(sys.a);
  return assemble(d, std::move(r0), freedom);
}

BDSolution bd_conjecture_r(const BDData& d, const TensorPoly& r0) {
  validate_bd_data(d);
  if (r0.n() != d.n || r0.legs() != 2)
    throw std::invalid_argument("bd data: r0 has the wrong shape");
  {
    const auto terms = r0.terms();
    for (const auto& [key, coeff] : terms) {
      if (key[0] != key[1] || key[2] != key[3])
        throw std::invalid_argument(
            "bd data: r0 must lie in the Cartan wedge square");
      if (!coeff.is_constant())
        throw std::invalid_argument("bd data: r0 must be constant");
    }
  }
  if (!(r0.swap_legs(1, 2) + r0).is_zero())
    throw std::invalid_argument(
        "bd data: r0 must lie in the Cartan wedge square");
  const TensorPoly shifted =
      r0 + Poly(Rational(1, 2)) * cartan_casimir(d.n);
  for (int alpha : d.gamma1) {
    std::vector<Rational> rows;
    append_constraint_rows(shifted, alpha, d.tau.at(alpha), &rows);
    for (const Rational& v : rows)
      if (!v.is_zero())
        throw std::invalid_argument(
            "bd data: r0 does not satisfy the Cartan constraint");
  }
  const ConstraintSystem sys = cartan_constraint(d);
  const int freedom = static_cast<int>(sys.basis.size()) - rank(sys.a);
  return assemble(d, r0, freedom);
}

}  // namespace qtr
