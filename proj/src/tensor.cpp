#include "qtr/tensor.hpp"

#include <sstream>
#include <stdexcept>

namespace qtr {

TensorPoly::TensorPoly(int n, int legs) : n_(n), legs_(legs) {
  if (n < 2) throw std::invalid_argument("TensorPoly: need n >= 2");
  if (legs != 2 && legs != 3) throw std::invalid_argument("TensorPoly: legs must be 2 or 3");
}

Poly TensorPoly::coeff(const UnitKey& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? Poly() : it->second;
}

void TensorPoly::add(const UnitKey& key, const Poly& coeff) {
  if (coeff.is_zero()) return;
  for (int leg = 0; leg < 3; ++leg) {
    const bool used = leg < legs_;
    const int i = key[2 * leg], j = key[2 * leg + 1];
    if (used && (i < 1 || i > n_ || j < 1 || j > n_))
      throw std::invalid_argument("TensorPoly::add: unit index out of range");
    if (!used && (i != 0 || j != 0))
      throw std::invalid_argument("TensorPoly::add: key longer than leg count");
  }
  auto [it, fresh] = terms_.emplace(key, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorPoly TensorPoly::operator-() const {
  TensorPoly out(n_, legs_);
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
  return out;
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& rhs) {
  if (n_ != rhs.n_ || legs_ != rhs.legs_)
    throw std::invalid_argument("TensorPoly: shape mismatch in +=");
  for (const auto& [key, c] : rhs.terms_) add(key, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& rhs) {
  if (n_ != rhs.n_ || legs_ != rhs.legs_)
    throw std::invalid_argument("TensorPoly: shape mismatch in -=");
  for (const auto& [key, c] : rhs.terms_) add(key, -c);
  return *this;
}

TensorPoly& TensorPoly::operator*=(const Poly& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  std::map<UnitKey, Poly> scaled;
  for (const auto& [key, c] : terms_) scaled.emplace(key, c * scalar);
  terms_ = std::move(scaled);
  return *this;
}

bool operator==(const TensorPoly& a, const TensorPoly& b) {
  return a.n_ == b.n_ && a.legs_ == b.legs_ && a.terms_ == b.terms_;
}

TensorPoly TensorPoly::swap_legs(int a, int b) const {
  if (a < 1 || b < 1 || a > legs_ || b > legs_)
    throw std::invalid_argument("TensorPoly::swap_legs: leg out of range");
  TensorPoly out(n_, legs_);
  for (const auto& [key, c] : terms_) {
    UnitKey k = key;
    std::swap(k[2 * (a - 1)], k[2 * (b - 1)]);
    std::swap(k[2 * (a - 1) + 1], k[2 * (b - 1) + 1]);
    out.add(k, c);
  }
  return out;
}

TensorPoly TensorPoly::substitute(Var v, const Poly& value) const {
  TensorPoly out(n_, legs_);
  for (const auto& [key, c] : terms_) out.add(key, c.substitute(v, value));
  return out;
}

std::string TensorPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*";
    for (int leg = 0; leg < legs_; ++leg) {
      if (leg) os << "(x)";
      os << "e(" << int(key[2 * leg]) << "," << int(key[2 * leg + 1]) << ")";
    }
  }
  return os.str();
}

TensorPoly::UnitKey unit_key(int i1, int j1, int i2, int j2) {
  return {static_cast<std::uint8_t>(i1), static_cast<std::uint8_t>(j1),
          static_cast<std::uint8_t>(i2), static_cast<std::uint8_t>(j2), 0, 0};
}

TensorPoly::UnitKey unit_key(int i1, int j1, int i2, int j2, int i3, int j3) {
  return {static_cast<std::uint8_t>(i1), static_cast<std::uint8_t>(j1),
          static_cast<std::uint8_t>(i2), static_cast<std::uint8_t>(j2),
          static_cast<std::uint8_t>(i3), static_cast<std::uint8_t>(j3)};
}

TensorPoly simple2(const RatMat& a, const RatMat& b, const Poly& coeff) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("simple2: operands must be square of equal size");
  const int n = static_cast<int>(a.rows());
  TensorPoly out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (a(i, j) == 0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (b(k, l) == 0) continue;
          out.add(unit_key(i + 1, j + 1, k + 1, l + 1), Poly(a(i, j) * b(k, l)) * coeff);
        }
    }
  return out;
}

TensorPoly wedge2(const RatMat& a, const RatMat& b) {
  return simple2(a, b) - simple2(b, a);
}

TensorPoly casimir(int n) {
  TensorPoly out(n, 2);
  const Rational inv_n(1, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i != j) out.add(unit_key(i, j, j, i), Poly(1));
      out.add(unit_key(i, i, j, j), i == j ? Poly(Rational(1) - inv_n) : Poly(-inv_n));
    }
  return out;
}

TensorPoly cartan_casimir(int n) {
  TensorPoly out(n, 2);
  const Rational inv_n(1, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      out.add(unit_key(i, i, j, j), i == j ? Poly(Rational(1) - inv_n) : Poly(-inv_n));
  return out;
}

namespace {

// Shared-leg commutator: emits [e_ab, e_cd] = delta_bc e_ad - delta_da e_cb
// into `out` at the three-leg key assembled by `place`.  The coefficient
// product is only formed when at least one delta fires.
template <typename Place>
void emit_bracket(TensorPoly& out, int a, int b, int c, int d, const Poly& ca,
                  const Poly& cb, const Place& place) {
  if (b != c && d != a) return;
  const Poly coeff = ca * cb;
  if (b == c) out.add(place(a, d), coeff);
  if (d == a) out.add(place(c, b), -coeff);
}

void require_pair(const TensorPoly& a, const TensorPoly& b) {
  if (a.legs() != 2 || b.legs() != 2 || a.n() != b.n())
    throw std::invalid_argument("tensor bracket: need two two-leg tensors over the same n");
}

}  // namespace

TensorPoly bracket_12_13(const TensorPoly& a, const TensorPoly& b) {
  require_pair(a, b);
  TensorPoly out(a.n(), 3);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      emit_bracket(out, ka[0], ka[1], kb[0], kb[1], ca, cb, [&](int i, int j) {
        return unit_key(i, j, ka[2], ka[3], kb[2], kb[3]);
      });
  return out;
}

TensorPoly bracket_13_23(const TensorPoly& a, const TensorPoly& b) {
  require_pair(a, b);
  TensorPoly out(a.n(), 3);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      emit_bracket(out, ka[2], ka[3], kb[2], kb[3], ca, cb, [&](int i, int j) {
        return unit_key(ka[0], ka[1], kb[0], kb[1], i, j);
      });
  return out;
}

TensorPoly bracket_12_23(const TensorPoly& a, const TensorPoly& b) {
  require_pair(a, b);
  TensorPoly out(a.n(), 3);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      emit_bracket(out, ka[2], ka[3], kb[0], kb[1], ca, cb, [&](int i, int j) {
        return unit_key(ka[0], ka[1], i, j, kb[2], kb[3]);
      });
  return out;
}

TensorPoly ad_leg(const PolyMat& m, const TensorPoly& t, int leg) {
  if (leg < 1 || leg > t.legs()) throw std::invalid_argument("ad_leg: leg out of range");
  if (m.rows() != t.n() || m.cols() != t.n())
    throw std::invalid_argument("ad_leg: matrix size mismatch");
  const int n = t.n();
  TensorPoly out(n, t.legs());
  const int off = 2 * (leg - 1);
  for (const auto& [key, c] : t.terms()) {
    const int i = key[off], j = key[off + 1];
    // m * e_ij = sum_a m(a, i) e_aj ;  e_ij * m = sum_b m(j, b) e_ib.
    for (int a = 1; a <= n; ++a) {
      const Poly& entry = m(a - 1, i - 1);
      if (entry.is_zero()) continue;
      TensorPoly::UnitKey k = key;
      k[off] = static_cast<std::uint8_t>(a);
      out.add(k, entry * c);
    }
    for (int b = 1; b <= n; ++b) {
      const Poly& entry = m(j - 1, b - 1);
      if (entry.is_zero()) continue;
      TensorPoly::UnitKey k = key;
      k[off + 1] = static_cast<std::uint8_t>(b);
      out.add(k, -(entry * c));
    }
  }
  return out;
}

RatMat coefficient_matrix(const TensorPoly& t, const std::array<Rational, kNumVars>& point) {
  if (t.legs() != 2) throw std::invalid_argument("coefficient_matrix: need a two-leg tensor");
  const int n = t.n();
  RatMat m = RatMat::Zero(n * n, n * n);
  for (const auto& [key, c] : t.terms())
    m((key[0] - 1) * n + key[1] - 1, (key[2] - 1) * n + key[3] - 1) += c.eval(point);
  return m;
}

PolyMat to_poly(const RatMat& m) {
  PolyMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = Poly(m(i, j));
  return out;
}

}  // namespace qtr
