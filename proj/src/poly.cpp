#include "qtr/poly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qtr {

const char* var_name(Var v) {
  static const char* names[kNumVars] = {"x", "y", "z", "x1", "x2", "x3"};
  return names[static_cast<int>(v)];
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  int da = 0, db = 0;
  for (int k = 0; k < kNumVars; ++k) {
    da += a[k];
    db += b[k];
  }
  if (da != db) return da > db;
  for (int k = 0; k < kNumVars; ++k)
    if (a[k] != b[k]) return a[k] > b[k];
  return false;
}

Poly::Poly(const Rational& value) {
  if (value != 0) terms_.emplace(Monomial{}, value);
}

Poly Poly::variable(Var v) {
  Monomial m{};
  m[static_cast<int>(v)] = 1;
  return monomial(m, 1);
}

Poly Poly::monomial(const Monomial& m, const Rational& coeff) {
  Poly p;
  if (coeff != 0) p.terms_.emplace(m, coeff);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

Rational Poly::constant_value() const {
  const auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  const Monomial& lead = terms_.begin()->first;  // grlex leader has maximal degree
  int d = 0;
  for (int k = 0; k < kNumVars; ++k) d += lead[k];
  return d;
}

int Poly::degree_in(Var v) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max<int>(d, m[static_cast<int>(v)]);
  return terms_.empty() ? 0 : d;
}

void Poly::insert_term(const Monomial& m, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, fresh] = terms_.emplace(m, coeff);
  if (!fresh) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) insert_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) insert_term(m, -c);
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  Poly out;
  for (const auto& [ma, ca] : lhs.terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      Monomial m;
      for (int k = 0; k < kNumVars; ++k) {
        const int e = ma[k] + mb[k];
        if (e > 255) throw std::overflow_error("monomial exponent overflow");
        m[k] = static_cast<std::uint8_t>(e);
      }
      out.insert_term(m, ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& rhs) {
  *this = *this * rhs;
  return *this;
}

Poly& Poly::operator*=(const Rational& rhs) {
  if (rhs == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= rhs;
  return *this;
}

Poly Poly::pow(unsigned e) const {
  Poly out(1);
  Poly base(*this);
  while (e > 0) {
    if (e & 1u) out *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return out;
}

Poly Poly::substitute(Var v, const Poly& value) const {
  const int idx = static_cast<int>(v);
  Poly out;
  std::map<int, Poly> powers;  // cache of value^e
  powers[0] = Poly(1);
  for (const auto& [m, c] : terms_) {
    const int e = m[idx];
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, value.pow(static_cast<unsigned>(e))).first;
    Monomial rest = m;
    rest[idx] = 0;
    out += Poly::monomial(rest, c) * it->second;
  }
  return out;
}

Poly Poly::substitute(Var v, const Rational& value) const {
  return substitute(v, Poly(value));
}

Rational Poly::eval(const std::array<Rational, kNumVars>& point) const {
  Rational out(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int k = 0; k < kNumVars; ++k)
      for (int e = 0; e < m[k]; ++e) term *= point[k];
    out += term;
  }
  return out;
}

bool Poly::divide_exact(const Poly& divisor, Poly& quotient) const {
  if (divisor.is_zero()) throw std::invalid_argument("polynomial division by zero");
  quotient = Poly();
  Poly rem(*this);
  const auto& [dlead, dcoeff] = *divisor.terms_.begin();
  while (!rem.is_zero()) {
    const auto& [rlead, rcoeff] = *rem.terms_.begin();
    Monomial q;
    for (int k = 0; k < kNumVars; ++k) {
      if (rlead[k] < dlead[k]) return false;  // leading term not divisible
      q[k] = static_cast<std::uint8_t>(rlead[k] - dlead[k]);
    }
    const Poly t = Poly::monomial(q, rcoeff / dcoeff);
    quotient += t;
    rem -= t * divisor;
  }
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? '-' : '+');
    }
    first = false;

    std::vector<std::string> factors;
    if (mag != 1) factors.push_back(to_string(mag));
    for (int k = 0; k < kNumVars; ++k) {
      if (m[k] == 0) continue;
      std::string f = var_name(static_cast<Var>(k));
      if (m[k] > 1) f += "^" + std::to_string(static_cast<int>(m[k]));
      factors.push_back(f);
    }
    if (factors.empty()) factors.push_back("1");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) os << '*';
      os << factors[i];
    }
  }
  return os.str();
}

namespace {

struct PolyLexer {
  const std::string& text;
  std::size_t pos = 0;

  explicit PolyLexer(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool peek(char ch) {
    skip_ws();
    return pos < text.size() && text[pos] == ch;
  }
  bool consume(char ch) {
    if (!peek(ch)) return false;
    ++pos;
    return true;
  }
  bool done() {
    skip_ws();
    return pos == text.size();
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos) +
                                ": " + what + " in \"" + text + "\"");
  }
};

// number := digits [ '/' digits ]
Rational lex_number(PolyLexer& lx) {
  lx.skip_ws();
  std::size_t start = lx.pos;
  while (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) ++lx.pos;
  if (lx.pos == start) lx.fail("expected number");
  std::string body = lx.text.substr(start, lx.pos - start);
  if (lx.consume('/')) {
    std::size_t dstart = lx.pos;
    while (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) ++lx.pos;
    if (lx.pos == dstart) lx.fail("expected denominator");
    body += "/" + lx.text.substr(dstart, lx.pos - dstart);
  }
  return parse_rational(body);
}

// factor := number | var [ '^' digits ]
Poly lex_factor(PolyLexer& lx) {
  lx.skip_ws();
  if (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos])))
    return Poly(lex_number(lx));
  for (int k = kNumVars - 1; k >= 0; --k) {  // longest names ("x1") before "x"
    const std::string name = var_name(static_cast<Var>(k));
    if (lx.text.compare(lx.pos, name.size(), name) == 0) {
      lx.pos += name.size();
      unsigned e = 1;
      if (lx.consume('^')) {
        lx.skip_ws();
        std::size_t start = lx.pos;
        while (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) ++lx.pos;
        if (lx.pos == start) lx.fail("expected exponent");
        e = static_cast<unsigned>(std::stoul(lx.text.substr(start, lx.pos - start)));
      }
      return Poly::variable(static_cast<Var>(k)).pow(e);
    }
  }
  lx.fail("expected factor");
}

}  // namespace

Poly Poly::parse(const std::string& text) {
  PolyLexer lx(text);
  Poly out;
  bool first = true;
  while (!lx.done()) {
    int sign = 1;
    if (lx.consume('-')) {
      sign = -1;
    } else if (lx.consume('+')) {
      if (first) lx.fail("unexpected leading '+'");
    } else if (!first) {
      lx.fail("expected '+' or '-'");
    }
    Poly term = lex_factor(lx);
    while (lx.consume('*')) term *= lex_factor(lx);
    if (sign < 0) term *= Rational(-1);
    out += term;
    first = false;
  }
  if (first) lx.fail("empty polynomial");
  return out;
}

}  // namespace qtr
