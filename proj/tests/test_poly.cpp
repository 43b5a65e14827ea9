#include "doctest.h"

#include "qtr/poly.hpp"

using qtr::Poly;
using qtr::Rational;
using qtr::Var;

namespace {
const Poly X = Poly::variable(Var::x);
const Poly Y = Poly::variable(Var::y);
const Poly Z = Poly::variable(Var::z);
}  // namespace

TEST_SUITE("poly") {
  TEST_CASE("construction and predicates") {
    CHECK(Poly().is_zero());
    CHECK(Poly(0).is_zero());
    CHECK(Poly(3).is_constant());
    CHECK(Poly(3).constant_value() == Rational(3));
    CHECK_FALSE(X.is_constant());
    CHECK(Poly().total_degree() == -1);
    CHECK(Poly(5).total_degree() == 0);
    CHECK((X * X * Y + Z).total_degree() == 3);
    CHECK((X * X * Y + Z).degree_in(Var::x) == 2);
    CHECK((X * X * Y + Z).degree_in(Var::y) == 1);
  }

  TEST_CASE("ring identities") {
    const Poly p = X * Y - Z + Poly(2);
    const Poly q = Y * Y + Poly(Rational(1, 2)) * X;
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK(p * (q + Poly(1)) == p * q + p);
    CHECK((p - p).is_zero());
    CHECK((p * Poly(0)).is_zero());
    CHECK(p * Poly(1) == p);
    CHECK(-(-p) == p);
  }

  TEST_CASE("pow") {
    CHECK(X.pow(0) == Poly(1));
    CHECK(X.pow(3) == X * X * X);
    CHECK((X + Y).pow(2) == X * X + Poly(2) * X * Y + Y * Y);
    CHECK(Poly(2).pow(10) == Poly(1024));
  }

  TEST_CASE("substitute variable by polynomial") {
    const Poly p = X * X - Y;
    CHECK(p.substitute(Var::x, Y) == Y * Y - Y);
    CHECK(p.substitute(Var::y, X * X).is_zero());
    CHECK(p.substitute(Var::z, Poly(7)) == p);
    const Poly q = (X - Y) * (X + Y);
    CHECK(q.substitute(Var::x, Poly(Rational(1, 2))) ==
          Poly(Rational(1, 4)) - Y * Y);
  }

  TEST_CASE("eval at a rational point") {
    const Poly p = X * X * Y - Poly(Rational(1, 2)) * Z + Poly(3);
    std::array<Rational, qtr::kNumVars> pt{};
    pt[0] = Rational(2);   // x
    pt[1] = Rational(-1);  // y
    pt[2] = Rational(4);   // z
    CHECK(p.eval(pt) == Rational(-3));
  }

  TEST_CASE("exact division") {
    const Poly p = (X - Y) * (X + Y);
    Poly q;
    REQUIRE(p.divide_exact(X - Y, q));
    CHECK(q == X + Y);
    REQUIRE((X * X * Z - Y * Y * Z).divide_exact(Z, q));
    CHECK(q == X * X - Y * Y);
    CHECK_FALSE(p.divide_exact(X - Z, q));
    CHECK_FALSE((X + Poly(1)).divide_exact(X, q));
    CHECK(Poly().divide_exact(X, q));
    CHECK(q.is_zero());
    CHECK_THROWS(p.divide_exact(Poly(), q));
  }

  TEST_CASE("canonical text form") {
    CHECK(Poly().str() == "0");
    CHECK(Poly(1).str() == "1");
    CHECK(Poly(-1).str() == "-1");
    CHECK(Poly(Rational(-1, 2)).str() == "-1/2");
    CHECK(X.str() == "x");
    CHECK((X * X - Y * Y).str() == "x^2-y^2");
    CHECK((-Poly(Rational(1, 2)) * X * Y + Z).str() == "-1/2*x*y+z");
    CHECK((Poly(2) * X.pow(3)).str() == "2*x^3");
    // Graded-lex descending order: higher total degree first.
    CHECK((Poly(1) + X + X * X).str() == "x^2+x+1");
    const Poly t = Poly::variable(Var::x1) * Poly::variable(Var::x3) -
                   Poly::variable(Var::x2);
    CHECK(t.str() == "x1*x3-x2");
  }

  TEST_CASE("parse inverts str") {
    const Poly samples[] = {
        Poly(),
        Poly(Rational(-7, 3)),
        X,
        X * X - Y * Y,
        -Poly(Rational(1, 2)) * X * Y + Z,
        (X + Y + Z).pow(3),
        Poly::variable(Var::x1) * Poly::variable(Var::x2) * Poly::variable(Var::x3) -
            Poly(Rational(5, 9)) * Poly::variable(Var::x1),
    };
    for (const Poly& p : samples) CHECK(Poly::parse(p.str()) == p);
    CHECK(Poly::parse(" x ^ 2 - y * x ") == X * X - X * Y);
    CHECK(Poly::parse("x1") == Poly::variable(Var::x1));
    CHECK(Poly::parse("x+x") == Poly(2) * X);
    CHECK_THROWS(Poly::parse(""));
    CHECK_THROWS(Poly::parse("x+"));
    CHECK_THROWS(Poly::parse("w"));
    CHECK_THROWS(Poly::parse("x**y"));
  }
}
