#include "doctest.h"

#include "qtr/linalg.hpp"

using qtr::kernel_basis;
using qtr::Poly;
using qtr::PolyMat;
using qtr::rank;
using qtr::RatMat;
using qtr::RatVec;
using qtr::Rational;
using qtr::Var;

namespace {

RatMat rat3x3(std::initializer_list<int> vals) {
  RatMat m(3, 3);
  auto it = vals.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Rational(*it++);
  return m;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rational rank") {
    CHECK(rank(RatMat::Zero(3, 4).eval()) == 0);
    CHECK(rank(rat3x3({1, 0, 0, 0, 1, 0, 0, 0, 1})) == 3);
    CHECK(rank(rat3x3({1, 2, 3, 2, 4, 6, 1, 1, 1})) == 2);
    CHECK(rank(rat3x3({1, 2, 3, 4, 5, 6, 7, 8, 9})) == 2);
  }

  TEST_CASE("rational kernel annihilates and has complementary dimension") {
    const RatMat m = rat3x3({1, 2, 3, 4, 5, 6, 7, 8, 9});
    const RatMat k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    const RatMat mk = m * k;
    for (int i = 0; i < mk.rows(); ++i) CHECK(mk(i, 0) == Rational(0));
    CHECK(k(0, 0) == Rational(1));  // canonical free-variable slot
    // Known kernel direction (1, -2, 1).
    CHECK(k(1, 0) == Rational(-2));
    CHECK(k(2, 0) == Rational(1));

    CHECK(kernel_basis(rat3x3({1, 0, 0, 0, 1, 0, 0, 0, 1})).cols() == 0);
    CHECK(kernel_basis(RatMat::Zero(2, 5).eval()).cols() == 5);
  }

  TEST_CASE("rational solve") {
    const RatMat m = rat3x3({2, 0, 0, 0, 3, 0, 0, 0, -1});
    RatVec b(3);
    b << Rational(1), Rational(1), Rational(1);
    auto x = qtr::solve(m, b);
    REQUIRE(x.has_value());
    CHECK((*x)(0) == Rational(1, 2));
    CHECK((*x)(1) == Rational(1, 3));
    CHECK((*x)(2) == Rational(-1));

    // Inconsistent system: rows demand 0 = 1.
    RatMat s(2, 1);
    s << Rational(1), Rational(1);
    RatVec rhs(2);
    rhs << Rational(0), Rational(1);
    CHECK_FALSE(qtr::solve(s, rhs).has_value());

    // Underdetermined systems still produce a valid particular solution.
    RatMat u(1, 3);
    u << Rational(1), Rational(1), Rational(1);
    RatVec ub(1);
    ub << Rational(5);
    auto ux = qtr::solve(u, ub);
    REQUIRE(ux.has_value());
    CHECK((u * *ux)(0) == Rational(5));
  }

  TEST_CASE("solve_many matches column-wise solve") {
    RatMat m(3, 3);
    m << Rational(1), Rational(1), Rational(0),
         Rational(0), Rational(1), Rational(1),
         Rational(1), Rational(0), Rational(1);
    RatMat b(3, 2);
    b << Rational(1), Rational(0),
         Rational(2), Rational(0),
         Rational(3), Rational(2);
    const RatMat x = qtr::solve_many(m, b);
    CHECK(m * x == b);
    for (int k = 0; k < 2; ++k) {
      auto col = qtr::solve(m, b.col(k).eval());
      REQUIRE(col.has_value());
      CHECK(x.col(k) == *col);
    }
  }

  TEST_CASE("polynomial rank via fraction-free elimination") {
    const Poly x = Poly::variable(Var::x);
    const Poly y = Poly::variable(Var::y);
    PolyMat m(2, 2);
    m << x, y, x * x, x * y;  // second row = x * first row
    CHECK(rank(m) == 1);
    m << x, y, y, x;
    CHECK(rank(m) == 2);  // det = x^2 - y^2 != 0
    PolyMat z(2, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) z(i, j) = Poly();
    CHECK(rank(z) == 0);
  }

  TEST_CASE("polynomial kernel has polynomial entries and annihilates") {
    const Poly x = Poly::variable(Var::x);
    const Poly y = Poly::variable(Var::y);
    PolyMat m(1, 2);
    m << x, -y;
    const PolyMat k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(k(0, 0) == y);
    CHECK(k(1, 0) == x);

    PolyMat m2(2, 3);
    m2 << x, Poly(0), -x * x,
          Poly(0), y, -y;
    const PolyMat k2 = kernel_basis(m2);
    REQUIRE(k2.cols() == 1);
    for (int i = 0; i < 2; ++i) {
      Poly acc;
      for (int j = 0; j < 3; ++j) acc += m2(i, j) * k2(j, 0);
      CHECK(acc.is_zero());
    }
  }
}
