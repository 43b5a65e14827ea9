#include "doctest.h"

#include <stdexcept>

#include "qtr/lie.hpp"
#include "qtr/quasitrig.hpp"
#include "qtr/tensor.hpp"

using qtr::PolyMat;
using qtr::QuasiTrigR;
using qtr::RatMat;
using qtr::Rational;
using qtr::TensorPoly;
using qtr::Var;
using Poly = qtr::Poly;

namespace {

TensorPoly two_leg_zero(int n) { return TensorPoly(n, 2); }

}  // namespace

TEST_SUITE("quasitrig") {
  TEST_CASE("standard solution has the expected constant part for n = 2") {
    const QuasiTrigR r = qtr::r_standard(2);
    TensorPoly expected(2, 2);
    expected.add(qtr::unit_key(1, 1, 1, 1), Rational(1, 4));
    expected.add(qtr::unit_key(1, 1, 2, 2), Rational(-1, 4));
    expected.add(qtr::unit_key(2, 2, 1, 1), Rational(-1, 4));
    expected.add(qtr::unit_key(2, 2, 2, 2), Rational(1, 4));
    expected.add(qtr::unit_key(1, 2, 2, 1), Rational(1));
    CHECK(r.p == expected);
  }

  TEST_CASE("numerator combines the invariant part and the constant part") {
    const QuasiTrigR r = qtr::r_standard(2);
    const TensorPoly num = qtr::r_numerator(r);
    CHECK(num.coeff(qtr::unit_key(1, 1, 1, 1)) == Poly::parse("1/4*x+1/4*y"));
    CHECK(num.coeff(qtr::unit_key(1, 2, 2, 1)) == Poly::parse("y"));
    CHECK(num.coeff(qtr::unit_key(2, 1, 1, 2)) == Poly::parse("x"));
  }

  TEST_CASE("standard solution satisfies the classical Yang-Baxter equation") {
    for (int n = 2; n <= 3; ++n) {
      const QuasiTrigR r = qtr::r_standard(n);
      CHECK(qtr::cybe_residual(r) == TensorPoly(n, 3));
    }
  }

  TEST_CASE("perturbing the constant part breaks the equation and skew symmetry") {
    QuasiTrigR r = qtr::r_standard(2);
    r.p.add(qtr::unit_key(1, 2, 1, 2), Rational(1));
    CHECK(qtr::cybe_residual(r) != TensorPoly(2, 3));
    CHECK_FALSE(qtr::check_skew(r));
  }

  TEST_CASE("standard solution is skew in the quasi-trigonometric sense") {
    for (int n = 2; n <= 4; ++n) {
      CHECK(qtr::check_skew(qtr::r_standard(n)));
    }
  }

  TEST_CASE("nondegeneracy holds for the standard solution at generic points") {
    const QuasiTrigR r = qtr::r_standard(2);
    CHECK(qtr::nondegenerate_at(r, Rational(1), Rational(2)));
    CHECK(qtr::nondegenerate_at(r, Rational(1), Rational(3)));
    CHECK(qtr::nondegenerate_at(r, Rational(2), Rational(5)));
    CHECK(qtr::nondegenerate_at(qtr::r_standard(3), Rational(1), Rational(2)));
    // At x0 = 0 the evaluation reduces to the constant part alone, which is
    // singular for the standard solution: the verdict depends on the point.
    CHECK_FALSE(qtr::nondegenerate_at(r, Rational(0), Rational(1)));
  }

  TEST_CASE("nondegeneracy fails when the evaluation collapses to zero") {
    // With constant part equal to minus the invariant tensor, evaluating at
    // (x0, y0) = (1, 2) gives 1/(2-1) * gamma - gamma = 0, which has rank 0.
    QuasiTrigR r{2, Poly(Rational(-1)) * qtr::casimir(2)};
    CHECK_FALSE(qtr::nondegenerate_at(r, Rational(1), Rational(2)));
  }

  TEST_CASE("nondegeneracy test rejects evaluation on the pole") {
    const QuasiTrigR r = qtr::r_standard(2);
    CHECK_THROWS_AS(qtr::nondegenerate_at(r, Rational(3), Rational(3)),
                    std::invalid_argument);
  }

  TEST_CASE("cobracket of a constant matrix polynomial is polynomial") {
    const QuasiTrigR r = qtr::r_standard(2);
    PolyMat h(2, 2);
    h(0, 0) = Poly(1);
    h(1, 1) = Poly(-1);
    const TensorPoly delta = qtr::cobracket(r, h);
    // [h x 1 + 1 x h, N] with N built from gamma and the standard constant
    // part: the invariant tensor commutes, so only the wedge-like part of the
    // constant term contributes, and it is h-invariant of weight zero.
    CHECK(delta == two_leg_zero(2));
  }

  TEST_CASE("cobracket of a linear matrix polynomial matches a hand expansion") {
    const QuasiTrigR r = qtr::r_standard(2);
    PolyMat p(2, 2);
    p(0, 1) = Poly::variable(Var::z);  // P(z) = z * e_{12}
    const TensorPoly delta = qtr::cobracket(r, p);

    TensorPoly expected(2, 2);
    const Poly a = Poly::parse("1/2*x1+x2");   // coefficient of e x h
    const Poly b = Poly::parse("-x1-1/2*x2");  // coefficient of h x e
    expected.add(qtr::unit_key(1, 2, 1, 1), a);
    expected.add(qtr::unit_key(1, 2, 2, 2), Poly(0) - a);
    expected.add(qtr::unit_key(1, 1, 1, 2), b);
    expected.add(qtr::unit_key(2, 2, 1, 2), Poly(0) - b);
    CHECK(delta == expected);
  }

  TEST_CASE("co-Jacobi identity holds for sample matrix polynomials") {
    const QuasiTrigR r = qtr::r_standard(2);
    PolyMat h(2, 2);
    h(0, 0) = Poly(1);
    h(1, 1) = Poly(-1);
    CHECK(qtr::cojacobi_sum(r, h) == TensorPoly(2, 3));

    PolyMat p(2, 2);
    p(0, 1) = Poly::variable(Var::z);
    CHECK(qtr::cojacobi_sum(r, p) == TensorPoly(2, 3));
  }

  TEST_CASE("gauge transform by the identity is a no-op") {
    const QuasiTrigR r = qtr::r_standard(3);
    RatMat id = RatMat::Zero(3, 3);
    for (int i = 0; i < 3; ++i) id(i, i) = Rational(1);
    const QuasiTrigR g = qtr::gauge_constant(r, id);
    CHECK(g.p == r.p);
  }

  TEST_CASE("gauge transforms preserve the equation and skew symmetry") {
    const QuasiTrigR r = qtr::r_standard(2);
    RatMat g = RatMat::Zero(2, 2);
    g(0, 0) = Rational(2);
    g(0, 1) = Rational(1);
    g(1, 1) = Rational(1, 3);
    const QuasiTrigR rg = qtr::gauge_constant(r, g);
    CHECK(rg.p != r.p);
    CHECK(qtr::cybe_residual(rg) == TensorPoly(2, 3));
    CHECK(qtr::check_skew(rg));
  }

  TEST_CASE("gauge transform rejects singular matrices") {
    const QuasiTrigR r = qtr::r_standard(2);
    RatMat g = RatMat::Zero(2, 2);
    g(0, 0) = Rational(1);
    g(1, 0) = Rational(2);
    CHECK_THROWS_AS(qtr::gauge_constant(r, g), std::invalid_argument);
    CHECK_THROWS_AS(qtr::gauge_constant(r, RatMat::Zero(3, 3)),
                    std::invalid_argument);
  }
}
