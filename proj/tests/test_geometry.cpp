#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "qtr/geometry.hpp"
#include "qtr/lie.hpp"
#include "qtr/order.hpp"
#include "qtr/quasitrig.hpp"
#include "qtr/shift.hpp"
#include "qtr/tensor.hpp"

using qtr::BlockShape;
using qtr::ClearedValue;
using qtr::IndexPair;
using qtr::PolyMat;
using qtr::QuasiTrigR;
using qtr::RatMat;
using qtr::Rational;
using qtr::RSharpEntry;
using qtr::ShiftData;
using qtr::SolSpace;
using qtr::Var;
using Poly = qtr::Poly;

namespace {

Poly xv() { return Poly::variable(Var::x); }
Poly yv() { return Poly::variable(Var::y); }
Poly zv() { return Poly::variable(Var::z); }

PolyMat zero_mat(int n) {
  PolyMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Poly();
  return m;
}

PolyMat lift(const RatMat& m) {
  PolyMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = Poly(m(i, j));
  return out;
}

// Walk helpers used to spell out the frozen per-root preimage formulas.
RatMat unit_at(int n, IndexPair p) { return qtr::unit_matrix(n, p.first, p.second); }

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("block shapes require coprime positive parts") {
    CHECK_NOTHROW(BlockShape(1, 1));
    CHECK_NOTHROW(BlockShape(3, 2));
    CHECK_NOTHROW(BlockShape(5, 7));
    CHECK(BlockShape(3, 2).n == 5);
    CHECK_THROWS_AS(BlockShape(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(BlockShape(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(BlockShape(-1, 2), std::invalid_argument);
    // The recursive gluing construction is certified only up to n = 12.
    CHECK_THROWS_AS(qtr::make_K(BlockShape(5, 8)), std::invalid_argument);
  }

  TEST_CASE("gluing matrix matches the closed block form") {
    // make_K itself recomputes the recursion against the closed form and
    // throws on disagreement, so a successful call is already a cross-check.
    const RatMat k11 = qtr::make_K(BlockShape(1, 1));
    CHECK(k11(0, 1) == 1);
    CHECK(k11(1, 0) == 1);
    CHECK(k11(0, 0) == 0);

    const RatMat k21 = qtr::make_K(BlockShape(2, 1));
    // Closed form [[0, I_c],[I_d, 0]]: K(i, d+i) = 1 and K(c+j, j) = 1.
    CHECK(k21(0, 1) == 1);
    CHECK(k21(1, 2) == 1);
    CHECK(k21(2, 0) == 1);

    for (auto [c, d] : {std::pair{1, 2}, {3, 2}, {2, 5}, {5, 7}, {11, 1}}) {
      const BlockShape shape(c, d);
      const RatMat k = qtr::make_K(shape);
      const RatMat j = qtr::make_J(shape);
      RatMat prod = k * j;
      for (int a = 0; a < shape.n; ++a)
        for (int b = 0; b < shape.n; ++b)
          CHECK(prod(a, b) == (a == b ? Rational(1) : Rational(0)));
    }
  }

  TEST_CASE("block swap is conjugation by the gluing matrix") {
    // sharp moves unit matrices exactly as the backward index shift does.
    for (auto [n, c] : {std::pair{3, 1}, {3, 2}, {5, 2}}) {
      const BlockShape shape(c, n - c);
      const ShiftData s(n, c);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          const RatMat moved = qtr::sharp(shape, unit_at(n, {i, j}));
          CHECK(moved == qtr::kappa_matrix(s, unit_at(n, {i, j})));
        }
    }
    // For n = 2 the swap exchanges the two off-diagonal units.
    const BlockShape shape2(1, 1);
    CHECK(qtr::sharp(shape2, unit_at(2, {1, 2})) == unit_at(2, {2, 1}));
    CHECK(qtr::sharp(shape2, unit_at(2, {2, 1})) == unit_at(2, {1, 2}));
  }

  TEST_CASE("solution spaces have dimension n^2 - 1") {
    for (auto [c, d] :
         {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 5}, {3, 4}}) {
      const SolSpace sol = qtr::sol_space(BlockShape(c, d));
      const int n = c + d;
      CHECK(static_cast<int>(sol.basis.size()) == n * n - 1);
      for (const PolyMat& f : sol.basis)
        CHECK(qtr::in_sol_space(sol.shape, f));
    }
  }

  TEST_CASE("membership rejects profile and constraint violations") {
    const BlockShape shape(1, 2);
    const int n = 3;

    // A bare constant upper-right entry breaks the coupling constraint.
    CHECK_FALSE(qtr::in_sol_space(shape, lift(unit_at(n, {1, 2}))));

    // Upper-right entries must not depend on z.
    PolyMat zb = zero_mat(n);
    zb(0, 1) = zv();
    CHECK_FALSE(qtr::in_sol_space(shape, zb));

    // Degree 2 is reserved for the lower-left block.
    PolyMat deep = zero_mat(n);
    deep(1, 2) = zv().pow(2);
    CHECK_FALSE(qtr::in_sol_space(shape, deep));

    PolyMat deeper = zero_mat(n);
    deeper(2, 0) = zv().pow(3);
    CHECK_FALSE(qtr::in_sol_space(shape, deeper));

    // Foreign variables are rejected.
    PolyMat foreign = zero_mat(n);
    foreign(1, 0) = yv();
    CHECK_FALSE(qtr::in_sol_space(shape, foreign));

    // A trace is not allowed either.
    PolyMat traced = zero_mat(n);
    traced(0, 0) = zv();
    CHECK_FALSE(qtr::in_sol_space(shape, traced));

    // The zero matrix belongs.
    CHECK(qtr::in_sol_space(shape, zero_mat(n)));
  }

  TEST_CASE("residue and evaluation keep their divisors explicit") {
    PolyMat f = zero_mat(2);
    f(0, 1) = xv();
    f(1, 0) = xv() * zv() - zv().pow(2);
    const ClearedValue r = qtr::res_map(f);
    CHECK(r.divisor == xv());
    CHECK(r.numerator(0, 1) == xv());
    CHECK(r.numerator(1, 0).is_zero());
    const ClearedValue e = qtr::ev_map(f);
    CHECK(e.divisor == yv() - xv());
    CHECK(e.numerator(0, 1) == xv());
    CHECK(e.numerator(1, 0) == xv() * yv() - yv().pow(2));
  }

  TEST_CASE("residue preimage reproduces diagonal shift elements") {
    // res^{-1}(q_i) = z tau(w_i) - x w_i, for every shape tested.
    for (auto [n, c] : {std::pair{3, 1}, {3, 2}, {4, 1}, {5, 2}}) {
      const ShiftData s(n, c);
      const qtr::CartanShiftBasis cartan = qtr::cartan_shift_basis(s);
      for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(n); ++i) {
        const PolyMat f = qtr::res_inverse_explicit(s, cartan.q[i]);
        PolyMat expect = zero_mat(n);
        const RatMat tw = qtr::tau_matrix(s, cartan.w[i]);
        for (int a = 0; a < n; ++a)
          expect(a, a) = zv() * Poly(tw(a, a)) - xv() * Poly(cartan.w[i](a, a));
        CHECK(f == expect);
      }
    }
  }

  TEST_CASE("residue preimage of a negative root walks the backward orbit") {
    // res^{-1}(e_beta) = z e_beta + (z - x) sum_{l=1}^{t} e_{kappa^l(beta)}.
    for (auto [n, c] : {std::pair{3, 1}, {3, 2}, {5, 2}}) {
      const ShiftData s(n, c);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j < i; ++j) {
          const int t = *qtr::exit_times(s, {i, j}).t;
          PolyMat expect = zero_mat(n);
          expect(i - 1, j - 1) = zv();
          IndexPair cur{i, j};
          for (int l = 1; l <= t; ++l) {
            cur = qtr::kappa(s, cur);
            expect(cur.first - 1, cur.second - 1) = zv() - xv();
          }
          CHECK(qtr::res_inverse_explicit(s, unit_at(n, {i, j})) == expect);
        }
    }
  }

  TEST_CASE("residue preimage of a positive root includes the wrap walk") {
    // For alpha positive with kappa(alpha) negative the preimage is
    //   x e_alpha + (x-z) sum_{l=1}^{p-1} e_{tau^l}
    //   + z(x-z) e_{tau^p} - x(x-z) sum_{l=1}^{t(kappa alpha)+1} e_{kappa^l},
    // overlapping terms combining.  Spot-check the worked sl_3 case ...
    {
      const ShiftData s(3, 1);
      const PolyMat f = qtr::res_inverse_explicit(s, unit_at(3, {1, 2}));
      PolyMat expect = zero_mat(3);
      expect(0, 1) = xv();
      expect(1, 2) = xv() - zv();
      expect(2, 0) = Poly(-1) * (xv() - zv()).pow(2);
      CHECK(f == expect);
    }
    // ... and the generic walk for every positive root of a larger shape.
    for (auto [n, c] : {std::pair{4, 3}, {5, 2}}) {
      const ShiftData s(n, c);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          const IndexPair back = qtr::kappa(s, {i, j});
          if (back.first < back.second) continue;  // no wrap part
          const int p = *qtr::exit_times(s, {i, j}).p;
          const int t = *qtr::exit_times(s, back).t;
          PolyMat expect = zero_mat(n);
          expect(i - 1, j - 1) += xv();
          IndexPair fwd{i, j};
          for (int l = 1; l <= p; ++l) {
            fwd = qtr::tau(s, fwd);
            expect(fwd.first - 1, fwd.second - 1) +=
                (l < p) ? xv() - zv() : zv() * (xv() - zv());
          }
          IndexPair bwd{i, j};
          for (int l = 1; l <= t + 1; ++l) {
            bwd = qtr::kappa(s, bwd);
            expect(bwd.first - 1, bwd.second - 1) +=
                Poly(-1) * xv() * (xv() - zv());
          }
          CHECK(qtr::res_inverse_explicit(s, unit_at(n, {i, j})) == expect);
        }
    }
  }

  TEST_CASE("residue preimage of zero is zero") {
    const ShiftData s(3, 1);
    const PolyMat f = qtr::res_inverse_explicit(s, RatMat::Zero(3, 3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(f(i, j).is_zero());
  }

  TEST_CASE("closed preimage agrees with the generic solver") {
    for (auto [n, c] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 3}}) {
      const ShiftData s(n, c);
      for (const RatMat& b : qtr::basis_matrices(n))
        CHECK(qtr::res_inverse_explicit(s, b) == qtr::res_inverse_solved(s, b));
    }
  }

  TEST_CASE("preimage inputs must be traceless") {
    const ShiftData s(3, 1);
    RatMat bad = RatMat::Zero(3, 3);
    bad(0, 0) = 1;
    CHECK_THROWS_AS(qtr::res_inverse_explicit(s, bad), std::invalid_argument);
    CHECK_THROWS_AS(qtr::res_inverse_solved(s, bad), std::invalid_argument);
  }

  TEST_CASE("closed table rows match the pipeline and the frozen sl_3 rows") {
    // rsharp_closed_table cross-checks every row against ev(res^{-1}(g))
    // internally, so construction succeeding is the main assertion.
    for (auto [n, c] : {std::pair{2, 1}, {3, 1}, {3, 2}, {4, 3}, {5, 2}}) {
      const std::vector<RSharpEntry> table =
          qtr::rsharp_closed_table(ShiftData(n, c));
      CHECK(static_cast<int>(table.size()) == n * n - 1);
    }

    const std::vector<RSharpEntry> table = qtr::rsharp_closed_table(ShiftData(3, 1));
    // Row for e_12 (kappa(e_12) is negative): the wrap walk overlaps the
    // forward walk and the last coefficient combines to -(y-x)^2.
    bool saw_e12 = false, saw_e32 = false;
    for (const RSharpEntry& row : table) {
      if (row.g == unit_at(3, {1, 2})) {
        saw_e12 = true;
        PolyMat expect = zero_mat(3);
        expect(0, 1) = xv();
        expect(1, 2) = xv() - yv();
        expect(2, 0) = Poly(-1) * (yv() - xv()).pow(2);
        CHECK(row.numerator == expect);
      }
      if (row.g == unit_at(3, {3, 2})) {
        saw_e32 = true;
        PolyMat expect = zero_mat(3);
        expect(2, 1) = yv();
        expect(1, 0) = yv() - xv();
        CHECK(row.numerator == expect);
      }
    }
    CHECK(saw_e12);
    CHECK(saw_e32);
  }

  TEST_CASE("geometric assembly reproduces the combinatorial solution") {
    for (auto [n, c] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
      const ShiftData s(n, c);
      const QuasiTrigR geo = qtr::geometric_r(s);
      const QuasiTrigR comb = qtr::build_rc(s);
      CHECK(geo.p == comb.p);
    }
  }

  TEST_CASE("geometric assembly agrees with the order route") {
    const ShiftData s(3, 2);
    const QuasiTrigR geo = qtr::geometric_r(s);
    const QuasiTrigR ord = qtr::r_from_order(qtr::order_w_cd(s));
    CHECK(geo.p == ord.p);
  }

  TEST_CASE("geometric solutions satisfy the equation and skew symmetry") {
    const ShiftData s(4, 3);
    const QuasiTrigR r = qtr::geometric_r(s);
    CHECK(qtr::cybe_residual(r).terms().empty());
    CHECK(qtr::check_skew(r));
  }
}
