#include <cmath>
#include <complex>

#include "doctest.h"

#include "gaussrr/laurent.hpp"
#include "gaussrr/rng.hpp"

using namespace gaussrr;

namespace {

ExponentVector exps2(int a, int b) {
  ExponentVector e(2);
  e << a, b;
  return e;
}

TorusPoint point2(Complex a, Complex b) {
  Eigen::VectorXcd p(2);
  p << a, b;
  return TorusPoint(p);
}

}  // namespace

TEST_CASE("parse: direct readings") {
  const LaurentPolynomial f = parse("1 + x*y^-2", 2);
  REQUIRE(f.term_count() == 2);
  CHECK(f.terms().at(exps2(0, 0)) == Complex(1.0));
  CHECK(f.terms().at(exps2(1, -2)) == Complex(1.0));

  const LaurentPolynomial zero = parse("2*x - 2*x", 1);
  CHECK(zero.is_zero());

  const LaurentPolynomial g = parse("1+x+y", 2);
  REQUIRE(g.term_count() == 3);
  CHECK(g.terms().count(exps2(0, 0)) == 1);
  CHECK(g.terms().count(exps2(1, 0)) == 1);
  CHECK(g.terms().count(exps2(0, 1)) == 1);
}

TEST_CASE("parse: coefficients, implicit products, parentheses") {
  CHECK(parse("2x", 1) == parse("2*x", 1));
  CHECK(parse("(1+x)*(1+y)", 2) == parse("1+x+y+x*y", 2));
  CHECK(parse("-x + 3", 1) == parse("3 - x", 1));
  CHECK(parse("2.5e-3", 1).terms().begin()->second == Complex(2.5e-3));
  CHECK(parse("3i*x", 1).terms().begin()->second == Complex(0.0, 3.0));
  CHECK(parse("(2+3i)*x", 1).terms().begin()->second == Complex(2.0, 3.0));
  CHECK(parse("x^2*x^-2", 1) == parse("1", 1));
}

TEST_CASE("parse: univariate input accepts any single-letter name") {
  CHECK(parse("z^2-3z+2", 1) == parse("x^2-3x+2", 1));
  CHECK(parse("w + y", 1) == parse("2*x", 1));
}

TEST_CASE("parse: errors carry positions") {
  CHECK_THROWS_AS(parse("(bad", 2), ParseError);
  CHECK_THROWS_AS(parse("", 2), ParseError);
  CHECK_THROWS_AS(parse("1 +", 2), ParseError);
  CHECK_THROWS_AS(parse("z", 2), ParseError);   // axis 3rd > dimension 2
  CHECK_THROWS_AS(parse("x3", 2), ParseError);  // indexed var out of range
  CHECK_THROWS_AS(parse("x0", 2), ParseError);
  CHECK_THROWS_AS(parse("x^99", 1), ParseError);  // exponent cap
  try {
    parse("1 + @", 2);
    FAIL("expected ParseError");
  } catch (const ParseError& error) {
    CHECK(error.position() == 4);
  }
}

TEST_CASE("parse: indexed variables") {
  const LaurentPolynomial f = parse("x1 + 2*x2 - x5", 5);
  CHECK(f.term_count() == 3);
  CHECK(parse("x1+x2", 2) == parse("x+y", 2));
}

TEST_CASE("coefficient pruning") {
  CHECK(parse("1 + 1e-20*x", 1) == parse("1", 1));
  CHECK_FALSE(parse("1e-20 + 1e-21*x", 1).is_zero());  // relative, not absolute
}

TEST_CASE("format round-trips and canonical order") {
  for (const char* text : {"1+x+y", "x^-1 + y", "2 - 3i*x*y + x^2", "x^-2*y^-1 + x",
                           "1 + x + y + 3*x*y", "0.5*x - 0.25*y^3"}) {
    const LaurentPolynomial f = parse(text, 2);
    CHECK(parse(format(f), 2) == f);
    CHECK(format(parse(format(f), 2)) == format(f));
  }
  CHECK(format(parse("y + x + 1", 2)) == "1 + x + y");
  CHECK(format(parse("1+x*y^-2", 2)) == "x*y^-2 + 1");  // graded order: total degree -1 first
}

TEST_CASE("evaluate: spec values and underflow guard") {
  CHECK(evaluate(parse("1+x+y", 2), point2(1.0, 1.0)) == Complex(3.0));
  {
    Eigen::VectorXcd p(1);
    p << Complex(2.0);
    CHECK(evaluate(parse("x^-1", 1), TorusPoint(p)) == Complex(0.5));
  }
  CHECK(std::abs(evaluate(parse("1+x+y", 2), point2(-2.0, 1.0))) == 0.0);
  {
    Eigen::VectorXcd p(1);
    p << Complex(1e-301);
    CHECK_THROWS_AS(evaluate(parse("x^-1", 1), TorusPoint(p)), std::domain_error);
    CHECK(evaluate(parse("x", 1), TorusPoint(p)) == Complex(1e-301));  // guard is for reciprocals
  }
}

TEST_CASE("torus points require nonzero coordinates") {
  Eigen::VectorXcd p(2);
  p << Complex(1.0), Complex(0.0);
  CHECK_THROWS_AS(TorusPoint{p}, std::invalid_argument);
}

TEST_CASE("log_derivative: spec examples") {
  CHECK(log_derivative(parse("1+x+y", 2), 0) == parse("x", 2));
  CHECK(log_derivative(parse("x^-1", 1), 0) == parse("-x^-1", 1));
  CHECK(log_derivative(parse("1+x+y+x*y", 2), 1) == parse("y + x*y", 2));
}

TEST_CASE("log_derivative matches finite differences") {
  Rng rng(2026);
  const LaurentPolynomial f = parse("2 + 3*x - x*y^-2 + 0.5*x^2*y + 4i*y^3", 2);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd p(2);
    p << Complex(1.0 + rng.uniform01(), rng.uniform01() - 0.5),
        Complex(1.0 + rng.uniform01(), rng.uniform01() - 0.5);
    const TorusPoint z(p);
    for (int axis = 0; axis < 2; ++axis) {
      const double h = 1e-7 * std::abs(p(axis));
      Eigen::VectorXcd hi = p, lo = p;
      hi(axis) += h;
      lo(axis) -= h;
      const Complex numeric =
          p(axis) * (evaluate(f, TorusPoint(hi)) - evaluate(f, TorusPoint(lo))) / (2.0 * h);
      const Complex exact = evaluate(log_derivative(f, axis), z);
      CHECK(std::abs(numeric - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("clear_denominators: spec examples and zero-set preservation") {
  {
    const ClearedForm cf = clear_denominators(parse("x^-1 + y", 2));
    CHECK(cf.poly == parse("1 + x*y", 2));
    CHECK(cf.shift(0) == 1);
    CHECK(cf.shift(1) == 0);
  }
  {
    const ClearedForm cf = clear_denominators(parse("1+x+y", 2));
    CHECK(cf.poly == parse("1+x+y", 2));
    CHECK(cf.shift.isZero());
  }
  {
    const ClearedForm cf = clear_denominators(parse("x^-2*y^-1 + x", 2));
    CHECK(cf.poly == parse("1 + x^3*y", 2));
    CHECK(cf.shift(0) == 2);
    CHECK(cf.shift(1) == 1);
  }
  // Torus zero sets agree: g(p) = p^shift * f(p).
  Rng rng(7);
  const LaurentPolynomial f = parse("x^-2*y^-1 + x - 3*y^2", 2);
  const ClearedForm cf = clear_denominators(f);
  for (int trial = 0; trial < 10; ++trial) {
    const TorusPoint p = point2(rng.complex_normal(), rng.complex_normal());
    Complex monomial(1.0);
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < cf.shift(i); ++k) monomial *= p[i];
    }
    CHECK(std::abs(evaluate(cf.poly, p) - monomial * evaluate(f, p)) <=
          1e-10 * std::max(1.0, std::abs(monomial * evaluate(f, p))));
  }
}

TEST_CASE("substitute: spec examples, unimodularity, invertibility") {
  Eigen::MatrixXi id1 = Eigen::MatrixXi::Identity(1, 1);
  Eigen::VectorXcd one1(1);
  one1 << Complex(1.0);
  Eigen::VectorXcd two1(1);
  two1 << Complex(2.0);
  CHECK(substitute(parse("1+x", 1), id1, TorusPoint(one1)) == parse("1+x", 1));
  CHECK(substitute(parse("1+x", 1), id1, TorusPoint(two1)) == parse("1+2*x", 1));

  Eigen::MatrixXi shear(2, 2);
  shear << 1, 1, 0, 1;
  CHECK(substitute(parse("1+x+y", 2), shear, point2(1.0, 1.0)) == parse("1 + x + x*y", 2));

  Eigen::MatrixXi singular(2, 2);
  singular << 1, 1, 1, 1;
  CHECK_THROWS_AS(substitute(parse("1+x+y", 2), singular, point2(1.0, 1.0)),
                  std::invalid_argument);

  Eigen::MatrixXi doubles2 = 2 * Eigen::MatrixXi::Identity(2, 2);  // det 4: rejected
  CHECK_THROWS_AS(substitute(parse("1+x+y", 2), doubles2, point2(1.0, 1.0)),
                  std::invalid_argument);

  // Round trip through M and M^{-1} (both unimodular).
  Eigen::MatrixXi m(2, 2);
  m << 2, 1, 1, 1;
  Eigen::MatrixXi minv(2, 2);
  minv << 1, -1, -1, 2;
  const LaurentPolynomial f = parse("1 + 2*x - x*y^-1 + 3*x^2*y", 2);
  CHECK(substitute(substitute(f, m, point2(1.0, 1.0)), minv, point2(1.0, 1.0)) == f);
}

TEST_CASE("integer determinant") {
  Eigen::MatrixXi m(3, 3);
  m << 2, 0, 1, 1, 1, 0, 0, 3, 1;
  CHECK(integer_determinant(m) == 5);
  CHECK(integer_determinant(Eigen::MatrixXi::Identity(4, 4)) == 1);
}

TEST_CASE("arithmetic operators") {
  const LaurentPolynomial a = parse("1+x", 2);
  const LaurentPolynomial b = parse("1+y", 2);
  CHECK(a * b == parse("1+x+y+x*y", 2));
  CHECK(a + b == parse("2+x+y", 2));
  CHECK(a - a == LaurentPolynomial(2));
  CHECK(Complex(3.0) * a == parse("3+3*x", 2));
  CHECK((a - b) * (a + b) == a * a - b * b);
}

TEST_CASE("total_degree and support") {
  CHECK(LaurentPolynomial(2).total_degree() == -1);
  CHECK(parse("5", 2).total_degree() == 0);
  CHECK(parse("x*y^-2 + x", 2).total_degree() == 1);
  CHECK(parse("1+x+y", 2).support().size() == 3);
}
