#include <doctest.h>

#include "dirackit/error.hpp"
#include "dirackit/poly.hpp"
#include "dirackit/sample.hpp"

using namespace dirackit;

namespace {

const Chart c2({"x", "y"});

Poly X() { return Poly::variable(c2, 0); }
Poly Y() { return Poly::variable(c2, 1); }

// Random polynomial of total degree <= 2 with small coefficients.
Poly random_poly(SampleStream& s) {
  Poly p = Poly::zero(c2);
  for (std::uint32_t i = 0; i <= 2; ++i)
    for (std::uint32_t j = 0; i + j <= 2; ++j)
      p.add_term({i, j}, s.small_rational(3));
  return p;
}

}  // namespace

TEST_CASE("ring arithmetic is exact") {
  Poly p = (X() + Y()) * (X() + Y());
  Poly q = X() * X() + X() * Y() * Rational(2) + Y() * Y();
  CHECK(p == q);
  CHECK((p - q).is_zero());
  CHECK(p.total_degree() == 2);
  CHECK((X() - X()).is_zero());
}

TEST_CASE("grlex leading data") {
  // x^2 y and x y^2 have equal total degree; x^2 y wins lexicographically.
  Poly p = X() * X() * Y() + X() * Y() * Y() * Rational(7);
  CHECK(p.leading_mono() == Mono{2, 1});
  CHECK(p.leading_coeff() == Rational(1));
  CHECK(monic(p) == p);
  Poly q = p * Rational(-3);
  CHECK(monic(q) == p);
}

TEST_CASE("constant handling") {
  Poly five = Poly::constant(c2, Rational(5));
  CHECK(five.is_constant());
  CHECK(five.constant_value() == Rational(5));
  CHECK(Poly::one(c2).is_one());
  CHECK_FALSE(X().is_constant());
  CHECK(X().depends_on(0));
  CHECK_FALSE(X().depends_on(1));
}

TEST_CASE("derivative satisfies the Leibniz rule") {
  SampleStream s(11);
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = random_poly(s), g = random_poly(s);
    for (std::size_t v = 0; v < 2; ++v) {
      Poly lhs = (f * g).derivative(v);
      Poly rhs = f.derivative(v) * g + f * g.derivative(v);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("pow and degree bookkeeping") {
  Poly p = (X() + Y()).pow(3);
  CHECK(p.total_degree() == 3);
  CHECK(p.degree_in(0) == 3);
  Poly cube = (X() + Y()) * (X() + Y()) * (X() + Y());
  CHECK(p == cube);
  CHECK(Poly::zero(c2).pow(0) == Poly::one(c2));
}

TEST_CASE("evaluation agrees with substitution by constants") {
  SampleStream s(23);
  for (int trial = 0; trial < 20; ++trial) {
    Poly f = random_poly(s);
    std::vector<Rational> pt{s.small_rational(), s.small_rational()};
    Chart c0({"u"});
    std::vector<Poly> consts{Poly::constant(c0, pt[0]),
                             Poly::constant(c0, pt[1])};
    Poly composed = f.subst(c0, consts);
    CHECK(composed.is_constant());
    CHECK(composed.constant_value() == f.eval(pt));
  }
}

TEST_CASE("substitution composes functorially") {
  // f(x, y) -> f(u + v, u v) evaluated at a point equals evaluating f at the
  // image point.
  Chart cuv({"u", "v"});
  Poly u = Poly::variable(cuv, 0), v = Poly::variable(cuv, 1);
  SampleStream s(37);
  for (int trial = 0; trial < 10; ++trial) {
    Poly f = random_poly(s);
    Poly g = f.subst(cuv, {u + v, u * v});
    std::vector<Rational> pt{s.small_rational(), s.small_rational()};
    Rational x = pt[0] + pt[1], y = pt[0] * pt[1];
    CHECK(g.eval(pt) == f.eval({x, y}));
  }
}

TEST_CASE("exact division round trips") {
  SampleStream s(41);
  for (int trial = 0; trial < 15; ++trial) {
    Poly a = random_poly(s), b = random_poly(s);
    if (b.is_zero()) continue;
    CHECK(divexact(a * b, b) == a);
    Poly q;
    CHECK(try_divexact(a * b, b, &q));
    CHECK(q == a);
  }
  Poly q;
  CHECK_FALSE(try_divexact(X() + Y(), X(), &q));
  CHECK_THROWS_AS(divexact(X() + Y(), X()), Error);
}

TEST_CASE("gcd is monic and divides both arguments") {
  SampleStream s(53);
  for (int trial = 0; trial < 12; ++trial) {
    Poly a = random_poly(s), b = random_poly(s), m = random_poly(s);
    Poly g = gcd(a * m, b * m);
    if (g.is_zero()) {
      CHECK((a * m).is_zero());
      CHECK((b * m).is_zero());
      continue;
    }
    CHECK(g.leading_coeff() == Rational(1));
    Poly q;
    CHECK(try_divexact(a * m, g, &q));
    CHECK(try_divexact(b * m, g, &q));
    // The common factor m divides the gcd.
    if (!m.is_zero()) CHECK(try_divexact(g, monic(m), &q));
  }
}

TEST_CASE("gcd edge cases") {
  CHECK(gcd(Poly::zero(c2), Poly::zero(c2)).is_zero());
  CHECK(gcd(X(), Poly::zero(c2)) == X());
  CHECK(gcd(Poly::constant(c2, Rational(6)), X()) == Poly::one(c2));
  CHECK(gcd(X() * Y(), Y() * Y()) == Y());
}

TEST_CASE("squarefree part strips multiplicities") {
  Poly p = X() + Y(), q = X() - Y();
  Poly sq = squarefree_part(p * p * q);
  CHECK(sq == monic(p * q));
  CHECK(squarefree_part(X() * X() * X()) == X());
}
