#include <doctest.h>

#include <functional>

#include "dirackit/cartan.hpp"
#include "dirackit/expr.hpp"
#include "dirackit/sample.hpp"

using namespace dirackit;

namespace {

const Chart c3({"x", "y", "z"});
const Chart c2({"x", "y"});

RatFun random_scalar(SampleStream& s, const Chart& c) {
  Poly p = Poly::zero(c);
  Mono m(c.dim(), 0);
  p.add_term(m, s.small_rational(3));
  for (std::size_t i = 0; i < c.dim(); ++i) {
    m.assign(c.dim(), 0);
    m[i] = 1;
    p.add_term(m, s.small_rational(3));
    m[i] = 2;
    p.add_term(m, s.small_rational(3));
  }
  return RatFun(p, Poly::one(c));
}

TensorField random_field(SampleStream& s, const Chart& c, TensorKind k,
                         unsigned degree) {
  TensorField t = TensorField::zero(c, k, degree);
  std::vector<std::uint8_t> idx(degree);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                          std::size_t from) {
    if (pos == degree) {
      t.add_signed(idx, random_scalar(s, c));
      return;
    }
    for (std::size_t i = from; i < c.dim(); ++i) {
      idx[pos] = static_cast<std::uint8_t>(i);
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return t;
}

TensorField so3_bivector() {
  TensorField pi = TensorField::zero(c3, TensorKind::Multivector, 2);
  pi.add_signed({0, 1}, parse_expr("z", c3));
  pi.add_signed({1, 2}, parse_expr("x", c3));
  pi.add_signed({2, 0}, parse_expr("y", c3));
  return pi;
}

TensorField log_bivector() {
  TensorField pi = TensorField::zero(c2, TensorKind::Multivector, 2);
  pi.add_signed({0, 1}, parse_expr("x", c2));
  return pi;
}

}  // namespace

TEST_CASE("exterior derivative squares to zero") {
  SampleStream s(3);
  for (int trial = 0; trial < 10; ++trial) {
    TensorField w = random_field(s, c3, TensorKind::Form, 1);
    CHECK(exterior_derivative(exterior_derivative(w)).is_zero());
    RatFun f = random_scalar(s, c3);
    CHECK(exterior_derivative(differential(f)).is_zero());
  }
  TensorField xdy = TensorField::one_form(
      c2, {RatFun::zero(c2), parse_expr("x", c2)});
  TensorField d = exterior_derivative(xdy);
  CHECK(d.coefficient({0, 1}) == RatFun::one(c2));
}

TEST_CASE("interior products act as left derivations") {
  TensorField dx = TensorField::one_form(
      c2, {RatFun::one(c2), RatFun::zero(c2)});
  TensorField ddx = TensorField::vector_field(
      c2, {RatFun::one(c2), RatFun::zero(c2)});
  TensorField pi = TensorField::zero(c2, TensorKind::Multivector, 2);
  pi.add_signed({0, 1}, RatFun::one(c2));
  TensorField omega = TensorField::zero(c2, TensorKind::Form, 2);
  omega.add_signed({0, 1}, RatFun::one(c2));

  // i_dx (d/dx ^ d/dy) = d/dy and i_{d/dx} (dx ^ dy) = dy.
  CHECK(interior_product(dx, pi).component_vector()[1] == RatFun::one(c2));
  CHECK(interior_product(ddx, omega).component_vector()[1] ==
        RatFun::one(c2));
}

TEST_CASE("Cartan magic formula") {
  SampleStream s(7);
  for (int trial = 0; trial < 8; ++trial) {
    TensorField X = random_field(s, c3, TensorKind::Multivector, 1);
    for (unsigned deg = 1; deg <= 2; ++deg) {
      TensorField w = random_field(s, c3, TensorKind::Form, deg);
      TensorField lhs = lie_derivative(X, w);
      TensorField rhs = interior_product(X, exterior_derivative(w)) +
                        exterior_derivative(interior_product(X, w));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("Schouten bracket recovers the Lie bracket and its identities") {
  SampleStream s(13);
  // [x d/dy, y d/dx] = x d/dx - y d/dy.
  TensorField a = TensorField::vector_field(
      c2, {RatFun::zero(c2), parse_expr("x", c2)});
  TensorField b = TensorField::vector_field(
      c2, {parse_expr("y", c2), RatFun::zero(c2)});
  TensorField lie = schouten_bracket(a, b);
  CHECK(lie.component_vector()[0] == parse_expr("x", c2));
  CHECK(lie.component_vector()[1] == parse_expr("-y", c2));

  for (int trial = 0; trial < 6; ++trial) {
    TensorField X = random_field(s, c3, TensorKind::Multivector, 1);
    TensorField Y = random_field(s, c3, TensorKind::Multivector, 1);
    TensorField Z = random_field(s, c3, TensorKind::Multivector, 1);
    // Jacobi for vector fields.
    TensorField jac = schouten_bracket(schouten_bracket(X, Y), Z) +
                      schouten_bracket(schouten_bracket(Y, Z), X) +
                      schouten_bracket(schouten_bracket(Z, X), Y);
    CHECK(jac.is_zero());

    TensorField P = random_field(s, c3, TensorKind::Multivector, 2);
    TensorField Q = random_field(s, c3, TensorKind::Multivector, 2);
    // Graded symmetry: [P, Q] = -(-1)^{(p-1)(q-1)} [Q, P].
    CHECK(schouten_bracket(P, Q) == schouten_bracket(Q, P));
    CHECK(schouten_bracket(X, P) == -schouten_bracket(P, X));
    // Derivation property in the second slot against a wedge of vectors.
    TensorField lhs = schouten_bracket(X, wedge(Y, Z));
    TensorField rhs = wedge(schouten_bracket(X, Y), Z) +
                      wedge(Y, schouten_bracket(X, Z));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("divergence is a derivation over functions") {
  SampleStream s(17);
  RatFun one = RatFun::one(c3);
  for (int trial = 0; trial < 8; ++trial) {
    TensorField X = random_field(s, c3, TensorKind::Multivector, 1);
    RatFun f = random_scalar(s, c3);
    RatFun lhs = divergence(X * f, one);
    RatFun rhs = f * divergence(X, one) + apply_vector(X, f);
    CHECK((lhs - rhs).is_zero());
  }
  // Weighted volume: div_u X = div X + X(u)/u.
  TensorField X = TensorField::vector_field(
      c3, {parse_expr("x", c3), RatFun::zero(c3), RatFun::zero(c3)});
  RatFun u = parse_expr("x^2", c3);
  CHECK(divergence(X, u) ==
        divergence(X, RatFun::one(c3)) + RatFun::constant(c3, Rational(2)));
}

TEST_CASE("sharp, brackets and the Poisson calculus of x dx^dy") {
  TensorField pi = log_bivector();
  TensorField dx = TensorField::one_form(
      c2, {RatFun::one(c2), RatFun::zero(c2)});
  TensorField dy = TensorField::one_form(
      c2, {RatFun::zero(c2), RatFun::one(c2)});

  // pi# dx = x d/dy, pi# dy = -x d/dx.
  CHECK(sharp(pi, dx).component_vector()[1] == parse_expr("x", c2));
  CHECK(sharp(pi, dy).component_vector()[0] == parse_expr("-x", c2));
  CHECK(bivector_eval(pi, dx, dy) == parse_expr("x", c2));

  // {x, y} = x with the hamiltonian convention X_f = pi# df.
  RatFun x = parse_expr("x", c2), y = parse_expr("y", c2);
  CHECK(apply_vector(hamiltonian_field(pi, x), y) == x);

  // Koszul bracket [dx, dy]_pi = dx; the sharp map is a homomorphism.
  TensorField kz = koszul_bracket(pi, dx, dy);
  CHECK(kz.component_vector()[0] == RatFun::one(c2));
  CHECK(kz.component_vector()[1] == RatFun::zero(c2));
  SampleStream s(19);
  for (int trial = 0; trial < 6; ++trial) {
    TensorField alpha = random_field(s, c2, TensorKind::Form, 1);
    TensorField beta = random_field(s, c2, TensorKind::Form, 1);
    CHECK(sharp(pi, koszul_bracket(pi, alpha, beta)) ==
          schouten_bracket(sharp(pi, alpha), sharp(pi, beta)));
  }
}

TEST_CASE("Lichnerowicz differential squares to zero on functions") {
  TensorField pi = so3_bivector();
  CHECK(schouten_bracket(pi, pi).is_zero());
  SampleStream s(29);
  for (int trial = 0; trial < 6; ++trial) {
    RatFun f = random_scalar(s, c3);
    TensorField df_pi = d_pi(pi, TensorField::scalar(TensorKind::Multivector, f));
    CHECK(d_pi(pi, df_pi).is_zero());
    // d_pi f = -pi# df.
    CHECK(df_pi == -sharp(pi, differential(f)));
  }
}

TEST_CASE("modular vector fields of the corpus bivectors") {
  RatFun one2 = RatFun::one(c2);
  TensorField sympl = TensorField::zero(c2, TensorKind::Multivector, 2);
  sympl.add_signed({0, 1}, one2);
  CHECK(modular_vector_field(sympl, one2).is_zero());

  TensorField logpi = log_bivector();
  TensorField mod = modular_vector_field(logpi, one2);
  CHECK(mod.component_vector()[0] == RatFun::zero(c2));
  CHECK(mod.component_vector()[1] == parse_expr("-1", c2));

  CHECK(modular_vector_field(so3_bivector(), RatFun::one(c3)).is_zero());

  // Volume change u = x^2 shifts by -pi#(du)/u = -(2/x) d/dy.
  TensorField shifted = modular_vector_field(sympl, parse_expr("x^2", c2));
  CHECK(shifted.component_vector()[0] == RatFun::zero(c2));
  CHECK(shifted.component_vector()[1] == parse_expr("-2/x", c2));
}

TEST_CASE("pullbacks and pushforwards") {
  Chart cm({"u", "v"});
  PolyMap phi(cm, c2,
              {Poly::variable(cm, 0),
               Poly::variable(cm, 0) * Poly::variable(cm, 1)});
  // phi(u, v) = (u, uv): phi* (x dy) = u d(uv) = uv du + u^2 dv.
  TensorField xdy = TensorField::one_form(
      c2, {RatFun::zero(c2), parse_expr("x", c2)});
  TensorField pulled = pullback_form(phi, xdy);
  CHECK(pulled.component_vector()[0] == parse_expr("u*v", cm));
  CHECK(pulled.component_vector()[1] == parse_expr("u^2", cm));
  // d commutes with pullback.
  CHECK(exterior_derivative(pulled) ==
        pullback_form(phi, exterior_derivative(xdy)));

  TensorField X = TensorField::vector_field(
      cm, {parse_expr("1", cm), parse_expr("v", cm)});
  std::vector<Rational> p{Rational(2), Rational(3)};
  // dphi = [[1, 0], [v, u]] at (2, 3): X = (1, 3) maps to (1, 3*1 + 2*3).
  std::vector<Rational> img = pushforward_vector_at(phi, X, p);
  CHECK(img[0] == Rational(1));
  CHECK(img[1] == Rational(9));
}
