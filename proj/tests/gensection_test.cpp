#include <doctest.h>

#include "dirackit/cartan.hpp"
#include "dirackit/expr.hpp"
#include "dirackit/gensection.hpp"
#include "dirackit/sample.hpp"

using namespace dirackit;

namespace {

const Chart c2({"x", "y"});

GenSection random_section(SampleStream& s, const Chart& c) {
  std::vector<RatFun> vec, form;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    Poly p = Poly::zero(c);
    Mono m(c.dim(), 0);
    p.add_term(m, s.small_rational(3));
    for (std::size_t j = 0; j < c.dim(); ++j) {
      m.assign(c.dim(), 0);
      m[j] = 1;
      p.add_term(m, s.small_rational(3));
    }
    vec.push_back(RatFun(p, Poly::one(c)));
    Poly q = Poly::zero(c);
    m.assign(c.dim(), 0);
    q.add_term(m, s.small_rational(3));
    m[i] = 2;
    q.add_term(m, s.small_rational(3));
    form.push_back(RatFun(q, Poly::one(c)));
  }
  return GenSection::make(c, vec, form);
}

RatFun random_scalar(SampleStream& s, const Chart& c) {
  Poly p = Poly::zero(c);
  Mono m(c.dim(), 0);
  p.add_term(m, s.small_rational(3));
  for (std::size_t i = 0; i < c.dim(); ++i) {
    m.assign(c.dim(), 0);
    m[i] = 1;
    p.add_term(m, s.small_rational(3));
  }
  return RatFun(p, Poly::one(c));
}

}  // namespace

TEST_CASE("pairing of generalized sections") {
  GenSection s = GenSection::make(
      c2, {parse_expr("x", c2), RatFun::zero(c2)},
      {RatFun::zero(c2), parse_expr("y", c2)});
  GenSection t = GenSection::make(
      c2, {RatFun::zero(c2), parse_expr("1", c2)},
      {parse_expr("2", c2), RatFun::zero(c2)});
  // <form_s, vec_t> = y and <form_t, vec_s> = 2x; the pairing averages them.
  CHECK(pairing(s, t) == parse_expr("(y + 2*x)/2", c2));
  CHECK(pairing(s, t) == pairing(t, s));
}

TEST_CASE("Courant bracket identities") {
  SampleStream rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    GenSection s = random_section(rng, c2);
    GenSection t = random_section(rng, c2);
    GenSection u = random_section(rng, c2);
    RatFun f = random_scalar(rng, c2);

    // Skew symmetry holds exactly for the antisymmetrized bracket.
    CHECK((courant_bracket(s, t) + courant_bracket(t, s)).is_zero());

    // The anchor intertwines brackets: rho[s, t] = [rho s, rho t].
    CHECK(schouten_bracket(anchor(s), anchor(t)) ==
          anchor(courant_bracket(s, t)));

    // Leibniz up to the pairing defect:
    // [s, f t] = f [s, t] + (rho(s) f) t - <s, t> (0, df).
    GenSection lhs = courant_bracket(s, t * f);
    GenSection rhs = courant_bracket(s, t) * f +
                     t * apply_vector(anchor(s), f) -
                     GenSection::from_form(differential(f)) * pairing(s, t);
    CHECK((lhs - rhs).is_zero());

    // The Jacobiator is the differential of the cyclic pairing average.
    GenSection jac = courant_bracket(courant_bracket(s, t), u) +
                     courant_bracket(courant_bracket(t, u), s) +
                     courant_bracket(courant_bracket(u, s), t);
    RatFun third = RatFun::constant(c2, Rational(1, 3));
    RatFun T = (pairing(courant_bracket(s, t), u) +
                pairing(courant_bracket(t, u), s) +
                pairing(courant_bracket(u, s), t)) *
               third;
    CHECK(jac.vec.is_zero());
    CHECK((jac - GenSection::from_form(differential(T))).is_zero());
  }
}

TEST_CASE("bialgebroid bracket at zero bivector is the Courant bracket") {
  SampleStream rng(31);
  TensorField zero_pi = TensorField::zero(c2, TensorKind::Multivector, 2);
  for (int trial = 0; trial < 6; ++trial) {
    GenSection s = random_section(rng, c2);
    GenSection t = random_section(rng, c2);
    CHECK(bialgebroid_bracket(s, t, zero_pi) == courant_bracket(s, t));
  }
}

TEST_CASE("bialgebroid bracket on pure forms is the Koszul bracket") {
  TensorField pi = TensorField::zero(c2, TensorKind::Multivector, 2);
  pi.add_signed({0, 1}, parse_expr("x", c2));
  TensorField dx = TensorField::one_form(
      c2, {RatFun::one(c2), RatFun::zero(c2)});
  TensorField dy = TensorField::one_form(
      c2, {RatFun::zero(c2), RatFun::one(c2)});
  GenSection s = GenSection::from_form(dx);
  GenSection t = GenSection::from_form(dy);
  GenSection br = bialgebroid_bracket(s, t, pi);
  CHECK(br.vec.is_zero());
  CHECK(br.form == koszul_bracket(pi, dx, dy));

  // Twisted anchor: rho(X + a) = X + pi# a.
  GenSection mixed = GenSection::make(
      c2, {parse_expr("y", c2), RatFun::zero(c2)},
      {RatFun::one(c2), RatFun::zero(c2)});
  TensorField tw = anchor(mixed, pi);
  CHECK(tw.component_vector()[0] == parse_expr("y", c2));
  CHECK(tw.component_vector()[1] == parse_expr("x", c2));
}
