#include "dirackit/gensection.hpp"

#include "dirackit/error.hpp"

namespace dirackit {

GenSection::GenSection(TensorField v, TensorField f)
    : vec(std::move(v)), form(std::move(f)) {
  if (vec.kind() != TensorKind::Multivector || vec.degree() != 1 ||
      form.kind() != TensorKind::Form || form.degree() != 1)
    throw Error("gensection: need a vector field and a one-form");
  require_same_chart(vec.chart(), form.chart(), "gensection");
}

GenSection GenSection::zero(const Chart& c) {
  return GenSection(TensorField::zero(c, TensorKind::Multivector, 1),
                    TensorField::zero(c, TensorKind::Form, 1));
}

GenSection GenSection::from_vector(const TensorField& X) {
  return GenSection(X, TensorField::zero(X.chart(), TensorKind::Form, 1));
}

GenSection GenSection::from_form(const TensorField& a) {
  return GenSection(TensorField::zero(a.chart(), TensorKind::Multivector, 1),
                    a);
}

GenSection GenSection::make(const Chart& c, std::vector<RatFun> vec_comps,
                            std::vector<RatFun> form_comps) {
  return GenSection(TensorField::vector_field(c, std::move(vec_comps)),
                    TensorField::one_form(c, std::move(form_comps)));
}

std::vector<RatFun> GenSection::flat() const {
  std::vector<RatFun> out = vec.component_vector();
  std::vector<RatFun> f = form.component_vector();
  out.insert(out.end(), f.begin(), f.end());
  return out;
}

GenSection GenSection::operator+(const GenSection& o) const {
  return GenSection(vec + o.vec, form + o.form);
}

GenSection GenSection::operator-(const GenSection& o) const {
  return GenSection(vec - o.vec, form - o.form);
}

GenSection GenSection::operator*(const RatFun& s) const {
  return GenSection(vec * s, form * s);
}

RatFun pairing(const GenSection& s, const GenSection& t) {
  require_same_chart(s.chart(), t.chart(), "pairing");
  RatFun half = RatFun::constant(s.chart(), Rational(1, 2));
  return (natural_pairing(t.form, s.vec) + natural_pairing(s.form, t.vec)) *
         half;
}

GenSection courant_bracket(const GenSection& s, const GenSection& t) {
  require_same_chart(s.chart(), t.chart(), "courant_bracket");
  RatFun half = RatFun::constant(s.chart(), Rational(1, 2));
  TensorField vec = schouten_bracket(s.vec, t.vec);
  RatFun minus = natural_pairing(s.form, t.vec) -
                 natural_pairing(t.form, s.vec);
  TensorField form = lie_derivative(s.vec, t.form) -
                     lie_derivative(t.vec, s.form) +
                     differential(minus * half);
  return GenSection(std::move(vec), std::move(form));
}

GenSection bialgebroid_bracket(const GenSection& s, const GenSection& t,
                               const TensorField& pi) {
  GenSection out = courant_bracket(s, t);
  if (pi.is_zero()) return out;
  require_same_chart(s.chart(), pi.chart(), "bialgebroid_bracket");
  RatFun half = RatFun::constant(s.chart(), Rational(1, 2));
  RatFun minus = natural_pairing(s.form, t.vec) -
                 natural_pairing(t.form, s.vec);
  TensorField minus_scalar =
      TensorField::scalar(TensorKind::Multivector, minus * half);
  out.vec = out.vec + lie_by_form(pi, s.form, t.vec) -
            lie_by_form(pi, t.form, s.vec) - d_pi(pi, minus_scalar);
  out.form = out.form + koszul_bracket(pi, s.form, t.form);
  return out;
}

TensorField anchor(const GenSection& s) { return s.vec; }

TensorField anchor(const GenSection& s, const TensorField& pi) {
  if (pi.is_zero()) return s.vec;
  return s.vec + sharp(pi, s.form);
}

}  // namespace dirackit
