#include "dirackit/cartan.hpp"

#include "dirackit/error.hpp"

namespace dirackit {

namespace {

// d/d(theta_i) acting from the left: strikes index i from the tuple with
// sign (-1)^m where m is the position of i.
TensorField theta_derivative_left(const TensorField& T, std::uint8_t i) {
  TensorField out = TensorField::zero(T.chart(), T.kind(), T.degree() - 1);
  for (const auto& [idx, c] : T.components()) {
    for (std::size_t m = 0; m < idx.size(); ++m) {
      if (idx[m] != i) continue;
      IndexTuple rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t r = 0; r < idx.size(); ++r)
        if (r != m) rest.push_back(idx[r]);
      out.add_signed(std::move(rest), (m % 2 == 0) ? c : -c);
      break;
    }
  }
  return out;
}

// d/d(theta_i) acting from the right: sign (-1)^{k-1-m}.
TensorField theta_derivative_right(const TensorField& T, std::uint8_t i) {
  TensorField out = TensorField::zero(T.chart(), T.kind(), T.degree() - 1);
  for (const auto& [idx, c] : T.components()) {
    for (std::size_t m = 0; m < idx.size(); ++m) {
      if (idx[m] != i) continue;
      IndexTuple rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t r = 0; r < idx.size(); ++r)
        if (r != m) rest.push_back(idx[r]);
      bool flip = (idx.size() - 1 - m) % 2 != 0;
      out.add_signed(std::move(rest), flip ? -c : c);
      break;
    }
  }
  return out;
}

// Componentwise coordinate derivative; tuples are untouched.
TensorField coordinate_derivative(const TensorField& T, std::size_t i) {
  TensorField out = TensorField::zero(T.chart(), T.kind(), T.degree());
  for (const auto& [idx, c] : T.components()) out.add_signed(idx, c.derivative(i));
  return out;
}

// P * Q = sum_i (right d/d(theta_i) P) ^ (d/dx_i Q). Half of the Schouten
// bracket; the composition is not itself graded skew.
TensorField schouten_compose(const TensorField& P, const TensorField& Q) {
  unsigned deg = P.degree() + Q.degree() - 1;
  TensorField out = TensorField::zero(P.chart(), TensorKind::Multivector, deg);
  if (P.degree() == 0) return out;
  for (std::size_t i = 0; i < P.chart().dim(); ++i) {
    TensorField dP = theta_derivative_right(P, static_cast<std::uint8_t>(i));
    if (dP.is_zero()) continue;
    out = out + wedge(dP, coordinate_derivative(Q, i));
  }
  return out;
}

void require_kind(const TensorField& T, TensorKind k, const char* where) {
  if (T.kind() != k) throw Error(std::string(where) + ": wrong tensor kind");
}

}  // namespace

RatFun apply_vector(const TensorField& X, const RatFun& f) {
  require_kind(X, TensorKind::Multivector, "apply_vector");
  if (X.degree() != 1) throw Error("apply_vector: need a vector field");
  std::vector<RatFun> comps = X.component_vector();
  RatFun out = RatFun::zero(X.chart());
  for (std::size_t i = 0; i < comps.size(); ++i)
    out = out + comps[i] * f.derivative(i);
  return out;
}

RatFun natural_pairing(const TensorField& a, const TensorField& b) {
  if (a.degree() != 1 || b.degree() != 1 || a.kind() == b.kind())
    throw Error("natural_pairing: need a one-form and a vector field");
  std::vector<RatFun> u = a.component_vector();
  std::vector<RatFun> v = b.component_vector();
  RatFun out = RatFun::zero(a.chart());
  for (std::size_t i = 0; i < u.size(); ++i) out = out + u[i] * v[i];
  return out;
}

TensorField differential(const RatFun& f) {
  std::vector<RatFun> comps;
  comps.reserve(f.chart().dim());
  for (std::size_t i = 0; i < f.chart().dim(); ++i)
    comps.push_back(f.derivative(i));
  return TensorField::one_form(f.chart(), comps);
}

TensorField exterior_derivative(const TensorField& w) {
  require_kind(w, TensorKind::Form, "exterior_derivative");
  TensorField out =
      TensorField::zero(w.chart(), TensorKind::Form, w.degree() + 1);
  for (const auto& [idx, c] : w.components()) {
    for (std::size_t i = 0; i < w.chart().dim(); ++i) {
      RatFun dc = c.derivative(i);
      if (dc.is_zero()) continue;
      IndexTuple ext;
      ext.reserve(idx.size() + 1);
      ext.push_back(static_cast<std::uint8_t>(i));
      ext.insert(ext.end(), idx.begin(), idx.end());
      out.add_signed(std::move(ext), std::move(dc));
    }
  }
  return out;
}

TensorField interior_product(const TensorField& a, const TensorField& T) {
  if (a.degree() != 1 || a.kind() == T.kind())
    throw Error("interior_product: need a degree-1 field of the opposite kind");
  if (T.degree() == 0)
    throw Error("interior_product: cannot contract a degree-0 field");
  TensorField out = TensorField::zero(T.chart(), T.kind(), T.degree() - 1);
  std::vector<RatFun> comps = a.component_vector();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].is_zero()) continue;
    out = out +
          theta_derivative_left(T, static_cast<std::uint8_t>(i)) * comps[i];
  }
  return out;
}

TensorField schouten_bracket(const TensorField& P, const TensorField& Q) {
  require_kind(P, TensorKind::Multivector, "schouten_bracket");
  require_kind(Q, TensorKind::Multivector, "schouten_bracket");
  require_same_chart(P.chart(), Q.chart(), "schouten_bracket");
  if (P.degree() + Q.degree() == 0)
    throw Error("schouten_bracket: both arguments have degree 0");
  TensorField pq = schouten_compose(P, Q);
  TensorField qp = schouten_compose(Q, P);
  bool odd = (P.degree() % 2 == 0) && (Q.degree() % 2 == 0);
  return odd ? pq + qp : pq - qp;
}

TensorField lie_derivative(const TensorField& X, const TensorField& T) {
  require_kind(X, TensorKind::Multivector, "lie_derivative");
  if (X.degree() != 1) throw Error("lie_derivative: need a vector field");
  if (T.kind() == TensorKind::Multivector) return schouten_bracket(X, T);
  if (T.degree() == 0)
    return TensorField::scalar(T.kind(), apply_vector(X, T.scalar_value()));
  return interior_product(X, exterior_derivative(T)) +
         exterior_derivative(interior_product(X, T));
}

RatFun divergence(const TensorField& X, const RatFun& density) {
  require_kind(X, TensorKind::Multivector, "divergence");
  if (X.degree() != 1) throw Error("divergence: need a vector field");
  if (density.is_zero()) throw Error("divergence: density must be nonzero");
  std::vector<RatFun> comps = X.component_vector();
  RatFun out = RatFun::zero(X.chart());
  for (std::size_t i = 0; i < comps.size(); ++i)
    out = out + comps[i].derivative(i);
  return out + apply_vector(X, density) / density;
}

TensorField pullback_form(const PolyMap& phi, const TensorField& w) {
  require_kind(w, TensorKind::Form, "pullback_form");
  require_same_chart(phi.target(), w.chart(), "pullback_form");
  const Chart& src = phi.source();
  std::vector<std::vector<Poly>> jac = phi.jacobian();
  std::vector<TensorField> pulled_dy;
  pulled_dy.reserve(phi.target().dim());
  for (std::size_t i = 0; i < phi.target().dim(); ++i) {
    std::vector<RatFun> comps;
    comps.reserve(src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j)
      comps.push_back(RatFun::from_poly(jac[i][j]));
    pulled_dy.push_back(TensorField::one_form(src, comps));
  }
  TensorField out = TensorField::zero(src, TensorKind::Form, w.degree());
  for (const auto& [idx, c] : w.components()) {
    TensorField term = TensorField::scalar(TensorKind::Form, phi.pullback(c));
    for (std::uint8_t i : idx) term = wedge(term, pulled_dy[i]);
    out = out + term;
  }
  return out;
}

std::vector<Rational> pushforward_vector_at(const PolyMap& phi,
                                            const TensorField& X,
                                            const std::vector<Rational>& p) {
  require_kind(X, TensorKind::Multivector, "pushforward_vector_at");
  if (X.degree() != 1) throw Error("pushforward_vector_at: need a vector field");
  require_same_chart(phi.source(), X.chart(), "pushforward_vector_at");
  std::vector<RatFun> comps = X.component_vector();
  std::vector<Rational> xp;
  xp.reserve(comps.size());
  for (const RatFun& c : comps) xp.push_back(c.eval(p));
  std::vector<std::vector<Poly>> jac = phi.jacobian();
  std::vector<Rational> out(phi.target().dim(), Rational(0));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < xp.size(); ++j)
      out[i] += jac[i][j].eval(p) * xp[j];
  return out;
}

TensorField sharp(const TensorField& pi, const TensorField& alpha) {
  require_kind(pi, TensorKind::Multivector, "sharp");
  if (pi.degree() != 2) throw Error("sharp: need a bivector");
  return interior_product(alpha, pi);
}

RatFun bivector_eval(const TensorField& pi, const TensorField& alpha,
                     const TensorField& beta) {
  return natural_pairing(beta, sharp(pi, alpha));
}

TensorField koszul_bracket(const TensorField& pi, const TensorField& alpha,
                           const TensorField& beta) {
  if (alpha.kind() != TensorKind::Form || alpha.degree() != 1 ||
      beta.kind() != TensorKind::Form || beta.degree() != 1)
    throw Error("koszul_bracket: need one-forms");
  return lie_derivative(sharp(pi, alpha), beta) -
         lie_derivative(sharp(pi, beta), alpha) -
         differential(bivector_eval(pi, alpha, beta));
}

TensorField d_pi(const TensorField& pi, const TensorField& P) {
  if (pi.degree() != 2) throw Error("d_pi: need a bivector");
  return schouten_bracket(pi, P);
}

TensorField lie_by_form(const TensorField& pi, const TensorField& alpha,
                        const TensorField& P) {
  require_kind(P, TensorKind::Multivector, "lie_by_form");
  if (P.degree() == 0) return interior_product(alpha, d_pi(pi, P));
  return interior_product(alpha, d_pi(pi, P)) +
         d_pi(pi, interior_product(alpha, P));
}

TensorField hamiltonian_field(const TensorField& pi, const RatFun& f) {
  return sharp(pi, differential(f));
}

TensorField modular_vector_field(const TensorField& pi,
                                 const RatFun& density) {
  const Chart& c = pi.chart();
  std::vector<RatFun> comps;
  comps.reserve(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) {
    RatFun xi = RatFun::variable(c, i);
    comps.push_back(divergence(hamiltonian_field(pi, xi), density));
  }
  return TensorField::vector_field(c, comps);
}

}  // namespace dirackit
