#include <map>

#include "dirackit/error.hpp"
#include "dirackit/poly.hpp"

// Multivariate gcd by primitive pseudo-remainder sequences: recurse on the
// lowest active variable, split content and primitive part (content gcds
// recurse on strictly fewer variables), run the PRS on the primitive parts.
// Output is canonical: monic under grlex.

namespace dirackit {
namespace {

// p viewed as a univariate polynomial in variable v; coefficients are v-free.
std::map<std::uint32_t, Poly> coeffs_in(const Poly& p, std::size_t v) {
  std::map<std::uint32_t, Poly> out;
  for (const auto& [m, c] : p.terms()) {
    Mono stripped = m;
    std::uint32_t e = stripped[v];
    stripped[v] = 0;
    auto it = out.find(e);
    if (it == out.end())
      it = out.emplace(e, Poly::zero(p.chart())).first;
    it->second.add_term(stripped, c);
  }
  return out;
}

Poly content_in(const Poly& p, std::size_t v) {
  Poly g = Poly::zero(p.chart());
  for (const auto& [e, coeff] : coeffs_in(p, v)) g = gcd(g, coeff);
  return g;
}

Poly v_power(const Chart& chart, std::size_t v, std::uint32_t e) {
  Poly p = Poly::one(chart);
  Mono m(chart.dim(), 0);
  m[v] = e;
  Poly t = Poly::zero(chart);
  t.add_term(m, Rational(1));
  return t;
}

Poly v_lead_coeff(const Poly& p, std::size_t v) {
  auto cs = coeffs_in(p, v);
  return cs.rbegin()->second;
}

// Remainder of a by b in the variable v, scaled by powers of b's leading
// coefficient so no fractions appear. Any such scaling works because the
// caller strips content afterwards.
Poly scaled_rem(Poly a, const Poly& b, std::size_t v) {
  unsigned db = b.degree_in(v);
  Poly lb = v_lead_coeff(b, v);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    unsigned da = a.degree_in(v);
    Poly la = v_lead_coeff(a, v);
    a = a * lb - b * la * v_power(a.chart(), v, da - db);
  }
  return a;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  require_same_chart(a.chart(), b.chart(), "poly gcd");
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);
  if (a.is_constant() || b.is_constant()) return Poly::one(a.chart());

  std::size_t v = 0;
  while (!a.depends_on(v) && !b.depends_on(v)) ++v;

  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly g = gcd(ca, cb);
  Poly r0 = divexact(a, ca);
  Poly r1 = divexact(b, cb);
  if (r0.degree_in(v) < r1.degree_in(v)) std::swap(r0, r1);

  while (!r1.is_zero()) {
    Poly r = scaled_rem(r0, r1, v);
    r0 = std::move(r1);
    if (r.is_zero()) {
      r1 = std::move(r);
    } else {
      r1 = divexact(r, content_in(r, v));
    }
  }
  return monic(g * r0);
}

}  // namespace dirackit
