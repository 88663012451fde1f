#include "dirackit/poly.hpp"

#include <algorithm>

#include "dirackit/error.hpp"

namespace dirackit {

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
  unsigned da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly Poly::constant(const Chart& c, Rational v) {
  Poly p(c);
  if (!dirackit::is_zero(v)) p.terms_.emplace(Mono(c.dim(), 0), std::move(v));
  return p;
}

Poly Poly::variable(const Chart& c, std::size_t i) {
  if (i >= c.dim()) throw Error("poly: variable index out of range");
  Poly p(c);
  Mono m(c.dim(), 0);
  m[i] = 1;
  p.terms_.emplace(std::move(m), Rational(1));
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Mono& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; });
}

bool Poly::is_one() const {
  return is_constant() && !terms_.empty() && terms_.begin()->second == 1;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) throw Error("poly: not a constant");
  return terms_.begin()->second;
}

const Mono& Poly::leading_mono() const {
  if (terms_.empty()) throw Error("poly: leading term of zero");
  return terms_.rbegin()->first;
}

const Rational& Poly::leading_coeff() const {
  if (terms_.empty()) throw Error("poly: leading term of zero");
  return terms_.rbegin()->second;
}

unsigned Poly::total_degree() const {
  if (terms_.empty()) return 0;
  unsigned d = 0;
  for (auto e : terms_.rbegin()->first) d += e;
  return d;
}

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return d;
}

bool Poly::depends_on(std::size_t var) const {
  for (const auto& [m, c] : terms_)
    if (m[var] != 0) return true;
  return false;
}

void Poly::add_term(const Mono& m, const Rational& coeff) {
  if (dirackit::is_zero(coeff)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, coeff);
  } else {
    it->second += coeff;
    if (dirackit::is_zero(it->second)) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly out(chart_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  require_same_chart(chart_, o.chart_, "poly +");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_same_chart(chart_, o.chart_, "poly -");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_chart(a.chart_, b.chart_, "poly *");
  Poly out(a.chart_);
  Mono m(a.chart_.dim(), 0);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator*(const Rational& s) const {
  Poly out(chart_);
  if (dirackit::is_zero(s)) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
  return out;
}

Poly Poly::pow(unsigned e) const {
  Poly result = Poly::one(chart_);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= chart_.dim()) throw Error("poly: derivative index out of range");
  Poly out(chart_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Mono d = m;
    d[var] -= 1;
    out.add_term(d, c * m[var]);
  }
  return out;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
  if (point.size() != chart_.dim()) throw Error("poly: eval point dimension");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
    acc += t;
  }
  return acc;
}

Poly Poly::subst(const Chart& target, const std::vector<Poly>& args) const {
  if (args.size() != chart_.dim()) throw Error("poly: subst arity mismatch");
  for (const auto& a : args)
    require_same_chart(a.chart(), target, "poly subst");
  Poly acc = Poly::zero(target);
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) t = t * args[i].pow(m[i]);
    acc += t;
  }
  return acc;
}

Poly monic(const Poly& p) {
  if (p.is_zero()) return p;
  Rational inv = Rational(1) / p.leading_coeff();
  return p * inv;
}

bool try_divexact(const Poly& a, const Poly& b, Poly* q) {
  require_same_chart(a.chart(), b.chart(), "poly divexact");
  if (b.is_zero()) return false;
  Poly rem = a;
  Poly quot = Poly::zero(a.chart());
  const Mono& lb = b.leading_mono();
  const Rational& cb = b.leading_coeff();
  while (!rem.is_zero()) {
    const Mono& lr = rem.leading_mono();
    Mono d(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      if (lr[i] < lb[i]) return false;
      d[i] = lr[i] - lb[i];
    }
    Rational c = rem.leading_coeff() / cb;
    Poly t = Poly::zero(a.chart());
    t.add_term(d, c);
    quot += t;
    rem -= t * b;
  }
  if (q) *q = std::move(quot);
  return true;
}

Poly divexact(const Poly& a, const Poly& b) {
  Poly q;
  if (!try_divexact(a, b, &q)) throw Error("poly: division not exact");
  return q;
}

Poly squarefree_part(const Poly& p) {
  if (p.is_zero() || p.is_constant()) return monic(p);
  Poly g = p;
  for (std::size_t i = 0; i < p.chart().dim(); ++i) {
    if (!p.depends_on(i)) continue;
    g = gcd(g, p.derivative(i));
    if (g.is_constant()) return monic(p);
  }
  return monic(divexact(p, g));
}

}  // namespace dirackit
