#include "dirackit/ratfun.hpp"

#include "dirackit/error.hpp"

namespace dirackit {

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  require_same_chart(num_.chart(), den_.chart(), "ratfun");
  if (den_.is_zero()) throw Error("ratfun: zero denominator");
  canonicalize();
}

void RatFun::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly::one(num_.chart());
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = divexact(num_, g);
    den_ = divexact(den_, g);
  }
  Rational lc = den_.leading_coeff();
  if (lc != 1) {
    Rational inv = Rational(1) / lc;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

Rational RatFun::constant_value() const {
  if (!is_constant()) throw Error("ratfun: not a constant");
  return num_.constant_value();
}

RatFun RatFun::operator-() const {
  RatFun out = *this;
  out.num_ = -out.num_;
  return out;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw Error("ratfun: division by zero");
  return RatFun(a.num_ * b.den_, a.den_ * b.num_);
}

RatFun RatFun::pow(unsigned e) const {
  RatFun result = RatFun::one(chart());
  RatFun base = *this;
  while (e > 0) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

RatFun RatFun::derivative(std::size_t var) const {
  // Quotient rule; canonicalization cancels the common factors.
  Poly n = num_.derivative(var) * den_ - num_ * den_.derivative(var);
  return RatFun(std::move(n), den_ * den_);
}

Rational RatFun::eval(const std::vector<Rational>& point) const {
  Rational d = den_.eval(point);
  if (dirackit::is_zero(d))
    throw PoleError("ratfun: denominator vanishes at sample point");
  return num_.eval(point) / d;
}

RatFun RatFun::subst(const Chart& target, const std::vector<Poly>& args) const {
  Poly d = den_.subst(target, args);
  if (d.is_zero())
    throw Error("ratfun: substitution maps denominator to zero");
  return RatFun(num_.subst(target, args), std::move(d));
}

}  // namespace dirackit
