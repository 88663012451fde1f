#pragma once

#include <vector>

#include "dirackit/poly.hpp"

namespace dirackit {

// Rational function in canonical form: numerator and denominator coprime,
// denominator monic under grlex and never the zero polynomial. Equality of
// canonical forms is structural equality.
class RatFun {
 public:
  RatFun() = default;
  static RatFun zero(const Chart& c) { return RatFun(Poly::zero(c), Poly::one(c)); }
  static RatFun one(const Chart& c) { return RatFun(Poly::one(c), Poly::one(c)); }
  static RatFun constant(const Chart& c, Rational v) {
    return RatFun(Poly::constant(c, std::move(v)), Poly::one(c));
  }
  static RatFun variable(const Chart& c, std::size_t i) {
    return RatFun(Poly::variable(c, i), Poly::one(c));
  }
  static RatFun from_poly(Poly p) {
    Poly one = Poly::one(p.chart());
    return RatFun(std::move(p), std::move(one));
  }
  RatFun(Poly num, Poly den);  // canonicalizes; Error if den == 0

  const Chart& chart() const { return num_.chart(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  Rational constant_value() const;

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);  // Error on /0
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }
  bool operator==(const RatFun& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun pow(unsigned e) const;
  RatFun derivative(std::size_t var) const;

  // Exact evaluation; throws PoleError when the denominator vanishes at the
  // point, signalling the caller to reject and redraw the sample.
  Rational eval(const std::vector<Rational>& point) const;

  // Substitute variables by polynomials over `target` (composition with a
  // polynomial map). Error if the substituted denominator is identically 0.
  RatFun subst(const Chart& target, const std::vector<Poly>& args) const;

 private:
  void canonicalize();
  Poly num_, den_;
};

inline bool is_zero(const RatFun& f) { return f.is_zero(); }

}  // namespace dirackit
