#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dirackit/chart.hpp"
#include "dirackit/rational.hpp"

namespace dirackit {

// Exponent vector, one entry per chart variable.
using Mono = std::vector<std::uint32_t>;

// Graded lexicographic order: compare total degree first, then exponent
// vectors lexicographically with the first variable most significant.
struct GrlexLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

// Multivariate polynomial over Q in canonical form: term map keyed by
// exponent vector under grlex, no zero coefficients stored.
class Poly {
 public:
  using TermMap = std::map<Mono, Rational, GrlexLess>;

  Poly() = default;
  static Poly zero(const Chart& c) { return Poly(c); }
  static Poly one(const Chart& c) { return constant(c, 1); }
  static Poly constant(const Chart& c, Rational v);
  static Poly variable(const Chart& c, std::size_t i);

  const Chart& chart() const { return chart_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  // Constant term of a constant polynomial (Error otherwise), or the value.
  Rational constant_value() const;

  // Leading data under grlex; Error on the zero polynomial.
  const Mono& leading_mono() const;
  const Rational& leading_coeff() const;

  unsigned total_degree() const;  // 0 for the zero polynomial
  unsigned degree_in(std::size_t var) const;
  bool depends_on(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const Rational& s) const;
  bool operator==(const Poly& o) const {
    return chart_ == o.chart_ && terms_ == o.terms_;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned e) const;
  Poly derivative(std::size_t var) const;

  // Exact evaluation at a rational point (size = chart dim).
  Rational eval(const std::vector<Rational>& point) const;

  // Substitute each variable by a polynomial over `target`; i.e. compose with
  // the map whose components are `args` (size = chart dim of *this).
  Poly subst(const Chart& target, const std::vector<Poly>& args) const;

  // Adds coeff * mono, dropping the term if the sum cancels.
  void add_term(const Mono& m, const Rational& coeff);

 private:
  explicit Poly(Chart c) : chart_(std::move(c)) {}
  Chart chart_;
  TermMap terms_;
};

// Monic normalization under grlex (leading coefficient 1); zero stays zero.
Poly monic(const Poly& p);

// True iff b divides a exactly; quotient written to *q when non-null.
bool try_divexact(const Poly& a, const Poly& b, Poly* q);
Poly divexact(const Poly& a, const Poly& b);  // Error when not divisible

// Canonical gcd: monic under grlex, gcd(0,0) = 0, constants give 1.
Poly gcd(const Poly& a, const Poly& b);

// Squarefree part computed from gcds with partial derivatives (monic).
Poly squarefree_part(const Poly& p);

}  // namespace dirackit
