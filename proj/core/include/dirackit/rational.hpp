#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace dirackit {

// Exact arbitrary-precision arithmetic. cpp_rational keeps the canonical form
// we rely on everywhere: gcd-reduced, denominator positive, zero is 0/1.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& r) { return r.is_zero(); }

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace dirackit
