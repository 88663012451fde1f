#pragma once

#include "dirackit/cartan.hpp"

namespace dirackit {

// Section X + alpha of TM + T*M.
struct GenSection {
  TensorField vec;   // degree-1 multivector
  TensorField form;  // degree-1 form

  GenSection() = default;
  GenSection(TensorField v, TensorField f);

  const Chart& chart() const { return vec.chart(); }

  static GenSection zero(const Chart& c);
  static GenSection from_vector(const TensorField& X);
  static GenSection from_form(const TensorField& a);
  static GenSection make(const Chart& c, std::vector<RatFun> vec_comps,
                         std::vector<RatFun> form_comps);

  // Dense 2n-vector (vector components, then form components).
  std::vector<RatFun> flat() const;

  GenSection operator+(const GenSection& o) const;
  GenSection operator-(const GenSection& o) const;
  GenSection operator*(const RatFun& s) const;
  bool operator==(const GenSection& o) const {
    return vec == o.vec && form == o.form;
  }
  bool is_zero() const { return vec.is_zero() && form.is_zero(); }
};

// <X+a, Y+b>_+ = (1/2)(<b,X> + <a,Y>).
RatFun pairing(const GenSection& s, const GenSection& t);

// [X+a, Y+b] = [X,Y] + L_X b - L_Y a + (1/2) d(<a,Y> - <b,X>).
GenSection courant_bracket(const GenSection& s, const GenSection& t);

// The bracket of the Courant algebroid attached to a Poisson bivector:
// the Courant bracket plus the mirrored d_pi terms
// [a,b]_pi + L_a Y - L_b X - (1/2) d_pi(<a,Y> - <b,X>).
// Callers are responsible for [pi, pi] = 0; see poisson_check.
GenSection bialgebroid_bracket(const GenSection& s, const GenSection& t,
                               const TensorField& pi);

// Projection to TM, or the twisted anchor X + pi#(a) when pi is given.
TensorField anchor(const GenSection& s);
TensorField anchor(const GenSection& s, const TensorField& pi);

}  // namespace dirackit
