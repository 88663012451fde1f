#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dirackit/linalg.hpp"

namespace dirackit {

enum class TensorKind { Multivector, Form };

// Strictly increasing list of coordinate indices keying one component.
using IndexTuple = std::vector<std::uint8_t>;

// Sorts idx ascending in place; returns the sign of the permutation, or 0
// when an index repeats (the antisymmetric component vanishes).
int sort_tuple(IndexTuple& idx);

// Antisymmetric contravariant (multivector) or covariant (form) field with
// RatFun components, stored on strictly increasing index tuples only. The
// degree is explicit so the zero tensor of each degree is well typed.
class TensorField {
 public:
  TensorField() = default;
  static TensorField zero(const Chart& c, TensorKind k, unsigned degree);
  // Degree-0 field (a scalar viewed as multivector or form).
  static TensorField scalar(TensorKind k, RatFun value);
  static TensorField vector_field(const Chart& c, std::vector<RatFun> comps);
  static TensorField one_form(const Chart& c, std::vector<RatFun> comps);

  const Chart& chart() const { return chart_; }
  TensorKind kind() const { return kind_; }
  unsigned degree() const { return degree_; }
  const std::map<IndexTuple, RatFun>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  // Component at a strictly increasing tuple (zero when absent).
  RatFun coefficient(const IndexTuple& idx) const;
  // Adds coeff on an arbitrary tuple, sorting it and applying the sign of the
  // permutation; tuples with a repeated index contribute nothing.
  void add_signed(IndexTuple idx, RatFun coeff);

  // Dense components of a degree-1 field.
  std::vector<RatFun> component_vector() const;
  // Scalar value of a degree-0 field.
  RatFun scalar_value() const;

  TensorField operator-() const;
  friend TensorField operator+(TensorField a, const TensorField& b);
  friend TensorField operator-(TensorField a, const TensorField& b);
  TensorField operator*(const RatFun& s) const;
  bool operator==(const TensorField& o) const {
    return chart_ == o.chart_ && kind_ == o.kind_ && degree_ == o.degree_ &&
           comps_ == o.comps_;
  }
  bool operator!=(const TensorField& o) const { return !(*this == o); }

 private:
  Chart chart_;
  TensorKind kind_ = TensorKind::Multivector;
  unsigned degree_ = 0;
  std::map<IndexTuple, RatFun> comps_;
};

// Exterior product of two fields of the same kind.
TensorField wedge(const TensorField& a, const TensorField& b);

// "(coeff)*dx^dy" for forms, "(coeff)*d/dx^d/dy" for multivectors; terms
// joined with " + ", "0" when empty.
std::string to_string(const TensorField& t);

}  // namespace dirackit
