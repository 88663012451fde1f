#include "dirackit/tensor.hpp"

#include <string>

#include "dirackit/error.hpp"
#include "dirackit/expr.hpp"

namespace dirackit {

TensorField TensorField::zero(const Chart& c, TensorKind k, unsigned degree) {
  TensorField t;
  t.chart_ = c;
  t.kind_ = k;
  t.degree_ = degree;
  return t;
}

TensorField TensorField::scalar(TensorKind k, RatFun value) {
  TensorField t = zero(value.chart(), k, 0);
  if (!value.is_zero()) t.comps_.emplace(IndexTuple{}, std::move(value));
  return t;
}

TensorField TensorField::vector_field(const Chart& c, std::vector<RatFun> comps) {
  if (comps.size() != c.dim()) throw Error("vector_field: component count");
  TensorField t = zero(c, TensorKind::Multivector, 1);
  for (std::size_t i = 0; i < comps.size(); ++i)
    t.add_signed(IndexTuple{static_cast<std::uint8_t>(i)}, std::move(comps[i]));
  return t;
}

TensorField TensorField::one_form(const Chart& c, std::vector<RatFun> comps) {
  if (comps.size() != c.dim()) throw Error("one_form: component count");
  TensorField t = zero(c, TensorKind::Form, 1);
  for (std::size_t i = 0; i < comps.size(); ++i)
    t.add_signed(IndexTuple{static_cast<std::uint8_t>(i)}, std::move(comps[i]));
  return t;
}

RatFun TensorField::coefficient(const IndexTuple& idx) const {
  auto it = comps_.find(idx);
  if (it == comps_.end()) return RatFun::zero(chart_);
  return it->second;
}

int sort_tuple(IndexTuple& idx) {
  // Insertion sort, counting transpositions; a repeated index kills the term.
  int swaps = 0;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    std::uint8_t v = idx[i];
    std::size_t j = i;
    while (j > 0 && idx[j - 1] > v) {
      idx[j] = idx[j - 1];
      --j;
      ++swaps;
    }
    idx[j] = v;
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return swaps % 2 == 0 ? 1 : -1;
}

void TensorField::add_signed(IndexTuple idx, RatFun coeff) {
  if (idx.size() != degree_) throw Error("tensor: tuple length vs degree");
  if (coeff.is_zero()) return;
  int sign = sort_tuple(idx);
  if (sign == 0) return;
  if (sign < 0) coeff = -coeff;
  auto it = comps_.find(idx);
  if (it == comps_.end()) {
    comps_.emplace(std::move(idx), std::move(coeff));
  } else {
    it->second += coeff;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

std::vector<RatFun> TensorField::component_vector() const {
  if (degree_ != 1) throw Error("tensor: component_vector needs degree 1");
  std::vector<RatFun> out(chart_.dim(), RatFun::zero(chart_));
  for (const auto& [idx, c] : comps_) out[idx[0]] = c;
  return out;
}

RatFun TensorField::scalar_value() const {
  if (degree_ != 0) throw Error("tensor: scalar_value needs degree 0");
  return coefficient({});
}

TensorField TensorField::operator-() const {
  TensorField out = zero(chart_, kind_, degree_);
  for (const auto& [idx, c] : comps_) out.comps_.emplace(idx, -c);
  return out;
}

TensorField operator+(TensorField a, const TensorField& b) {
  require_same_chart(a.chart_, b.chart_, "tensor +");
  if (a.kind_ != b.kind_ || a.degree_ != b.degree_)
    throw Error("tensor +: kind or degree mismatch");
  for (const auto& [idx, c] : b.comps_) a.add_signed(idx, c);
  return a;
}

TensorField operator-(TensorField a, const TensorField& b) {
  return std::move(a) + (-b);
}

TensorField TensorField::operator*(const RatFun& s) const {
  TensorField out = zero(chart_, kind_, degree_);
  if (s.is_zero()) return out;
  for (const auto& [idx, c] : comps_) out.add_signed(idx, c * s);
  return out;
}

TensorField wedge(const TensorField& a, const TensorField& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  if (a.kind() != b.kind()) throw Error("wedge: kind mismatch");
  TensorField out =
      TensorField::zero(a.chart(), a.kind(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.components()) {
    for (const auto& [ib, cb] : b.components()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      out.add_signed(std::move(idx), ca * cb);
    }
  }
  return out;
}

std::string to_string(const TensorField& t) {
  if (t.is_zero()) return "0";
  std::string out;
  for (const auto& [idx, c] : t.components()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    for (std::size_t k = 0; k < idx.size(); ++k) {
      out += (k == 0) ? "*" : "^";
      if (t.kind() == TensorKind::Form)
        out += "d" + t.chart().var(idx[k]);
      else
        out += "d/d" + t.chart().var(idx[k]);
    }
  }
  return out;
}

}  // namespace dirackit
