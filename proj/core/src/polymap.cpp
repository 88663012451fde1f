#include "dirackit/polymap.hpp"

#include "dirackit/error.hpp"

namespace dirackit {

PolyMap::PolyMap(Chart source, Chart target, std::vector<Poly> components)
    : source_(std::move(source)),
      target_(std::move(target)),
      comps_(std::move(components)) {
  if (comps_.size() != target_.dim())
    throw Error("polymap: expected " + std::to_string(target_.dim()) +
                " components, got " + std::to_string(comps_.size()));
  for (const Poly& c : comps_)
    if (!(c.chart() == source_))
      throw Error("polymap: component not on the source chart");
}

std::vector<std::vector<Poly>> PolyMap::jacobian() const {
  std::vector<std::vector<Poly>> jac(comps_.size());
  for (size_t i = 0; i < comps_.size(); ++i) {
    jac[i].reserve(source_.dim());
    for (size_t j = 0; j < source_.dim(); ++j)
      jac[i].push_back(comps_[i].derivative(j));
  }
  return jac;
}

std::vector<Rational> PolyMap::eval(const std::vector<Rational>& p) const {
  std::vector<Rational> out;
  out.reserve(comps_.size());
  for (const Poly& c : comps_) out.push_back(c.eval(p));
  return out;
}

RatFun PolyMap::pullback(const RatFun& f) const {
  return f.subst(source_, comps_);
}

Poly PolyMap::pullback(const Poly& f) const { return f.subst(source_, comps_); }

}  // namespace dirackit
