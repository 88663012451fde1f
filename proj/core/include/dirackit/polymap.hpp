#pragma once

#include <vector>

#include "dirackit/poly.hpp"
#include "dirackit/ratfun.hpp"

namespace dirackit {

// Polynomial map between charts: one source-chart polynomial per target
// variable. Used for base maps of morphisms, inclusions and projections.
class PolyMap {
 public:
  PolyMap(Chart source, Chart target, std::vector<Poly> components);

  const Chart& source() const { return source_; }
  const Chart& target() const { return target_; }
  const std::vector<Poly>& components() const { return comps_; }

  // Jacobian [target var][source var] of partial derivatives.
  std::vector<std::vector<Poly>> jacobian() const;

  std::vector<Rational> eval(const std::vector<Rational>& p) const;

  // Composition f o phi for a scalar on the target chart.
  RatFun pullback(const RatFun& f) const;
  Poly pullback(const Poly& f) const;

  bool operator==(const PolyMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && comps_ == o.comps_;
  }

 private:
  Chart source_, target_;
  std::vector<Poly> comps_;
};

}  // namespace dirackit
