#include "dirackit/algebroid.hpp"

#include <functional>

#include "dirackit/error.hpp"

namespace dirackit {

namespace {

std::string frame_name(std::size_t i) { return "e" + std::to_string(i + 1); }

// Ascending index tuples of the given length drawn from 0..rank-1.
void for_each_tuple(std::size_t rank, unsigned length,
                    const std::function<void(const IndexTuple&)>& fn) {
  IndexTuple idx(length);
  std::function<void(unsigned, std::uint8_t)> rec = [&](unsigned pos,
                                                        std::uint8_t lo) {
    if (pos == length) {
      fn(idx);
      return;
    }
    for (std::uint8_t v = lo; v < rank; ++v) {
      idx[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

AlgebroidData::AlgebroidData(Chart chart, std::size_t rank)
    : chart_(std::move(chart)),
      rank_(rank),
      anchor_(ratfun_matrix(rank, chart_.dim(), chart_)) {
  if (rank == 0) throw Error("algebroid: rank must be positive");
}

TensorField AlgebroidData::anchor_field(std::size_t i) const {
  std::vector<RatFun> comps;
  comps.reserve(chart_.dim());
  for (std::size_t j = 0; j < chart_.dim(); ++j)
    comps.push_back(anchor_.at(i, j));
  return TensorField::vector_field(chart_, comps);
}

RatFun AlgebroidData::apply_anchor(std::size_t i, const RatFun& f) const {
  RatFun out = RatFun::zero(chart_);
  for (std::size_t j = 0; j < chart_.dim(); ++j)
    out = out + anchor_.at(i, j) * f.derivative(j);
  return out;
}

RatFun AlgebroidData::structure(std::size_t i, std::size_t j,
                                std::size_t k) const {
  if (i == j) return RatFun::zero(chart_);
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = structure_.find({i, j, k});
  if (it == structure_.end()) return RatFun::zero(chart_);
  return flip ? -it->second : it->second;
}

void AlgebroidData::add_structure(std::size_t i, std::size_t j, std::size_t k,
                                  RatFun v) {
  if (i >= rank_ || j >= rank_ || k >= rank_)
    throw Error("algebroid: structure index out of range");
  if (v.is_zero()) return;
  if (i == j) throw Error("algebroid: nonzero diagonal structure function");
  if (i > j) {
    std::swap(i, j);
    v = -v;
  }
  std::array<std::size_t, 3> key{i, j, k};
  auto it = structure_.find(key);
  if (it == structure_.end()) {
    structure_.emplace(key, std::move(v));
  } else {
    it->second = it->second + v;
    if (it->second.is_zero()) structure_.erase(it);
  }
}

AlgebroidData AlgebroidData::tangent(const Chart& c) {
  AlgebroidData A(c, c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) A.anchor_at(i, i) = RatFun::one(c);
  return A;
}

AlgebroidData AlgebroidData::cotangent_of_poisson(const TensorField& pi) {
  const Chart& c = pi.chart();
  TensorField jac = schouten_bracket(pi, pi);
  if (!jac.is_zero())
    throw Error("cotangent_of_poisson: bivector is not Poisson");
  AlgebroidData A(c, c.dim());
  std::vector<TensorField> dx;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    std::vector<RatFun> comps(c.dim(), RatFun::zero(c));
    comps[i] = RatFun::one(c);
    dx.push_back(TensorField::one_form(c, comps));
  }
  for (std::size_t i = 0; i < c.dim(); ++i) {
    std::vector<RatFun> row = sharp(pi, dx[i]).component_vector();
    for (std::size_t j = 0; j < c.dim(); ++j) A.anchor_at(i, j) = row[j];
  }
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j) {
      std::vector<RatFun> br =
          koszul_bracket(pi, dx[i], dx[j]).component_vector();
      for (std::size_t k = 0; k < c.dim(); ++k) A.add_structure(i, j, k, br[k]);
    }
  return A;
}

AlgebroidCochain AlgebroidCochain::zero(const Chart& c, std::size_t rank,
                                        unsigned degree) {
  AlgebroidCochain x;
  x.chart_ = c;
  x.rank_ = rank;
  x.degree_ = degree;
  return x;
}

AlgebroidCochain AlgebroidCochain::from_scalar(const Chart& c,
                                               std::size_t rank,
                                               RatFun value) {
  AlgebroidCochain x = zero(c, rank, 0);
  if (!value.is_zero()) x.comps_.emplace(IndexTuple{}, std::move(value));
  return x;
}

AlgebroidCochain AlgebroidCochain::one_cochain(const Chart& c,
                                               std::vector<RatFun> comps) {
  AlgebroidCochain x = zero(c, comps.size(), 1);
  for (std::size_t i = 0; i < comps.size(); ++i)
    x.add_signed(IndexTuple{static_cast<std::uint8_t>(i)},
                 std::move(comps[i]));
  return x;
}

RatFun AlgebroidCochain::coefficient(const IndexTuple& idx) const {
  auto it = comps_.find(idx);
  if (it == comps_.end()) return RatFun::zero(chart_);
  return it->second;
}

RatFun AlgebroidCochain::signed_coefficient(IndexTuple idx) const {
  int sign = sort_tuple(idx);
  if (sign == 0) return RatFun::zero(chart_);
  RatFun c = coefficient(idx);
  return sign < 0 ? -c : c;
}

void AlgebroidCochain::add_signed(IndexTuple idx, RatFun coeff) {
  if (idx.size() != degree_) throw Error("cochain: tuple length vs degree");
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

std::vector<RatFun> AlgebroidCochain::component_vector() const {
  if (degree_ != 1) throw Error("cochain: component_vector needs degree 1");
  std::vector<RatFun> out(rank_, RatFun::zero(chart_));
  for (const auto& [idx, c] : comps_) out[idx[0]] = c;
  return out;
}

RatFun AlgebroidCochain::scalar_value() const {
  if (degree_ != 0) throw Error("cochain: scalar_value needs degree 0");
  return coefficient({});
}

AlgebroidCochain AlgebroidCochain::operator-() const {
  AlgebroidCochain out = zero(chart_, rank_, degree_);
  for (const auto& [idx, c] : comps_) out.comps_.emplace(idx, -c);
  return out;
}

AlgebroidCochain AlgebroidCochain::operator+(const AlgebroidCochain& o) const {
  if (rank_ != o.rank_ || degree_ != o.degree_)
    throw Error("cochain +: rank or degree mismatch");
  AlgebroidCochain out = *this;
  for (const auto& [idx, c] : o.comps_) out.add_signed(idx, c);
  return out;
}

AlgebroidCochain AlgebroidCochain::operator-(const AlgebroidCochain& o) const {
  return *this + (-o);
}

AlgebroidCochain AlgebroidCochain::operator*(const RatFun& s) const {
  AlgebroidCochain out = zero(chart_, rank_, degree_);
  if (s.is_zero()) return out;
  for (const auto& [idx, c] : comps_) out.add_signed(idx, c * s);
  return out;
}

AxiomReport check_axioms(const AlgebroidData& A) {
  std::size_t r = A.rank();
  // Anchor sends the frame bracket to the vector field bracket.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      TensorField lhs =
          TensorField::zero(A.chart(), TensorKind::Multivector, 1);
      for (std::size_t k = 0; k < r; ++k)
        lhs = lhs + A.anchor_field(k) * A.structure(i, j, k);
      TensorField rhs = schouten_bracket(A.anchor_field(i), A.anchor_field(j));
      if (lhs != rhs)
        return {false, "anchor incompatible with bracket on (" +
                           frame_name(i) + "," + frame_name(j) + ")"};
    }
  // Frame Jacobi identity, anchor-derivative terms included.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = j + 1; k < r; ++k)
        for (std::size_t m = 0; m < r; ++m) {
          RatFun v = RatFun::zero(A.chart());
          for (std::size_t l = 0; l < r; ++l) {
            v = v + A.structure(i, j, l) * A.structure(l, k, m) +
                A.structure(j, k, l) * A.structure(l, i, m) +
                A.structure(k, i, l) * A.structure(l, j, m);
          }
          v = v - A.apply_anchor(k, A.structure(i, j, m)) -
              A.apply_anchor(i, A.structure(j, k, m)) -
              A.apply_anchor(j, A.structure(k, i, m));
          if (!v.is_zero())
            return {false, "Jacobi fails on (" + frame_name(i) + "," +
                               frame_name(j) + "," + frame_name(k) +
                               ") along " + frame_name(m)};
        }
  return {};
}

AlgebroidCochain da_differential(const AlgebroidData& A,
                                 const AlgebroidCochain& xi) {
  if (xi.rank() != A.rank()) throw Error("da_differential: rank mismatch");
  if (xi.degree() > 2)
    throw Error("da_differential: degree " + std::to_string(xi.degree()) +
                " unsupported (max 2)");
  unsigned out_deg = xi.degree() + 1;
  AlgebroidCochain out = AlgebroidCochain::zero(A.chart(), A.rank(), out_deg);
  for_each_tuple(A.rank(), out_deg, [&](const IndexTuple& t) {
    RatFun v = RatFun::zero(A.chart());
    for (std::size_t q = 0; q < t.size(); ++q) {
      IndexTuple rest;
      for (std::size_t r = 0; r < t.size(); ++r)
        if (r != q) rest.push_back(t[r]);
      RatFun term = A.apply_anchor(t[q], xi.coefficient(rest));
      v = (q % 2 == 0) ? v + term : v - term;
    }
    for (std::size_t q = 0; q < t.size(); ++q)
      for (std::size_t s = q + 1; s < t.size(); ++s) {
        IndexTuple rest;
        for (std::size_t r = 0; r < t.size(); ++r)
          if (r != q && r != s) rest.push_back(t[r]);
        for (std::size_t l = 0; l < A.rank(); ++l) {
          RatFun c = A.structure(t[q], t[s], l);
          if (c.is_zero()) continue;
          IndexTuple arg;
          arg.push_back(static_cast<std::uint8_t>(l));
          arg.insert(arg.end(), rest.begin(), rest.end());
          RatFun term = c * xi.signed_coefficient(arg);
          v = ((q + s) % 2 == 0) ? v + term : v - term;
        }
      }
    out.add_signed(t, v);
  });
  return out;
}

AlgebroidCochain modular_cocycle(const AlgebroidData& A,
                                 const TrivializationChoice& t) {
  if (t.frame_unit.is_zero() || t.base_unit.is_zero())
    throw Error("modular_cocycle: vanishing trivialization unit");
  std::vector<RatFun> comps;
  comps.reserve(A.rank());
  for (std::size_t i = 0; i < A.rank(); ++i) {
    RatFun v = RatFun::zero(A.chart());
    for (std::size_t k = 0; k < A.rank(); ++k) v = v + A.structure(i, k, k);
    v = v + divergence(A.anchor_field(i), t.base_unit);
    v = v + A.apply_anchor(i, t.frame_unit) / t.frame_unit;
    comps.push_back(v);
  }
  return AlgebroidCochain::one_cochain(A.chart(), comps);
}

AlgebroidCochain characteristic_cocycle(const LineRepresentation& L) {
  if (L.connection_form.degree() != 1)
    throw Error("characteristic_cocycle: connection form must have degree 1");
  if (!da_differential(L.algebroid, L.connection_form).is_zero())
    throw Error("characteristic_cocycle: connection form is not closed");
  return L.connection_form;
}

LineRepresentation dual(const LineRepresentation& L) {
  return {L.algebroid, -L.connection_form};
}

LineRepresentation tensor_product(const LineRepresentation& a,
                                  const LineRepresentation& b) {
  return {a.algebroid, a.connection_form + b.connection_form};
}

MorphismReport check_morphism(const AlgebroidMorphism& m) {
  const AlgebroidData& A = m.source;
  const AlgebroidData& B = m.target;
  const Mat<RatFun>& F = m.fiber_map;
  if (F.rows != A.rank() || F.cols != B.rank())
    return {false, "fiber map has wrong shape"};
  std::vector<std::vector<Poly>> jac = m.base_map.jacobian();
  std::size_t nN = B.chart().dim();
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t w = 0; w < nN; ++w) {
      RatFun lhs = RatFun::zero(A.chart());
      for (std::size_t j = 0; j < A.chart().dim(); ++j)
        lhs = lhs + RatFun::from_poly(jac[w][j]) * A.anchor().at(i, j);
      RatFun rhs = RatFun::zero(A.chart());
      for (std::size_t u = 0; u < B.rank(); ++u)
        rhs = rhs + F.at(i, u) * m.base_map.pullback(B.anchor().at(u, w));
      if (!(lhs - rhs).is_zero())
        return {false, "anchors disagree on " + frame_name(i) +
                           " in coordinate " + B.chart().var(w)};
    }
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = i + 1; j < A.rank(); ++j)
      for (std::size_t w = 0; w < B.rank(); ++w) {
        RatFun lhs = RatFun::zero(A.chart());
        for (std::size_t k = 0; k < A.rank(); ++k)
          lhs = lhs + A.structure(i, j, k) * F.at(k, w);
        RatFun rhs = A.apply_anchor(i, F.at(j, w)) -
                     A.apply_anchor(j, F.at(i, w));
        for (std::size_t u = 0; u < B.rank(); ++u)
          for (std::size_t v = 0; v < B.rank(); ++v) {
            RatFun c = B.structure(u, v, w);
            if (c.is_zero()) continue;
            rhs = rhs + F.at(i, u) * F.at(j, v) * m.base_map.pullback(c);
          }
        if (!(lhs - rhs).is_zero())
          return {false, "brackets disagree on (" + frame_name(i) + "," +
                             frame_name(j) + ") along " + frame_name(w)};
      }
  return {};
}

AlgebroidCochain pullback_cochain(const AlgebroidMorphism& m,
                                  const AlgebroidCochain& xi) {
  const AlgebroidData& A = m.source;
  if (xi.rank() != m.target.rank())
    throw Error("pullback_cochain: rank mismatch");
  if (xi.degree() > 2) throw Error("pullback_cochain: degree > 2 unsupported");
  AlgebroidCochain out =
      AlgebroidCochain::zero(A.chart(), A.rank(), xi.degree());
  const Mat<RatFun>& F = m.fiber_map;
  if (xi.degree() == 0) {
    return AlgebroidCochain::from_scalar(
        A.chart(), A.rank(), m.base_map.pullback(xi.scalar_value()));
  }
  if (xi.degree() == 1) {
    for (std::size_t i = 0; i < A.rank(); ++i) {
      RatFun v = RatFun::zero(A.chart());
      for (std::size_t u = 0; u < m.target.rank(); ++u)
        v = v + F.at(i, u) *
                    m.base_map.pullback(
                        xi.coefficient({static_cast<std::uint8_t>(u)}));
      out.add_signed({static_cast<std::uint8_t>(i)}, v);
    }
    return out;
  }
  for_each_tuple(A.rank(), 2, [&](const IndexTuple& t) {
    RatFun v = RatFun::zero(A.chart());
    for (std::size_t u = 0; u < m.target.rank(); ++u)
      for (std::size_t w = u + 1; w < m.target.rank(); ++w) {
        RatFun c = xi.coefficient(
            {static_cast<std::uint8_t>(u), static_cast<std::uint8_t>(w)});
        if (c.is_zero()) continue;
        v = v + (F.at(t[0], u) * F.at(t[1], w) -
                 F.at(t[0], w) * F.at(t[1], u)) *
                    m.base_map.pullback(c);
      }
    out.add_signed(t, v);
  });
  return out;
}

AlgebroidCochain morphism_modular_cocycle(const AlgebroidMorphism& m,
                                          const TrivializationChoice& ts,
                                          const TrivializationChoice& tt) {
  return modular_cocycle(m.source, ts) -
         pullback_cochain(m, modular_cocycle(m.target, tt));
}

}  // namespace dirackit
