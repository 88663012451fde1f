#include <algorithm>
#include <functional>
#include <map>
#include <utility>

#include "dirackit/algebroid.hpp"
#include "dirackit/error.hpp"

namespace dirackit {

namespace {

// Monomials over c with total degree in [1, bound], grlex-ascending.
std::vector<Mono> monomials_up_to(const Chart& c, unsigned bound) {
  std::vector<Mono> out;
  Mono m(c.dim(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t var,
                                                       unsigned left) {
    if (var == c.dim()) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[var] = e;
      rec(var + 1, left - e);
      m[var] = 0;
    }
  };
  rec(0, bound);
  std::sort(out.begin(), out.end(), GrlexLess{});
  while (!out.empty() && out.front() == Mono(c.dim(), 0))
    out.erase(out.begin());
  return out;
}

Poly mono_poly(const Chart& c, const Mono& m) {
  Poly p = Poly::one(c);
  for (std::size_t i = 0; i < c.dim(); ++i)
    p = p * Poly::variable(c, i).pow(m[i]);
  return p;
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.chart());
  return monic(divexact(a * b, gcd(a, b)));
}

struct EqKeyLess {
  bool operator()(const std::pair<std::size_t, Mono>& a,
                  const std::pair<std::size_t, Mono>& b) const {
    if (a.first != b.first) return a.first < b.first;
    return GrlexLess{}(a.second, b.second);
  }
};

// Solves sum_j J[w][j] X^j = rhs[w] for polynomial components X^j of total
// degree <= bound by matching coefficients over Q. Returns false when the
// system has no solution in that degree range.
bool solve_polynomial_field(const Chart& src,
                            const std::vector<std::vector<Poly>>& J,
                            const std::vector<Poly>& rhs, unsigned bound,
                            std::vector<Poly>* out) {
  std::size_t nM = src.dim(), nN = rhs.size();
  std::vector<Mono> basis = monomials_up_to(src, bound);
  basis.insert(basis.begin(), Mono(src.dim(), 0));  // constants allowed too
  std::size_t cols = nM * basis.size();

  using EqKey = std::pair<std::size_t, Mono>;
  std::map<EqKey, std::map<std::size_t, Rational>, EqKeyLess> rows;
  std::map<EqKey, Rational, EqKeyLess> rhs_rows;

  for (std::size_t w = 0; w < nN; ++w) {
    for (std::size_t j = 0; j < nM; ++j) {
      if (J[w][j].is_zero()) continue;
      for (std::size_t mi = 0; mi < basis.size(); ++mi) {
        Poly prod = J[w][j] * mono_poly(src, basis[mi]);
        for (const auto& [mono, coeff] : prod.terms())
          rows[{w, mono}][j * basis.size() + mi] += coeff;
      }
    }
    for (const auto& [mono, coeff] : rhs[w].terms())
      rhs_rows[{w, mono}] = coeff;
  }
  // Every rhs monomial must appear as an equation row even when no unknown
  // reaches it, so inconsistency is detected rather than dropped.
  for (const auto& kv : rhs_rows) (void)rows[kv.first];

  Mat<Rational> A = rational_matrix(rows.size(), cols);
  std::vector<Rational> b(rows.size(), Rational(0));
  std::size_t r = 0;
  for (const auto& [key, entries] : rows) {
    for (const auto& [col, val] : entries) A.at(r, col) = val;
    auto it = rhs_rows.find(key);
    if (it != rhs_rows.end()) b[r] = it->second;
    ++r;
  }
  LinSolution<Rational> sol = solve_linear(A, b);
  if (!sol.consistent) return false;

  out->assign(nM, Poly::zero(src));
  for (std::size_t j = 0; j < nM; ++j)
    for (std::size_t mi = 0; mi < basis.size(); ++mi) {
      const Rational& t = sol.particular[j * basis.size() + mi];
      if (!t.is_zero()) (*out)[j].add_term(basis[mi], t);
    }
  return true;
}

// Expresses rhs in the span of the columns of V over RatFun; Error when the
// vector leaves the span.
std::vector<RatFun> solve_in_span(const Mat<RatFun>& V,
                                  const std::vector<RatFun>& rhs,
                                  const char* what) {
  LinSolution<RatFun> sol = solve_linear(V, rhs);
  if (!sol.consistent) throw Error(std::string(what) + ": not in span");
  return sol.particular;
}

}  // namespace

PullbackAlgebroid pullback_algebroid(const AlgebroidData& A, const PolyMap& phi,
                                     unsigned lift_degree_bound) {
  if (!(phi.target() == A.chart()))
    throw Error("pullback_algebroid: map target is not the base of A");
  const Chart& M = phi.source();
  const Chart& N = phi.target();
  std::size_t nM = M.dim(), nN = N.dim(), r = A.rank();

  std::vector<std::vector<Poly>> J = phi.jacobian();
  Mat<RatFun> Jr = ratfun_matrix(nN, nM, M);
  for (std::size_t w = 0; w < nN; ++w)
    for (std::size_t j = 0; j < nM; ++j)
      Jr.at(w, j) = RatFun::from_poly(J[w][j]);
  if (generic_rank(Jr) != nN)
    throw Error("pullback_algebroid: map is not a submersion");

  // Vertical frame: kernel of the differential. The construction needs the
  // kernel spanned by constant coordinate combinations, which holds exactly
  // when the chart is adapted to the fibration.
  std::vector<std::vector<RatFun>> ker = annihilator(Jr);
  std::size_t q = ker.size();
  std::vector<std::vector<Rational>> vertical;
  for (auto& v : ker) {
    Poly d = Poly::one(M);
    for (const RatFun& entry : v) d = poly_lcm(d, entry.den());
    std::vector<Rational> cleared(nM);
    for (std::size_t j = 0; j < nM; ++j) {
      RatFun e = v[j] * RatFun::from_poly(d);
      if (!e.is_polynomial() || !e.num().is_constant())
        throw Error(
            "pullback_algebroid: fiber directions are not constant in these "
            "coordinates (unsupported)");
      cleared[j] = e.is_zero() ? Rational(0) : e.num().constant_value();
    }
    vertical.push_back(std::move(cleared));
  }

  // Polynomial lifts of the anchor fields through the submersion.
  unsigned bound = lift_degree_bound;
  if (bound == 0) {
    unsigned maxdeg = 1;
    for (std::size_t w = 0; w < nN; ++w)
      for (std::size_t j = 0; j < nM; ++j)
        maxdeg = std::max(maxdeg, J[w][j].total_degree());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t w = 0; w < nN; ++w) {
        RatFun pulled = phi.pullback(A.anchor().at(i, w));
        maxdeg = std::max(maxdeg, pulled.num().total_degree());
      }
    bound = 2 * maxdeg;
  }
  std::vector<std::vector<Poly>> lifts(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Poly> rhs(nN, Poly::zero(M));
    for (std::size_t w = 0; w < nN; ++w) {
      RatFun pulled = phi.pullback(A.anchor().at(i, w));
      if (!pulled.is_polynomial())
        throw Error("pullback_algebroid: no polynomial lift for frame element " +
                    std::to_string(i + 1));
      rhs[w] = pulled.num();
    }
    if (!solve_polynomial_field(M, J, rhs, bound, &lifts[i]))
      throw Error("pullback_algebroid: no polynomial lift for frame element " +
                  std::to_string(i + 1) + " up to degree " +
                  std::to_string(bound));
  }

  std::vector<TensorField> lifted_fields, vertical_fields;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<RatFun> comps;
    for (std::size_t j = 0; j < nM; ++j)
      comps.push_back(RatFun::from_poly(lifts[i][j]));
    lifted_fields.push_back(TensorField::vector_field(M, comps));
  }
  for (std::size_t b = 0; b < q; ++b) {
    std::vector<RatFun> comps;
    for (std::size_t j = 0; j < nM; ++j)
      comps.push_back(RatFun::constant(M, vertical[b][j]));
    vertical_fields.push_back(TensorField::vector_field(M, comps));
  }

  AlgebroidData P(M, r + q);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < nM; ++j)
      P.anchor_at(i, j) = RatFun::from_poly(lifts[i][j]);
  for (std::size_t b = 0; b < q; ++b)
    for (std::size_t j = 0; j < nM; ++j)
      P.anchor_at(r + b, j) = RatFun::constant(M, vertical[b][j]);

  Mat<RatFun> V = ratfun_matrix(nM, q, M);
  for (std::size_t j = 0; j < nM; ++j)
    for (std::size_t b = 0; b < q; ++b)
      V.at(j, b) = RatFun::constant(M, vertical[b][j]);

  // Lifted x lifted: base structure pulled back, plus a vertical correction.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      TensorField rest = schouten_bracket(lifted_fields[i], lifted_fields[j]);
      for (std::size_t k = 0; k < r; ++k) {
        RatFun c = phi.pullback(A.structure(i, j, k));
        P.add_structure(i, j, k, c);
        rest = rest - lifted_fields[k] * c;
      }
      std::vector<RatFun> lam =
          solve_in_span(V, rest.component_vector(), "pullback bracket");
      for (std::size_t b = 0; b < q; ++b) P.add_structure(i, j, r + b, lam[b]);
    }
  // Lifted x vertical and vertical x vertical brackets project to zero, so
  // they stay in the vertical span.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t b = 0; b < q; ++b) {
      TensorField br = schouten_bracket(lifted_fields[i], vertical_fields[b]);
      std::vector<RatFun> lam =
          solve_in_span(V, br.component_vector(), "pullback bracket");
      for (std::size_t c = 0; c < q; ++c)
        P.add_structure(i, r + b, r + c, lam[c]);
    }
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = a + 1; b < q; ++b) {
      TensorField br = schouten_bracket(vertical_fields[a], vertical_fields[b]);
      std::vector<RatFun> lam =
          solve_in_span(V, br.component_vector(), "pullback bracket");
      for (std::size_t c = 0; c < q; ++c)
        P.add_structure(r + a, r + b, r + c, lam[c]);
    }

  Mat<RatFun> F = ratfun_matrix(r + q, r, M);
  for (std::size_t i = 0; i < r; ++i) F.at(i, i) = RatFun::one(M);
  AlgebroidMorphism proj{P, A, phi, F};

  return {std::move(P), std::move(proj), std::move(lifted_fields),
          std::move(vertical_fields)};
}

ComorphismResult comorphism_pullback(const AlgebroidData& A,
                                     const AlgebroidData& B, const PolyMap& phi,
                                     const Mat<RatFun>& phibar,
                                     const TrivializationChoice& ta,
                                     const TrivializationChoice& tb) {
  if (!(phi.source() == A.chart()) || !(phi.target() == B.chart()))
    throw Error("comorphism_pullback: map does not connect the two bases");
  std::size_t rA = A.rank(), rB = B.rank();
  if (phibar.rows != rB || phibar.cols != rA)
    throw Error("comorphism_pullback: section map has wrong shape");
  const Chart& M = A.chart();
  std::size_t nM = M.dim(), nN = B.chart().dim();

  std::vector<std::vector<Poly>> J = phi.jacobian();

  // u_i = sum_a F_ia e^A_a must push to the B-anchor along phi.
  std::vector<std::vector<RatFun>> u_anchor(rB,
                                            std::vector<RatFun>(nM,
                                                                RatFun::zero(M)));
  for (std::size_t i = 0; i < rB; ++i)
    for (std::size_t j = 0; j < nM; ++j)
      for (std::size_t a = 0; a < rA; ++a)
        u_anchor[i][j] =
            u_anchor[i][j] + phibar.at(i, a) * A.anchor().at(a, j);

  for (std::size_t i = 0; i < rB; ++i)
    for (std::size_t w = 0; w < nN; ++w) {
      RatFun lhs = RatFun::zero(M);
      for (std::size_t j = 0; j < nM; ++j)
        lhs = lhs + RatFun::from_poly(J[w][j]) * u_anchor[i][j];
      RatFun rhs = phi.pullback(B.anchor().at(i, w));
      if (!(lhs - rhs).is_zero())
        throw Error("comorphism_pullback: anchors incompatible on e" +
                    std::to_string(i + 1) + " in coordinate " +
                    B.chart().var(w));
    }

  auto u_apply = [&](std::size_t i, const RatFun& f) {
    RatFun out = RatFun::zero(M);
    for (std::size_t j = 0; j < nM; ++j)
      out = out + u_anchor[i][j] * f.derivative(j);
    return out;
  };

  // [u_i, u_j]_A expanded by Leibniz must match the pulled-back B-bracket.
  for (std::size_t i = 0; i < rB; ++i)
    for (std::size_t j = i + 1; j < rB; ++j)
      for (std::size_t c = 0; c < rA; ++c) {
        RatFun lhs = u_apply(i, phibar.at(j, c)) - u_apply(j, phibar.at(i, c));
        for (std::size_t a = 0; a < rA; ++a)
          for (std::size_t b = 0; b < rA; ++b) {
            RatFun s = A.structure(a, b, c);
            if (s.is_zero()) continue;
            lhs = lhs + phibar.at(i, a) * phibar.at(j, b) * s;
          }
        RatFun rhs = RatFun::zero(M);
        for (std::size_t k = 0; k < rB; ++k) {
          RatFun s = phi.pullback(B.structure(i, j, k));
          if (s.is_zero()) continue;
          rhs = rhs + s * phibar.at(k, c);
        }
        if (!(lhs - rhs).is_zero())
          throw Error("comorphism_pullback: brackets incompatible on (e" +
                      std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                      ") along eA" + std::to_string(c + 1));
      }

  AlgebroidData P(M, rB);
  for (std::size_t i = 0; i < rB; ++i)
    for (std::size_t j = 0; j < nM; ++j) P.anchor_at(i, j) = u_anchor[i][j];
  for (std::size_t i = 0; i < rB; ++i)
    for (std::size_t j = i + 1; j < rB; ++j)
      for (std::size_t k = 0; k < rB; ++k)
        P.add_structure(i, j, k, phi.pullback(B.structure(i, j, k)));

  AlgebroidCochain alphaA = modular_cocycle(A, ta);
  AlgebroidCochain alphaB = modular_cocycle(B, tb);
  std::vector<RatFun> comps;
  comps.reserve(rB);
  for (std::size_t i = 0; i < rB; ++i) {
    RatFun v = RatFun::zero(M);
    for (std::size_t a = 0; a < rA; ++a)
      v = v + phibar.at(i, a) *
                  alphaA.coefficient({static_cast<std::uint8_t>(a)});
    v = v - phi.pullback(alphaB.coefficient({static_cast<std::uint8_t>(i)}));
    comps.push_back(v);
  }
  return {std::move(P), AlgebroidCochain::one_cochain(M, comps)};
}

}  // namespace dirackit
