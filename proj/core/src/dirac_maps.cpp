#include "dirackit/dirac_maps.hpp"

#include <algorithm>

#include "dirackit/error.hpp"
#include "dirackit/expr.hpp"

namespace dirackit {

namespace {

Rational rf_eval(const RatFun& f, const std::vector<Rational>& p) {
  return f.num().eval(p) / f.den().eval(p);
}

std::string point_string(const Chart& c, const std::vector<Rational>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += c.var(i) + "=" + to_string(p[i]);
  }
  return out + ")";
}

Mat<Rational> as_matrix(const std::vector<std::vector<Rational>>& rows,
                        std::size_t n) {
  Mat<Rational> m = rational_matrix(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  return m;
}

Mat<RatFun> as_matrix(const std::vector<std::vector<RatFun>>& rows,
                      std::size_t n, const Chart& c) {
  Mat<RatFun> m = ratfun_matrix(rows.size(), n, c);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  return m;
}

// Generator rows evaluated at a point: flattened (vec, form) in Q^{2n}.
std::vector<std::vector<Rational>> fiber_rows(const DiracSpec& spec,
                                              const std::vector<Rational>& p) {
  std::vector<std::vector<Rational>> out;
  for (const GenSection& s : spec.generators) {
    std::vector<Rational> row;
    for (const RatFun& f : s.flat()) row.push_back(rf_eval(f, p));
    out.push_back(std::move(row));
  }
  return out;
}

// Jacobian of phi evaluated at p: dim N x dim M.
std::vector<std::vector<Rational>> jacobian_at(
    const PolyMap& phi, const std::vector<Rational>& p) {
  std::vector<std::vector<Poly>> J = phi.jacobian();
  std::vector<std::vector<Rational>> out(J.size());
  for (std::size_t w = 0; w < J.size(); ++w)
    for (const Poly& e : J[w]) out[w].push_back(e.eval(p));
  return out;
}

// Denominator polynomials on M for all source generators plus all target
// generators precomposed with phi.
std::vector<Poly> pole_polys(const DiracMapProblem& pr) {
  std::vector<Poly> out;
  for (const GenSection& s : pr.source.generators)
    for (const RatFun& f : s.flat())
      if (!f.den().is_one()) out.push_back(f.den());
  for (const GenSection& s : pr.target.generators)
    for (const RatFun& f : s.flat())
      if (!f.den().is_one())
        out.push_back(f.den().subst(pr.map.source(), pr.map.components()));
  return out;
}

void validate_problem(const DiracMapProblem& pr) {
  if (!(pr.map.source() == pr.source.chart) ||
      !(pr.map.target() == pr.target.chart))
    throw Error("dirac map: charts of the map and the structures disagree");
}

PolyMap identity_map(const Chart& c) {
  std::vector<Poly> comps;
  comps.reserve(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i)
    comps.push_back(Poly::variable(c, i));
  return PolyMap(c, c, comps);
}

// The phi-relatedness system at a fixed point: finds the pairs
// (lambda, mu) with dphi (sum lambda x_b) = sum mu w_a and
// sum lambda alpha_b = dphi^T (sum mu beta_a).
std::vector<std::vector<Rational>> relation_kernel_at(
    const DiracMapProblem& pr, const std::vector<Rational>& p,
    const std::vector<Rational>& q) {
  std::size_t nM = pr.map.source().dim(), nN = pr.map.target().dim();
  std::size_t gL = pr.source.generators.size();
  std::size_t gK = pr.target.generators.size();
  std::vector<std::vector<Rational>> J = jacobian_at(pr.map, p);
  std::vector<std::vector<Rational>> Lrows = fiber_rows(pr.source, p);
  std::vector<std::vector<Rational>> Krows = fiber_rows(pr.target, q);

  Mat<Rational> A = rational_matrix(nN + nM, gL + gK);
  for (std::size_t w = 0; w < nN; ++w) {
    for (std::size_t b = 0; b < gL; ++b) {
      Rational v(0);
      for (std::size_t j = 0; j < nM; ++j) v += J[w][j] * Lrows[b][j];
      A.at(w, b) = v;
    }
    for (std::size_t a = 0; a < gK; ++a) A.at(w, gL + a) = -Krows[a][w];
  }
  for (std::size_t j = 0; j < nM; ++j) {
    for (std::size_t b = 0; b < gL; ++b) A.at(nN + j, b) = Lrows[b][nM + j];
    for (std::size_t a = 0; a < gK; ++a) {
      Rational v(0);
      for (std::size_t w = 0; w < nN; ++w) v += J[w][j] * Krows[a][nN + w];
      A.at(nN + j, gL + a) = -v;
    }
  }
  return solve_linear(A, std::vector<Rational>(nN + nM, Rational(0))).kernel;
}

}  // namespace

std::vector<std::vector<Rational>> backward_image_point(
    const DiracSpec& K, const PolyMap& phi, const std::vector<Rational>& p) {
  std::size_t nM = phi.source().dim(), nN = phi.target().dim();
  std::size_t g = K.generators.size();
  std::vector<Rational> q = phi.eval(p);
  std::vector<std::vector<Rational>> J = jacobian_at(phi, p);
  std::vector<std::vector<Rational>> Krows = fiber_rows(K, q);

  // Unknowns (v, lambda): J v = sum lambda w_a.
  Mat<Rational> A = rational_matrix(nN, nM + g);
  for (std::size_t w = 0; w < nN; ++w) {
    for (std::size_t j = 0; j < nM; ++j) A.at(w, j) = J[w][j];
    for (std::size_t a = 0; a < g; ++a) A.at(w, nM + a) = -Krows[a][w];
  }
  std::vector<std::vector<Rational>> kernel =
      solve_linear(A, std::vector<Rational>(nN, Rational(0))).kernel;

  std::vector<std::vector<Rational>> rows;
  for (const auto& k : kernel) {
    std::vector<Rational> el(2 * nM, Rational(0));
    for (std::size_t j = 0; j < nM; ++j) el[j] = k[j];
    for (std::size_t j = 0; j < nM; ++j)
      for (std::size_t w = 0; w < nN; ++w)
        for (std::size_t a = 0; a < g; ++a)
          el[nM + j] += J[w][j] * k[nM + a] * Krows[a][nN + w];
    rows.push_back(std::move(el));
  }
  return row_basis(as_matrix(rows, 2 * nM));
}

std::vector<std::vector<Rational>> forward_image_point(
    const DiracSpec& L, const PolyMap& phi, const std::vector<Rational>& p) {
  std::size_t nM = phi.source().dim(), nN = phi.target().dim();
  std::size_t g = L.generators.size();
  std::vector<std::vector<Rational>> J = jacobian_at(phi, p);
  std::vector<std::vector<Rational>> Lrows = fiber_rows(L, p);

  // Unknowns (a, lambda): sum lambda alpha_b = J^T a.
  Mat<Rational> A = rational_matrix(nM, nN + g);
  for (std::size_t j = 0; j < nM; ++j) {
    for (std::size_t w = 0; w < nN; ++w) A.at(j, w) = -J[w][j];
    for (std::size_t b = 0; b < g; ++b) A.at(j, nN + b) = Lrows[b][nM + j];
  }
  std::vector<std::vector<Rational>> kernel =
      solve_linear(A, std::vector<Rational>(nM, Rational(0))).kernel;

  std::vector<std::vector<Rational>> rows;
  for (const auto& k : kernel) {
    std::vector<Rational> el(2 * nN, Rational(0));
    for (std::size_t w = 0; w < nN; ++w) {
      el[nN + w] = k[w];
      for (std::size_t j = 0; j < nM; ++j)
        for (std::size_t b = 0; b < g; ++b)
          el[w] += J[w][j] * k[nN + b] * Lrows[b][j];
    }
    rows.push_back(std::move(el));
  }
  return row_basis(as_matrix(rows, 2 * nN));
}

MapReport check_dirac_map(const DiracMapProblem& pr, MapDirection dir) {
  validate_problem(pr);
  const Chart& M = pr.map.source();
  const Chart& N = pr.map.target();
  std::size_t nM = M.dim(), nN = N.dim();
  MapReport rep;
  rep.seed = pr.seed;
  rep.samples = pr.samples;

  std::vector<Poly> avoid = pole_polys(pr);
  SampleStream rng(pr.seed);
  for (std::size_t s = 0; s < pr.samples && rep.pass; ++s) {
    std::vector<Rational> p = rng.point(M, avoid);
    bool same = false;
    if (dir == MapDirection::Backward) {
      same = same_row_space(
          as_matrix(backward_image_point(pr.target, pr.map, p), 2 * nM),
          as_matrix(fiber_rows(pr.source, p), 2 * nM));
    } else {
      same = same_row_space(
          as_matrix(forward_image_point(pr.source, pr.map, p), 2 * nN),
          as_matrix(fiber_rows(pr.target, pr.map.eval(p)), 2 * nN));
    }
    if (!same) {
      rep.pass = false;
      rep.witness =
          std::string(dir == MapDirection::Backward ? "backward" : "forward") +
          " image mismatch at " + point_string(M, p);
    }
  }
  if (!rep.pass) return rep;

  // Symbolic pass over the fraction field of M; when the generic spans
  // agree the report is upgraded.
  std::vector<std::vector<Poly>> J = pr.map.jacobian();
  if (dir == MapDirection::Backward) {
    std::size_t g = pr.target.generators.size();
    Mat<RatFun> A = ratfun_matrix(nN, nM + g, M);
    std::vector<std::vector<RatFun>> Kp;  // target generators along phi
    for (const GenSection& t : pr.target.generators) {
      std::vector<RatFun> row;
      for (const RatFun& f : t.flat()) row.push_back(pr.map.pullback(f));
      Kp.push_back(std::move(row));
    }
    for (std::size_t w = 0; w < nN; ++w) {
      for (std::size_t j = 0; j < nM; ++j)
        A.at(w, j) = RatFun::from_poly(J[w][j]);
      for (std::size_t a = 0; a < g; ++a) A.at(w, nM + a) = -Kp[a][w];
    }
    std::vector<std::vector<RatFun>> kernel =
        solve_linear(A, std::vector<RatFun>(nN, RatFun::zero(M))).kernel;
    std::vector<std::vector<RatFun>> rows;
    for (const auto& k : kernel) {
      std::vector<RatFun> el(2 * nM, RatFun::zero(M));
      for (std::size_t j = 0; j < nM; ++j) el[j] = k[j];
      for (std::size_t j = 0; j < nM; ++j)
        for (std::size_t w = 0; w < nN; ++w)
          for (std::size_t a = 0; a < g; ++a)
            el[nM + j] = el[nM + j] +
                         RatFun::from_poly(J[w][j]) * k[nM + a] * Kp[a][nN + w];
      rows.push_back(std::move(el));
    }
    std::vector<std::vector<RatFun>> Lrows;
    for (const GenSection& s : pr.source.generators)
      Lrows.push_back(s.flat());
    if (same_row_space(as_matrix(rows, 2 * nM, M),
                       as_matrix(Lrows, 2 * nM, M)))
      rep.level = CheckLevel::Symbolic;
  } else {
    std::size_t g = pr.source.generators.size();
    Mat<RatFun> A = ratfun_matrix(nM, nN + g, M);
    std::vector<std::vector<RatFun>> Ls;
    for (const GenSection& s : pr.source.generators) Ls.push_back(s.flat());
    for (std::size_t j = 0; j < nM; ++j) {
      for (std::size_t w = 0; w < nN; ++w)
        A.at(j, w) = -RatFun::from_poly(J[w][j]);
      for (std::size_t b = 0; b < g; ++b) A.at(j, nN + b) = Ls[b][nM + j];
    }
    std::vector<std::vector<RatFun>> kernel =
        solve_linear(A, std::vector<RatFun>(nM, RatFun::zero(M))).kernel;
    std::vector<std::vector<RatFun>> rows;
    for (const auto& k : kernel) {
      std::vector<RatFun> el(2 * nN, RatFun::zero(M));
      for (std::size_t w = 0; w < nN; ++w) {
        el[nN + w] = k[w];
        for (std::size_t j = 0; j < nM; ++j)
          for (std::size_t b = 0; b < g; ++b)
            el[w] = el[w] + RatFun::from_poly(J[w][j]) * k[nN + b] * Ls[b][j];
      }
      rows.push_back(std::move(el));
    }
    std::vector<std::vector<RatFun>> Kp;
    for (const GenSection& t : pr.target.generators) {
      std::vector<RatFun> row;
      for (const RatFun& f : t.flat()) row.push_back(pr.map.pullback(f));
      Kp.push_back(std::move(row));
    }
    if (same_row_space(as_matrix(rows, 2 * nN, M),
                       as_matrix(Kp, 2 * nN, M)))
      rep.level = CheckLevel::Symbolic;
  }
  return rep;
}

AdmissibleReport check_admissible(const DiracMapProblem& pr) {
  validate_problem(pr);
  const Chart& M = pr.map.source();
  std::size_t nM = M.dim(), nN = pr.map.target().dim();
  std::size_t gL = pr.source.generators.size();
  std::size_t gK = pr.target.generators.size();
  AdmissibleReport rep;
  rep.seed = pr.seed;

  std::vector<Poly> avoid = pole_polys(pr);
  SampleStream rng(pr.seed);
  for (std::size_t s = 0; s < pr.samples; ++s) {
    std::vector<Rational> p = rng.point(M, avoid);
    std::vector<Rational> q = pr.map.eval(p);
    std::vector<std::vector<Rational>> kernel = relation_kernel_at(pr, p, q);
    std::vector<std::vector<Rational>> Lrows = fiber_rows(pr.source, p);
    std::vector<std::vector<Rational>> Krows = fiber_rows(pr.target, q);
    // Realized pair vectors; their rank is the fiber dimension of R.
    std::vector<std::vector<Rational>> pairs;
    for (const auto& k : kernel) {
      std::vector<Rational> el(2 * nM + 2 * nN, Rational(0));
      for (std::size_t b = 0; b < gL; ++b)
        for (std::size_t j = 0; j < 2 * nM; ++j) el[j] += k[b] * Lrows[b][j];
      for (std::size_t a = 0; a < gK; ++a)
        for (std::size_t w = 0; w < 2 * nN; ++w)
          el[2 * nM + w] += k[gL + a] * Krows[a][w];
      pairs.push_back(std::move(el));
    }
    rep.rank_profile.push_back(rank(as_matrix(pairs, 2 * nM + 2 * nN)));
  }
  rep.admissible = !rep.rank_profile.empty();
  for (std::size_t r : rep.rank_profile)
    if (r != rep.rank_profile.front()) rep.admissible = false;
  if (rep.admissible) rep.generic_rank = rep.rank_profile.front();
  return rep;
}

RelationAlgebroid relation_algebroid(const DiracMapProblem& pr) {
  validate_problem(pr);
  AdmissibleReport adm = check_admissible(pr);
  if (!adm.admissible)
    throw Error("relation_algebroid: fiber dimension is not constant");

  const Chart& M = pr.map.source();
  const Chart& N = pr.map.target();
  std::size_t nM = M.dim(), nN = N.dim();
  std::size_t gL = pr.source.generators.size();
  std::size_t gK = pr.target.generators.size();
  std::vector<std::vector<Poly>> J = pr.map.jacobian();

  std::vector<std::vector<RatFun>> Ls;
  for (const GenSection& s : pr.source.generators) Ls.push_back(s.flat());
  std::vector<std::vector<RatFun>> Kp;
  for (const GenSection& t : pr.target.generators) {
    std::vector<RatFun> row;
    for (const RatFun& f : t.flat()) row.push_back(pr.map.pullback(f));
    Kp.push_back(std::move(row));
  }

  // (lambda, mu) solving both phi-relatedness conditions over RatFun(M).
  Mat<RatFun> A = ratfun_matrix(nN + nM, gL + gK, M);
  for (std::size_t w = 0; w < nN; ++w) {
    for (std::size_t b = 0; b < gL; ++b) {
      RatFun v = RatFun::zero(M);
      for (std::size_t j = 0; j < nM; ++j)
        v = v + RatFun::from_poly(J[w][j]) * Ls[b][j];
      A.at(w, b) = v;
    }
    for (std::size_t a = 0; a < gK; ++a) A.at(w, gL + a) = -Kp[a][w];
  }
  for (std::size_t j = 0; j < nM; ++j) {
    for (std::size_t b = 0; b < gL; ++b) A.at(nN + j, b) = Ls[b][nM + j];
    for (std::size_t a = 0; a < gK; ++a) {
      RatFun v = RatFun::zero(M);
      for (std::size_t w = 0; w < nN; ++w)
        v = v + RatFun::from_poly(J[w][j]) * Kp[a][nN + w];
      A.at(nN + j, gL + a) = -v;
    }
  }
  std::vector<std::vector<RatFun>> kernel =
      solve_linear(A, std::vector<RatFun>(nN + nM, RatFun::zero(M))).kernel;
  std::size_t r = kernel.size();
  if (r == 0) throw Error("relation_algebroid: fiber is zero");
  if (r != adm.generic_rank)
    throw Error("relation_algebroid: generic and pointwise ranks disagree");

  Mat<RatFun> lambda = ratfun_matrix(r, gL, M);
  Mat<RatFun> mu = ratfun_matrix(r, gK, M);
  for (std::size_t m = 0; m < r; ++m) {
    for (std::size_t b = 0; b < gL; ++b) lambda.at(m, b) = kernel[m][b];
    for (std::size_t a = 0; a < gK; ++a) mu.at(m, a) = kernel[m][gL + a];
  }

  std::vector<GenSection> first;
  std::vector<std::vector<RatFun>> second_vec, second_form, pair_flat;
  for (std::size_t m = 0; m < r; ++m) {
    GenSection fst = GenSection::zero(M);
    for (std::size_t b = 0; b < gL; ++b)
      fst = fst + pr.source.generators[b] * lambda.at(m, b);
    std::vector<RatFun> sv(nN, RatFun::zero(M)), sf(nN, RatFun::zero(M));
    for (std::size_t a = 0; a < gK; ++a)
      for (std::size_t w = 0; w < nN; ++w) {
        sv[w] = sv[w] + mu.at(m, a) * Kp[a][w];
        sf[w] = sf[w] + mu.at(m, a) * Kp[a][nN + w];
      }
    std::vector<RatFun> flat = fst.flat();
    flat.insert(flat.end(), sv.begin(), sv.end());
    flat.insert(flat.end(), sf.begin(), sf.end());
    pair_flat.push_back(std::move(flat));
    first.push_back(std::move(fst));
    second_vec.push_back(std::move(sv));
    second_form.push_back(std::move(sf));
  }
  Mat<RatFun> span = ratfun_matrix(2 * (nM + nN), r, M);
  for (std::size_t m = 0; m < r; ++m)
    for (std::size_t j = 0; j < 2 * (nM + nN); ++j)
      span.at(j, m) = pair_flat[m][j];
  if (generic_rank(span) != r)
    throw Error("relation_algebroid: realized sections are degenerate");

  AlgebroidData ra(M, r);
  // Anchor: the M-side vector, already phi-related to the N-side one by
  // construction; the tangency is still re-verified.
  for (std::size_t m = 0; m < r; ++m) {
    std::vector<RatFun> av = pr.source.anchor_of(first[m]).component_vector();
    for (std::size_t j = 0; j < nM; ++j) ra.anchor_at(m, j) = av[j];
    for (std::size_t w = 0; w < nN; ++w) {
      RatFun push = RatFun::zero(M);
      for (std::size_t j = 0; j < nM; ++j)
        push = push + RatFun::from_poly(J[w][j]) * av[j];
      if (!(push - second_vec[m][w]).is_zero())
        throw Error("relation_algebroid: anchor is not tangent to the graph");
    }
  }

  // K-side brackets on N, pulled along phi. Generators of a Dirac structure
  // pair to zero, so the restricted bracket is antisymmetric.
  std::vector<std::vector<std::vector<RatFun>>> KB(
      gK, std::vector<std::vector<RatFun>>(gK));
  for (std::size_t a = 0; a < gK; ++a)
    for (std::size_t b = a + 1; b < gK; ++b) {
      GenSection br = pr.target.bracket(pr.target.generators[a],
                                        pr.target.generators[b]);
      std::vector<RatFun> flat;
      for (const RatFun& f : br.flat()) flat.push_back(pr.map.pullback(f));
      std::vector<RatFun> neg;
      for (const RatFun& f : flat) neg.push_back(-f);
      KB[a][b] = std::move(flat);
      KB[b][a] = std::move(neg);
    }

  for (std::size_t m = 0; m < r; ++m)
    for (std::size_t l = m + 1; l < r; ++l) {
      GenSection fb = pr.source.bracket(first[m], first[l]);
      std::vector<RatFun> second(2 * nN, RatFun::zero(M));
      for (std::size_t a = 0; a < gK; ++a)
        for (std::size_t b = 0; b < gK; ++b) {
          if (a == b) continue;
          RatFun c = mu.at(m, a) * mu.at(l, b);
          if (c.is_zero()) continue;
          for (std::size_t w = 0; w < 2 * nN; ++w)
            second[w] = second[w] + c * KB[a][b][w];
        }
      TensorField am = pr.source.anchor_of(first[m]);
      TensorField al = pr.source.anchor_of(first[l]);
      for (std::size_t a = 0; a < gK; ++a) {
        RatFun dml =
            apply_vector(am, mu.at(l, a)) - apply_vector(al, mu.at(m, a));
        if (dml.is_zero()) continue;
        for (std::size_t w = 0; w < 2 * nN; ++w)
          second[w] = second[w] + dml * Kp[a][w];
      }
      std::vector<RatFun> rhs = fb.flat();
      rhs.insert(rhs.end(), second.begin(), second.end());
      LinSolution<RatFun> sol = solve_linear(span, rhs);
      if (!sol.consistent)
        throw Error("relation_algebroid: bracket of sections " +
                    std::to_string(m + 1) + "," + std::to_string(l + 1) +
                    " leaves the relation span");
      for (std::size_t k = 0; k < r; ++k)
        ra.add_structure(m, l, k, sol.particular[k]);
    }

  AxiomReport ax = check_axioms(ra);
  if (!ax.ok) throw Error("relation_algebroid: " + ax.witness);

  AlgebroidMorphism mor_i{ra, dirac_to_algebroid(pr.source), identity_map(M),
                          lambda};
  AlgebroidMorphism mor_j{ra, dirac_to_algebroid(pr.target), pr.map, mu};
  MorphismReport mi = check_morphism(mor_i);
  if (!mi.ok)
    throw Error("relation_algebroid: projection to the source fails: " +
                mi.witness);
  MorphismReport mj = check_morphism(mor_j);
  if (!mj.ok)
    throw Error("relation_algebroid: projection to the target fails: " +
                mj.witness);
  return RelationAlgebroid{std::move(ra),          std::move(lambda),
                           std::move(mu),          std::move(first),
                           std::move(second_vec),  std::move(second_form),
                           std::move(mor_i),       std::move(mor_j)};
}

MapModularResult dirac_map_modular_cocycle(const DiracMapProblem& pr,
                                           const TrivializationChoice& tl,
                                           const TrivializationChoice& tk,
                                           unsigned degree_bound) {
  RelationAlgebroid R = relation_algebroid(pr);
  AlgebroidCochain modL =
      modular_cocycle(R.morphism_i.target, tl);
  AlgebroidCochain modK =
      modular_cocycle(R.morphism_j.target, tk);
  AlgebroidCochain cocycle = pullback_cochain(R.morphism_i, modL) -
                             pullback_cochain(R.morphism_j, modK);
  ExactnessResult ex = exactness_test(R.algebroid, cocycle, degree_bound);
  return {std::move(cocycle), std::move(ex)};
}

}  // namespace dirackit
