#include "dirackit/dirac.hpp"

#include <algorithm>

#include "dirackit/error.hpp"
#include "dirackit/expr.hpp"

namespace dirackit {

namespace {

TensorField coordinate_vector(const Chart& c, std::size_t i) {
  std::vector<RatFun> comps(c.dim(), RatFun::zero(c));
  comps[i] = RatFun::one(c);
  return TensorField::vector_field(c, comps);
}

TensorField coordinate_form(const Chart& c, std::size_t i) {
  std::vector<RatFun> comps(c.dim(), RatFun::zero(c));
  comps[i] = RatFun::one(c);
  return TensorField::one_form(c, comps);
}

Rational rf_eval(const RatFun& f, const std::vector<Rational>& p) {
  return f.num().eval(p) / f.den().eval(p);
}

// Denominators of every generator component, for pole avoidance.
std::vector<Poly> pole_polys(const DiracSpec& spec) {
  std::vector<Poly> out;
  for (const GenSection& s : spec.generators)
    for (const RatFun& f : s.flat())
      if (!f.den().is_one()) out.push_back(f.den());
  return out;
}

std::string point_string(const Chart& c, const std::vector<Rational>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += c.var(i) + "=" + to_string(p[i]);
  }
  return out + ")";
}

// Fiberwise: combinations of the rows of `kill` that vanish, pushed through
// the rows of `keep`. Both are g x n over Q.
std::vector<std::vector<Rational>> fiber_intersection(
    const std::vector<std::vector<Rational>>& kill,
    const std::vector<std::vector<Rational>>& keep, std::size_t n) {
  std::size_t g = kill.size();
  Mat<Rational> K = rational_matrix(n, g);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < g; ++i) K.at(r, i) = kill[i][r];
  std::vector<std::vector<Rational>> combos =
      solve_linear(K, std::vector<Rational>(n, Rational(0))).kernel;
  std::vector<std::vector<Rational>> out;
  for (const auto& cmb : combos) {
    std::vector<Rational> v(n, Rational(0));
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t r = 0; r < n; ++r) v[r] += cmb[i] * keep[i][r];
    out.push_back(std::move(v));
  }
  return out;
}

Mat<Rational> as_matrix(const std::vector<std::vector<Rational>>& rows,
                        std::size_t n) {
  Mat<Rational> m = rational_matrix(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  return m;
}

}  // namespace

GenSection DiracSpec::bracket(const GenSection& s, const GenSection& t) const {
  return bialgebroid() ? bialgebroid_bracket(s, t, *ambient_poisson)
                       : courant_bracket(s, t);
}

TensorField DiracSpec::anchor_of(const GenSection& s) const {
  return bialgebroid() ? anchor(s, *ambient_poisson) : anchor(s);
}

DiracSpec graph_of_bivector(const TensorField& pi) {
  const Chart& c = pi.chart();
  TensorField jac = schouten_bracket(pi, pi);
  if (!jac.is_zero())
    throw Error("graph_of_bivector: not Poisson, [pi,pi] = " + to_string(jac));
  std::vector<GenSection> gens;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    TensorField dxi = coordinate_form(c, i);
    gens.emplace_back(sharp(pi, dxi), dxi);
  }
  return {c, std::move(gens), std::nullopt};
}

DiracSpec graph_of_twoform(const TensorField& omega) {
  const Chart& c = omega.chart();
  TensorField dw = exterior_derivative(omega);
  if (!dw.is_zero())
    throw Error("graph_of_twoform: not closed, d omega = " + to_string(dw));
  std::vector<GenSection> gens;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    TensorField ei = coordinate_vector(c, i);
    gens.emplace_back(ei, interior_product(ei, omega));
  }
  return {c, std::move(gens), std::nullopt};
}

DiracReport check_dirac(const DiracSpec& spec, std::uint64_t seed,
                        std::size_t samples) {
  DiracReport rep;
  rep.seed = seed;
  rep.samples = samples;
  const Chart& c = spec.chart;
  std::size_t n = c.dim(), g = spec.generators.size();

  Mat<RatFun> M = ratfun_matrix(g, 2 * n, c);
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<RatFun> row = spec.generators[i].flat();
    for (std::size_t j = 0; j < 2 * n; ++j) M.at(i, j) = row[j];
  }
  rep.rank = generic_rank(M);
  rep.spanning = (rep.rank == n);
  if (!rep.spanning)
    rep.witness = "generic rank " + std::to_string(rep.rank) +
                  " != " + std::to_string(n);

  rep.isotropic = true;
  for (std::size_t i = 0; i < g && rep.isotropic; ++i)
    for (std::size_t j = i; j < g; ++j) {
      RatFun p = pairing(spec.generators[i], spec.generators[j]);
      if (!p.is_zero()) {
        rep.isotropic = false;
        if (rep.witness.empty())
          rep.witness = "pairing of generators " + std::to_string(i + 1) +
                        "," + std::to_string(j + 1) + " = " + to_string(p);
        break;
      }
    }

  Mat<RatFun> cols = ratfun_matrix(2 * n, g, c);
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<RatFun> row = spec.generators[i].flat();
    for (std::size_t j = 0; j < 2 * n; ++j) cols.at(j, i) = row[j];
  }
  rep.integrable = true;
  for (std::size_t i = 0; i < g && rep.integrable; ++i)
    for (std::size_t j = i + 1; j < g; ++j) {
      GenSection b = spec.bracket(spec.generators[i], spec.generators[j]);
      LinSolution<RatFun> sol = solve_linear(cols, b.flat());
      if (!sol.consistent) {
        rep.integrable = false;
        if (rep.witness.empty())
          rep.witness = "bracket of generators " + std::to_string(i + 1) +
                        "," + std::to_string(j + 1) +
                        " leaves the generator span";
        break;
      }
      rep.certificates[{i, j}] = std::move(sol.particular);
    }

  rep.characteristic_ok = true;
  std::vector<Poly> avoid = pole_polys(spec);
  SampleStream rng(seed);
  for (std::size_t s = 0; s < samples && rep.characteristic_ok; ++s) {
    std::vector<Rational> p = rng.point(c, avoid);
    std::vector<std::vector<Rational>> V(g), F(g);
    for (std::size_t i = 0; i < g; ++i) {
      for (const RatFun& f : spec.generators[i].vec.component_vector())
        V[i].push_back(rf_eval(f, p));
      for (const RatFun& f : spec.generators[i].form.component_vector())
        F[i].push_back(rf_eval(f, p));
    }
    // L n TM against the annihilator of the form projection, then the
    // mirrored identity for L n T*M.
    bool tangent_ok = same_row_space(
        as_matrix(fiber_intersection(F, V, n), n),
        as_matrix(annihilator(as_matrix(F, n)), n));
    bool cotangent_ok = same_row_space(
        as_matrix(fiber_intersection(V, F, n), n),
        as_matrix(annihilator(as_matrix(V, n)), n));
    if (!tangent_ok || !cotangent_ok) {
      rep.characteristic_ok = false;
      if (rep.witness.empty())
        rep.witness = std::string("characteristic equation for ") +
                      (tangent_ok ? "L n T*M" : "L n TM") + " fails at " +
                      point_string(c, p);
    }
  }
  return rep;
}

AlgebroidData dirac_to_algebroid(const DiracSpec& spec) {
  std::size_t n = spec.chart.dim();
  if (spec.generators.size() != n)
    throw Error("dirac_to_algebroid: needs exactly dim-many generators");
  DiracReport rep = check_dirac(spec, 1, 16);
  if (!rep.ok()) throw Error("dirac_to_algebroid: " + rep.witness);
  AlgebroidData A(spec.chart, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RatFun> row =
        spec.anchor_of(spec.generators[i]).component_vector();
    for (std::size_t j = 0; j < n; ++j) A.anchor_at(i, j) = row[j];
  }
  for (const auto& [key, lambda] : rep.certificates)
    for (std::size_t k = 0; k < n; ++k)
      A.add_structure(key.first, key.second, k, lambda[k]);
  return A;
}

DistributionSpec characteristic_distribution(const DiracSpec& spec,
                                             std::uint64_t seed,
                                             std::size_t samples) {
  const Chart& c = spec.chart;
  std::size_t n = c.dim(), g = spec.generators.size();
  DistributionSpec out;
  out.chart = c;

  Mat<RatFun> F = ratfun_matrix(n, g, c);
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<RatFun> fc = spec.generators[i].form.component_vector();
    for (std::size_t r = 0; r < n; ++r) F.at(r, i) = fc[r];
  }
  std::vector<std::vector<RatFun>> kernel =
      solve_linear(F, std::vector<RatFun>(n, RatFun::zero(c))).kernel;
  for (const auto& cmb : kernel) {
    std::vector<RatFun> comps(n, RatFun::zero(c));
    for (std::size_t i = 0; i < g; ++i) {
      std::vector<RatFun> vc = spec.generators[i].vec.component_vector();
      for (std::size_t r = 0; r < n; ++r) comps[r] = comps[r] + cmb[i] * vc[r];
    }
    out.generators.push_back(TensorField::vector_field(c, comps));
  }
  std::size_t k = out.generators.size();

  Mat<RatFun> D = ratfun_matrix(n, k, c);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<RatFun> comps = out.generators[j].component_vector();
    for (std::size_t r = 0; r < n; ++r) D.at(r, j) = comps[r];
  }
  out.generic_rank = generic_rank(D);

  out.involutive = true;
  for (std::size_t a = 0; a < k && out.involutive; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      TensorField br = schouten_bracket(out.generators[a], out.generators[b]);
      if (!solve_linear(D, br.component_vector()).consistent) {
        out.involutive = false;
        break;
      }
    }

  out.constant_rank = true;
  std::vector<Poly> avoid = pole_polys(spec);
  SampleStream rng(seed);
  for (std::size_t s = 0; s < samples && out.constant_rank; ++s) {
    std::vector<Rational> p = rng.point(c, avoid);
    std::vector<std::vector<Rational>> V(g), Fv(g);
    for (std::size_t i = 0; i < g; ++i) {
      for (const RatFun& f : spec.generators[i].vec.component_vector())
        V[i].push_back(rf_eval(f, p));
      for (const RatFun& f : spec.generators[i].form.component_vector())
        Fv[i].push_back(rf_eval(f, p));
    }
    std::size_t fiber_dim =
        rank(as_matrix(fiber_intersection(Fv, V, n), n));
    if (fiber_dim != out.generic_rank) out.constant_rank = false;
  }
  return out;
}

CharacteristicPair characteristic_pair(const DiracSpec& spec) {
  const Chart& c = spec.chart;
  std::size_t n = c.dim();
  DistributionSpec D = characteristic_distribution(spec);
  if (!D.involutive)
    throw Error("characteristic_pair: distribution is not involutive");
  if (!D.constant_rank)
    throw Error("characteristic_pair: distribution rank is not constant");

  // The gauge needs D spanned by coordinate directions.
  Mat<Rational> C = rational_matrix(D.generators.size(), n);
  for (std::size_t i = 0; i < D.generators.size(); ++i) {
    std::vector<RatFun> comps = D.generators[i].component_vector();
    for (std::size_t j = 0; j < n; ++j) {
      if (!comps[j].is_constant())
        throw Error(
            "characteristic_pair: fiber directions are not constant in these "
            "coordinates (unsupported)");
      C.at(i, j) = comps[j].is_zero() ? Rational(0)
                                      : comps[j].num().constant_value();
    }
  }
  std::vector<std::size_t> pivots = rref(C);
  std::vector<bool> in_D(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j)
      if (!C.at(r, j).is_zero() && j != pivots[r])
        throw Error(
            "characteristic_pair: distribution is not a coordinate span "
            "(unsupported)");
    in_D[pivots[r]] = true;
  }
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < n; ++j)
    if (!in_D[j]) comp.push_back(j);

  // Unknowns Pi^{ab} on complement pairs a < b; the generator form parts
  // must already annihilate D.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;
  for (std::size_t a = 0; a < comp.size(); ++a)
    for (std::size_t b = a + 1; b < comp.size(); ++b)
      slot[{comp[a], comp[b]}] = slot.size();
  std::size_t g = spec.generators.size();
  Mat<RatFun> A = ratfun_matrix(g * comp.size(), slot.size(), c);
  std::vector<RatFun> rhs(g * comp.size(), RatFun::zero(c));
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<RatFun> alpha = spec.generators[i].form.component_vector();
    std::vector<RatFun> X = spec.generators[i].vec.component_vector();
    for (std::size_t j = 0; j < n; ++j)
      if (in_D[j] && !alpha[j].is_zero())
        throw Error(
            "characteristic_pair: generator form parts leave the annihilator "
            "of the distribution");
    for (std::size_t ci = 0; ci < comp.size(); ++ci) {
      std::size_t cc = comp[ci];
      std::size_t row = i * comp.size() + ci;
      // sum_a Pi^{a cc} alpha_a = X^{cc}
      for (std::size_t ai = 0; ai < comp.size(); ++ai) {
        std::size_t aa = comp[ai];
        if (aa == cc) continue;
        if (aa < cc)
          A.at(row, slot[{aa, cc}]) = A.at(row, slot[{aa, cc}]) + alpha[aa];
        else
          A.at(row, slot[{cc, aa}]) = A.at(row, slot[{cc, aa}]) - alpha[aa];
      }
      rhs[row] = X[cc];
    }
  }
  LinSolution<RatFun> sol = solve_linear(A, rhs);
  if (!sol.consistent)
    throw Error("characteristic_pair: no bivector completes the pair");
  TensorField Pi = TensorField::zero(c, TensorKind::Multivector, 2);
  for (const auto& [key, s] : slot)
    Pi.add_signed({static_cast<std::uint8_t>(key.first),
                   static_cast<std::uint8_t>(key.second)},
                  sol.particular[s]);

  // Reconstruction: D-directions plus the graph of Pi# over the annihilator
  // must span exactly the input generators.
  Mat<RatFun> L = ratfun_matrix(g, 2 * n, c);
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<RatFun> row = spec.generators[i].flat();
    for (std::size_t j = 0; j < 2 * n; ++j) L.at(i, j) = row[j];
  }
  Mat<RatFun> R = ratfun_matrix(n, 2 * n, c);
  std::size_t r = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (in_D[j]) R.at(r++, j) = RatFun::one(c);
  for (std::size_t cc : comp) {
    GenSection sgen(sharp(Pi, coordinate_form(c, cc)), coordinate_form(c, cc));
    std::vector<RatFun> row = sgen.flat();
    for (std::size_t j = 0; j < 2 * n; ++j) R.at(r, j) = row[j];
    ++r;
  }
  if (!same_row_space(L, R))
    throw Error("characteristic_pair: reconstruction identity fails");

  return {std::move(D), std::move(Pi)};
}

std::optional<TensorField> hamiltonian_lift(const DiracSpec& spec,
                                            const RatFun& f) {
  const Chart& c = spec.chart;
  std::size_t n = c.dim(), g = spec.generators.size();
  Mat<RatFun> F = ratfun_matrix(n, g, c);
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<RatFun> fc = spec.generators[i].form.component_vector();
    for (std::size_t r = 0; r < n; ++r) F.at(r, i) = fc[r];
  }
  std::vector<RatFun> df;
  df.reserve(n);
  for (std::size_t r = 0; r < n; ++r) df.push_back(f.derivative(r));
  LinSolution<RatFun> sol = solve_linear(F, df);
  if (!sol.consistent) return std::nullopt;
  std::vector<RatFun> comps(n, RatFun::zero(c));
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<RatFun> vc = spec.generators[i].vec.component_vector();
    for (std::size_t r = 0; r < n; ++r)
      comps[r] = comps[r] + sol.particular[i] * vc[r];
  }
  return TensorField::vector_field(c, comps);
}

RatFun admissible_bracket(const DiracSpec& spec, const RatFun& f,
                          const RatFun& g) {
  std::optional<TensorField> Xf = hamiltonian_lift(spec, f);
  if (!Xf)
    throw Error("admissible_bracket: " + to_string(f) +
                " has no Hamiltonian companion in L");
  std::optional<TensorField> Xg = hamiltonian_lift(spec, g);
  if (!Xg)
    throw Error("admissible_bracket: " + to_string(g) +
                " has no Hamiltonian companion in L");
  RatFun fg = apply_vector(*Xf, g);
  RatFun gf = apply_vector(*Xg, f);
  if (!(fg + gf).is_zero())
    throw Error("admissible_bracket: bracket is not antisymmetric on these "
                "inputs");
  return fg;
}

DiracSpec bialgebroid_flatten(const DiracSpec& spec, bool flip_sharp) {
  if (!spec.bialgebroid())
    throw Error("bialgebroid_flatten: spec has no ambient bivector");
  const TensorField& pi = *spec.ambient_poisson;
  std::vector<GenSection> gens;
  gens.reserve(spec.generators.size());
  for (const GenSection& s : spec.generators) {
    TensorField sh = sharp(pi, s.form);
    gens.emplace_back(flip_sharp ? s.vec - sh : s.vec + sh, s.form);
  }
  return {spec.chart, std::move(gens), std::nullopt};
}

AlgebroidCochain modular_cocycle_dirac(const DiracSpec& spec,
                                       const TrivializationChoice& t) {
  return modular_cocycle(dirac_to_algebroid(spec), t);
}

}  // namespace dirackit
