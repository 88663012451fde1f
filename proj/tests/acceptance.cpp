// Acceptance gate: one line per criterion, exit code = number of failures.
// Every numeric claim is checked in exact rational arithmetic; the oracles
// here are deliberately independent of the library routines they certify.

#include <cstddef>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dirackit/cartan.hpp"
#include "dirackit/corpus.hpp"
#include "dirackit/dirac_maps.hpp"
#include "dirackit/expr.hpp"
#include "dirackit/harness.hpp"
#include "dirackit/linalg.hpp"

using namespace dirackit;

namespace {

int failures = 0;
int index = 0;

void criterion(const std::string& name, const std::function<std::string()>& fn) {
  ++index;
  std::string verdict;
  try {
    std::string note = fn();
    verdict = "PASS" + (note.empty() ? "" : " (" + note + ")");
  } catch (const std::exception& e) {
    ++failures;
    verdict = std::string("FAIL (") + e.what() + ")";
  }
  std::cout << "[" << index << "/8] " << name << ": " << verdict << "\n";
}

[[noreturn]] void reject(const std::string& msg) { throw Error(msg); }

Document corpus_doc(const std::string& id) {
  const CorpusItem* item = find_corpus_item(id);
  if (!item) reject("missing corpus item " + id);
  return parse_document(item->document);
}

RatFun pi_at(const TensorField& pi, std::size_t i, std::size_t j) {
  if (i == j) return RatFun::zero(pi.chart());
  if (i < j)
    return pi.coefficient({static_cast<std::uint8_t>(i),
                           static_cast<std::uint8_t>(j)});
  return -pi.coefficient({static_cast<std::uint8_t>(j),
                          static_cast<std::uint8_t>(i)});
}

// Coordinate expansion of the Schouten square, written out from the
// definition rather than through the tensor machinery:
// [pi,pi]^{ijk} = 2 sum_l (pi^{li} d_l pi^{jk} + pi^{lj} d_l pi^{ki}
//                          + pi^{lk} d_l pi^{ij}).
RatFun brute_square(const TensorField& pi, std::size_t i, std::size_t j,
                    std::size_t k) {
  const Chart& c = pi.chart();
  RatFun acc = RatFun::zero(c);
  for (std::size_t l = 0; l < c.dim(); ++l) {
    acc = acc + pi_at(pi, l, i) * pi_at(pi, j, k).derivative(l);
    acc = acc + pi_at(pi, l, j) * pi_at(pi, k, i).derivative(l);
    acc = acc + pi_at(pi, l, k) * pi_at(pi, i, j).derivative(l);
  }
  return acc * RatFun::constant(c, Rational(2));
}

struct OracleComparison {
  bool zero = true;
  bool matches = true;  // equality with the library value up to global sign
  std::string sample;   // one nonzero entry, printed
};

OracleComparison compare_schouten(const TensorField& pi) {
  const Chart& c = pi.chart();
  TensorField lib = schouten_bracket(pi, pi);
  OracleComparison cmp;
  bool all_plus = true, all_minus = true;
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j)
      for (std::size_t k = j + 1; k < c.dim(); ++k) {
        RatFun oracle = brute_square(pi, i, j, k);
        RatFun got = lib.coefficient({static_cast<std::uint8_t>(i),
                                      static_cast<std::uint8_t>(j),
                                      static_cast<std::uint8_t>(k)});
        if (!oracle.is_zero()) {
          cmp.zero = false;
          if (cmp.sample.empty()) cmp.sample = to_string(got);
        }
        if (!(oracle == got)) all_plus = false;
        if (!(oracle == -got)) all_minus = false;
      }
  cmp.matches = all_plus || all_minus;
  if (cmp.zero != lib.is_zero()) cmp.matches = false;
  return cmp;
}

Mat<RatFun> rows_to_mat(const std::vector<std::vector<RatFun>>& rows,
                        const Chart& c, std::size_t cols) {
  Mat<RatFun> m = ratfun_matrix(rows.size(), cols, c);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

Mat<RatFun> generator_matrix(const DiracSpec& spec) {
  std::vector<std::vector<RatFun>> rows;
  for (const GenSection& g : spec.generators) rows.push_back(g.flat());
  return rows_to_mat(rows, spec.chart, 2 * spec.chart.dim());
}

// Symbolic backward image over the fraction field: rows (v, dphi^T b) where
// (dphi v, b) runs through the RatFun-span of the target generators along
// phi. Solved as a kernel computation, independent of the pointwise engine.
Mat<RatFun> symbolic_backward_image(const DiracSpec& K, const PolyMap& phi) {
  const Chart& M = phi.source();
  const std::size_t m = M.dim(), n = phi.target().dim();
  const std::size_t g = K.generators.size();
  std::vector<Poly> comps = phi.components();
  auto pull = [&](const RatFun& f) { return f.subst(M, comps); };

  std::vector<std::vector<RatFun>> jac(n, std::vector<RatFun>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      jac[i][j] = RatFun(phi.jacobian()[i][j], Poly::one(M));

  // Unknowns (v_1..v_m, c_1..c_g): dphi v = sum_i c_i vec(K_i) o phi.
  Mat<RatFun> A = ratfun_matrix(n, m + g, M);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < m; ++j) A.at(r, j) = jac[r][j];
    for (std::size_t i = 0; i < g; ++i)
      A.at(r, m + i) = -pull(K.generators[i].vec.component_vector()[r]);
  }
  LinSolution<RatFun> sol =
      solve_linear(A, std::vector<RatFun>(n, RatFun::zero(M)));

  std::vector<std::vector<RatFun>> rows;
  for (const std::vector<RatFun>& ker : sol.kernel) {
    std::vector<RatFun> row(2 * m, RatFun::zero(M));
    for (std::size_t j = 0; j < m; ++j) row[j] = ker[j];
    for (std::size_t j = 0; j < m; ++j) {
      RatFun acc = RatFun::zero(M);
      for (std::size_t i = 0; i < g; ++i) {
        RatFun b_i = RatFun::zero(M);
        for (std::size_t t = 0; t < n; ++t)
          b_i = b_i +
                pull(K.generators[i].form.component_vector()[t]) * jac[t][j];
        acc = acc + ker[m + i] * b_i;
      }
      row[m + j] = acc;
    }
    rows.push_back(row);
  }
  return rows_to_mat(rows, M, 2 * m);
}

std::string prop_note(const std::string& id, const RunOptions& opt,
                      const std::string& expect) {
  CheckResult r = verify_proposition(id, opt);
  if (r.verdict != expect)
    reject(id + " expected " + expect + ", got " + r.verdict + ": " +
           r.detail);
  return r.detail;
}

void require(bool cond, const std::string& msg) {
  if (!cond) reject(msg);
}

}  // namespace

int main() {
  RunOptions defaults;

  criterion("exact Schouten certification against the coordinate oracle", [&] {
    std::string witness;
    for (const char* id :
         {"symplectic-r2", "poisson-xdxdy", "so3-dual", "non-poisson-witness"}) {
      Document doc = corpus_doc(id);
      OracleComparison cmp = compare_schouten(*doc.poisson);
      require(cmp.matches, std::string(id) +
                               ": oracle and library expansions disagree");
      bool expect_zero = std::string(id) != "non-poisson-witness";
      require(cmp.zero == expect_zero,
              std::string(id) + ": wrong integrability verdict");
      if (!expect_zero) {
        require(!cmp.sample.empty(), "control produced no witness");
        witness = "control witness " + cmp.sample;
      }
    }
    return witness;
  });

  criterion("modular vector fields and the cotangent cocycle pairing", [&] {
    Document logdoc = corpus_doc("poisson-xdxdy");
    TensorField mod =
        modular_vector_field(*logdoc.poisson, RatFun::one(logdoc.poisson->chart()));
    const Chart& c2 = logdoc.poisson->chart();
    require(mod.component_vector()[0] == RatFun::zero(c2) &&
                mod.component_vector()[1] == parse_expr("-1", c2),
            "modular field of the log structure moved off (0, -1)");

    Document so3 = corpus_doc("so3-dual");
    require(modular_vector_field(*so3.poisson,
                                 RatFun::one(so3.poisson->chart()))
                .is_zero(),
            "linear so(3) structure must be unimodular");

    for (const char* id : {"poisson-xdxdy", "so3-dual"}) {
      Document doc = corpus_doc(id);
      const Chart& c = doc.poisson->chart();
      AlgebroidData A = AlgebroidData::cotangent_of_poisson(*doc.poisson);
      std::vector<RatFun> cocycle =
          modular_cocycle(A, TrivializationChoice::standard(c))
              .component_vector();
      std::vector<RatFun> field =
          modular_vector_field(*doc.poisson, RatFun::one(c)).component_vector();
      for (std::size_t i = 0; i < c.dim(); ++i)
        require(cocycle[i] == field[i] * RatFun::constant(c, Rational(2)),
                std::string(id) + ": cocycle is not twice the modular field");
    }
    return std::string("log cocycle (0, -2), so(3) cocycle 0");
  });

  criterion("Dirac axioms with certificates on every corpus structure", [&] {
    std::size_t checked = 0;
    for (const CorpusItem& item : corpus()) {
      Document doc = parse_document(item.document);
      std::vector<const DiracSpec*> specs;
      if (doc.dirac) specs.push_back(&*doc.dirac);
      if (doc.map_problem) {
        specs.push_back(&doc.map_problem->source);
        specs.push_back(&doc.map_problem->target);
      }
      for (const DiracSpec* spec : specs) {
        DiracReport rep = check_dirac(*spec, 1, 100);
        require(rep.ok(), item.id + ": " + rep.witness);
        require(rep.samples >= 100, item.id + ": too few fiber samples");
        // Certificates really do expand the brackets.
        for (std::size_t i = 0; i < spec->generators.size(); ++i)
          for (std::size_t j = i + 1; j < spec->generators.size(); ++j) {
            GenSection br =
                spec->bracket(spec->generators[i], spec->generators[j]);
            const std::vector<RatFun>& lam = rep.certificates.at({i, j});
            GenSection acc = GenSection::zero(spec->chart);
            for (std::size_t k = 0; k < lam.size(); ++k)
              acc = acc + spec->generators[k] * lam[k];
            require((br - acc).is_zero(),
                    item.id + ": certificate fails to expand a bracket");
          }
        // Generator-triple Jacobi identity, exactly.
        for (std::size_t i = 0; i < spec->generators.size(); ++i)
          for (std::size_t j = i + 1; j < spec->generators.size(); ++j)
            for (std::size_t k = j + 1; k < spec->generators.size(); ++k) {
              const GenSection &s = spec->generators[i],
                               &t = spec->generators[j],
                               &u = spec->generators[k];
              GenSection jac = spec->bracket(spec->bracket(s, t), u) +
                               spec->bracket(spec->bracket(t, u), s) +
                               spec->bracket(spec->bracket(u, s), t);
              require(jac.is_zero(), item.id + ": generator Jacobi broke");
            }
        ++checked;
      }
    }
    std::ostringstream os;
    os << checked << " structures";
    return os.str();
  });

  criterion("reduction chain on the reducible 3-chart", [&] {
    prop_note("prop-reducible-iso", defaults, "PASS");
    prop_note("prop-mod-pullback", defaults, "PASS");
    prop_note("lemma-cartan", defaults, "PASS");

    Document doc = corpus_doc("reducible-r3");
    QuotientData qd = reduce_dirac(*doc.dirac, *doc.reduction);
    DiracMapProblem pr{doc.reduction->projection, *doc.dirac, qd.graph, 25, 1};
    MapModularResult res = dirac_map_modular_cocycle(
        pr, TrivializationChoice::standard(doc.dirac->chart),
        TrivializationChoice::standard(qd.graph.chart));
    require(res.cocycle.is_zero(), "projection modular cocycle is nonzero");
    require(res.exactness.kind == ExactnessResult::Kind::Exact,
            "zero cocycle not certified exact");
    return std::string("algebroid match, cocycle pullback, zero projection "
                       "cocycle, bracket identity");
  });

  criterion("bialgebroid flattening with a sign-flip control", [&] {
    prop_note("prop-bialgebroid-iso", defaults, "PASS");
    RunOptions flip = defaults;
    flip.flip_sharp = true;
    CheckResult r = verify_proposition("prop-bialgebroid-iso", flip);
    require(r.verdict == "FAIL", "sign-flip control was not caught");
    return "control witness: " + r.detail;
  });

  criterion("Dirac map suite on the worked inclusions and projections", [&] {
    // Backward image of the presymplectic graph under (u,v) -> (u,v,uv)
    // equals the graph of the pulled-back form, symbolically.
    Document inc = corpus_doc("submanifold-inclusion");
    const DiracMapProblem& pr = *inc.map_problem;
    const Chart& cn = pr.target.chart;
    TensorField omega = TensorField::zero(cn, TensorKind::Form, 2);
    omega.add_signed({0, 1}, RatFun::one(cn));
    omega.add_signed({0, 2}, parse_expr("x", cn));
    DiracSpec pulled_graph =
        graph_of_twoform(pullback_form(pr.map, omega));
    require(same_row_space(generator_matrix(pulled_graph),
                           generator_matrix(pr.source)),
            "declared source differs from the pulled-back graph");
    Mat<RatFun> oracle = symbolic_backward_image(pr.target, pr.map);
    require(same_row_space(oracle, generator_matrix(pr.source)),
            "symbolic backward image mismatch");
    require(check_dirac_map(pr, MapDirection::Backward).pass,
            "backward check failed on the inclusion");

    // The Poisson projection is forward Dirac and its relation algebroid
    // is isomorphic to the comorphism pullback of the target cotangent.
    Document proj = corpus_doc("projection-poisson-map");
    const DiracMapProblem& pp = *proj.map_problem;
    require(check_dirac_map(pp, MapDirection::Forward).pass,
            "projection is not forward Dirac");
    RelationAlgebroid R = relation_algebroid(pp);
    require(R.algebroid.rank() == 1, "relation rank is not 1");

    const Chart& cm = pp.source.chart;
    TensorField pi_src = TensorField::zero(cm, TensorKind::Multivector, 2);
    pi_src.add_signed({0, 1}, RatFun::one(cm));
    TensorField pi_tgt =
        TensorField::zero(pp.target.chart, TensorKind::Multivector, 2);
    AlgebroidData A = AlgebroidData::cotangent_of_poisson(pi_src);
    AlgebroidData B = AlgebroidData::cotangent_of_poisson(pi_tgt);
    Mat<RatFun> phibar = ratfun_matrix(1, 2, cm);
    phibar.at(0, 0) = RatFun::one(cm);  // phi* dt = dx
    ComorphismResult cmr = comorphism_pullback(
        A, B, pp.map, phibar, TrivializationChoice::standard(cm),
        TrivializationChoice::standard(pp.target.chart));

    // 1x1 fiber map matching the anchors, then the full morphism test.
    RatFun f = RatFun::zero(cm);
    for (std::size_t j = 0; j < cm.dim(); ++j)
      if (!cmr.algebroid.anchor().at(0, j).is_zero())
        f = R.algebroid.anchor().at(0, j) / cmr.algebroid.anchor().at(0, j);
    require(!f.is_zero(), "no anchor component to match the fiber map");
    Mat<RatFun> F = ratfun_matrix(1, 1, cm);
    F.at(0, 0) = f;
    std::vector<Poly> idc;
    for (std::size_t i = 0; i < cm.dim(); ++i)
      idc.push_back(Poly::variable(cm, i));
    AlgebroidMorphism iso{R.algebroid, cmr.algebroid, PolyMap(cm, cm, idc), F};
    require(check_morphism(iso).ok, "relation and comorphism disagree");

    MapModularResult res = dirac_map_modular_cocycle(
        pp, TrivializationChoice::standard(cm),
        TrivializationChoice::standard(pp.target.chart));
    require(res.cocycle.is_zero(), "projection map cocycle is nonzero");
    require(cmr.cocycle.is_zero(), "comorphism cocycle is nonzero");
    std::vector<RatFun> through = cmr.cocycle.component_vector();
    std::vector<RatFun> direct = res.cocycle.component_vector();
    for (std::size_t i = 0; i < direct.size(); ++i)
      require(direct[i] == F.at(i, i) * through[i],
              "cocycles differ entry by entry");
    return std::string("backward graph identity, relation comorphism "
                       "isomorphism, zero cocycles");
  });

  criterion("primitive search: certificates and honest inconclusives", [&] {
    Document logdoc = corpus_doc("poisson-xdxdy");
    const Chart& c2 = logdoc.poisson->chart();
    AlgebroidData A = AlgebroidData::cotangent_of_poisson(*logdoc.poisson);
    AlgebroidCochain mod =
        modular_cocycle(A, TrivializationChoice::standard(c2));
    ExactnessResult lg = exactness_test(A, mod, 4);
    require(lg.kind == ExactnessResult::Kind::LogExact,
            "modular cocycle lost its logarithmic primitive");
    for (std::size_t i = 0; i < A.rank(); ++i)
      require(A.apply_anchor(i, lg.certificate) / lg.certificate ==
                  mod.component_vector()[i],
              "logarithmic certificate fails back-substitution");

    AlgebroidData T = AlgebroidData::tangent(c2);
    AlgebroidCochain xi = da_differential(
        T, AlgebroidCochain::from_scalar(c2, 2, parse_expr("x^2*y", c2)));
    ExactnessResult ex = exactness_test(T, xi, 4);
    require(ex.kind == ExactnessResult::Kind::Exact, "lost an exact primitive");
    for (std::size_t i = 0; i < T.rank(); ++i)
      require(T.apply_anchor(i, ex.certificate) == xi.component_vector()[i],
              "exact certificate fails back-substitution");

    AlgebroidCochain high = da_differential(
        T, AlgebroidCochain::from_scalar(c2, 2, parse_expr("x^6", c2)));
    require(exactness_test(T, high, 4).kind ==
                ExactnessResult::Kind::Inconclusive,
            "degree bound was not honored");
    ExactnessResult found = exactness_test(T, high, 6);
    require(found.kind == ExactnessResult::Kind::Exact,
            "primitive inside the bound was missed");
    for (std::size_t i = 0; i < T.rank(); ++i)
      require(T.apply_anchor(i, found.certificate) ==
                  high.component_vector()[i],
              "bounded certificate fails back-substitution");
    return std::string("3 instances, all certificates re-substituted");
  });

  criterion("deterministic reports and round-tripping expressions", [&] {
    RunOptions opt;
    opt.seed = 42;
    std::string first = render_json(run_corpus("", opt), false);
    std::string second = render_json(run_corpus("", opt), false);
    require(first == second, "corpus JSON is not byte-stable");
    require(first.find("\"millis\"") == std::string::npos,
            "timings leaked into a default report");

    std::size_t expressions = 0;
    auto roundtrip = [&](const RatFun& f, const Chart& c,
                         const std::string& where) {
      RatFun back = parse_expr(to_string(f), c);
      require(back == f, "round-trip changed an expression in " + where);
      ++expressions;
    };
    for (const CorpusItem& item : corpus()) {
      Document doc = parse_document(item.document);
      auto field_exprs = [&](const TensorField& t) {
        for (const auto& kv : t.components())
          roundtrip(kv.second, t.chart(), item.id);
      };
      if (doc.poisson) field_exprs(*doc.poisson);
      if (doc.twoform) field_exprs(*doc.twoform);
      auto spec_exprs = [&](const DiracSpec& s) {
        for (const GenSection& g : s.generators)
          for (const RatFun& f : g.flat()) roundtrip(f, s.chart, item.id);
        if (s.ambient_poisson) field_exprs(*s.ambient_poisson);
      };
      if (doc.dirac) spec_exprs(*doc.dirac);
      if (doc.algebroid) {
        const AlgebroidData& A = *doc.algebroid;
        for (std::size_t i = 0; i < A.rank(); ++i)
          for (std::size_t j = 0; j < A.chart().dim(); ++j)
            roundtrip(A.anchor().at(i, j), A.chart(), item.id);
        for (const auto& kv : A.structure_table())
          roundtrip(kv.second, A.chart(), item.id);
      }
      if (doc.map_problem) {
        spec_exprs(doc.map_problem->source);
        spec_exprs(doc.map_problem->target);
        const PolyMap& m = doc.map_problem->map;
        for (const Poly& p : m.components())
          roundtrip(RatFun(p, Poly::one(m.source())), m.source(), item.id);
      }
    }
    require(expressions > 0, "no expressions were round-tripped");
    std::ostringstream os;
    os << expressions << " expressions round-tripped";
    return os.str();
  });

  if (failures == 0)
    std::cout << "acceptance: all 8 criteria hold\n";
  else
    std::cout << "acceptance: " << failures << " criterion(s) failed\n";
  return failures;
}
